#ifndef REDACT_GRANTS_HPP_
#define REDACT_GRANTS_HPP_

#include <vector>

#include "redact/serial.hpp"
#include "redact/suite.hpp"

namespace redact {

// One rewriting-privilege grant, written when a committee quorum issues a
// key. Public record: the judge joins traced committee depths against it.
struct GrantRecord {
    uint64_t epoch = 0;
    size_t committee_depth = 0;
    GElem modifier_pk;
    std::string policy_text;
};

// Append-only; readers take value snapshots.
class GrantStore {
  public:
    void append(GrantRecord rec) { records_.push_back(std::move(rec)); }
    const std::vector<GrantRecord>& records() const { return records_; }

    std::vector<GrantRecord> matching_depth(size_t depth) const {
        std::vector<GrantRecord> out;
        for (const auto& r : records_) {
            if (r.committee_depth == depth) out.push_back(r);
        }
        return out;
    }

  private:
    std::vector<GrantRecord> records_;
};

void write_grant(Writer& w, const GrantRecord& rec);
GrantRecord read_grant(Reader& r);
Bytes serialize_grants(const GrantStore& store);
GrantStore deserialize_grants(std::span<const uint8_t> data, const Suite& suite);

}  // namespace redact

#endif
