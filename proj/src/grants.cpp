#include "redact/grants.hpp"

namespace redact {

void write_grant(Writer& w, const GrantRecord& rec) {
    w.put_u64(1);
    w.put_u64(rec.epoch);
    w.put_u64(rec.committee_depth);
    w.put_g(rec.modifier_pk);
    w.put_text(rec.policy_text);
}

GrantRecord read_grant(Reader& r) {
    if (r.get_u64() != 1) throw SerialError("bad grant version");
    GrantRecord rec;
    rec.epoch = r.get_u64();
    rec.committee_depth = r.get_u64();
    rec.modifier_pk = r.get_g();
    rec.policy_text = r.get_text();
    return rec;
}

Bytes serialize_grants(const GrantStore& store) {
    Writer w;
    w.put_u64(store.records().size());
    for (const auto& rec : store.records()) write_grant(w, rec);
    return w.take();
}

GrantStore deserialize_grants(std::span<const uint8_t> data, const Suite& suite) {
    Reader r(data, &suite);
    GrantStore store;
    size_t n = r.get_u64();
    for (size_t i = 0; i < n; i++) store.append(read_grant(r));
    r.expect_done();
    return store;
}

}  // namespace redact
