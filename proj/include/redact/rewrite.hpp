#ifndef REDACT_REWRITE_HPP_
#define REDACT_REWRITE_HPP_

#include <optional>

#include "redact/abet.hpp"
#include "redact/chameleon.hpp"
#include "redact/grants.hpp"
#include "redact/sigma.hpp"

namespace redact::rewrite {

class VerifyFailed : public std::runtime_error {
  public:
    explicit VerifyFailed(const std::string& what) : std::runtime_error(what) {}
};

// T = (pk_CH, m, b, r, C, c, epk, sigma) plus the author key the signature
// verifies under. The Merkle leaf depends on (pk_CH, b) only, so every
// field a rewrite touches stays outside the block hash.
struct MutableTransaction {
    cham::PublicKey pk_ch;
    Scalar m;  // content hash
    cham::Hash hash;
    abet::Ciphertext trapdoor_ct;
    sigma::LinkTag tag;
    sigma::Signature sig;
    GElem author_pk;

    const AttributeSet& attrs() const { return trapdoor_ct.attrs; }
};

MutableTransaction hash_transaction(const abet::Mpk& mpk, const sigma::Keypair& author,
                                    std::span<const uint8_t> content,
                                    const AttributeSet& attrs, const abet::IndexVector& idx,
                                    Rng& rng);

bool verify_transaction(const Suite& suite, const MutableTransaction& tx);

struct AdaptOptions {
    // When set, the rewrite keeps the embedded attribute set no matter
    // what (the owner-signed-attributes deployment mode).
    bool preserve_attributes = false;
    std::optional<AttributeSet> new_attrs;
    std::optional<size_t> new_depth;
};

// Decrypts the ephemeral trapdoor with the modifier's key, finds the
// chameleon collision for the new content, re-encrypts the trapdoor and
// re-signs. Throws VerifyFailed / abet::DecryptDenied.
MutableTransaction adapt_transaction(const abet::Mpk& mpk, const abet::SecretKey& key,
                                     const sigma::Keypair& modifier,
                                     const MutableTransaction& tx,
                                     std::span<const uint8_t> new_content, Rng& rng,
                                     const AdaptOptions& opts = {});

struct LinkResult {
    GElem pk;
    GElem pk_new;
    GElem delta;  // c'/c = g^{sk' - sk}
};

// Public linkage: both transactions verify, share (b, pk_CH), and the tag
// quotient explains the key difference. Absent otherwise.
std::optional<LinkResult> judge_link(const Suite& suite, const MutableTransaction& tx,
                                     const MutableTransaction& tx_new);

struct TraceOutcome {
    abet::TraceReport report;
    std::vector<GrantRecord> matched;  // grants at accused depths, maybe empty
};

TraceOutcome judge_trace(const abet::Mpk& mpk, const abet::Blackbox& box,
                         std::span<const AttributeSet> probes, const GrantStore& grants,
                         double eps, size_t trials, Rng& rng);

// Container layout mirrors the storage accounting: a chameleon section of
// 2 scalars + 3 G elements, the encryption section, and a signature
// section of 1 scalar + 2 G elements.
void write_tx(Writer& w, const MutableTransaction& tx);
MutableTransaction read_tx(Reader& r, const Suite& suite);

// Canonical bytes the Merkle leaf commits to: (pk_CH, b) and nothing else.
Bytes leaf_preimage(const MutableTransaction& tx);

}  // namespace redact::rewrite

#endif
