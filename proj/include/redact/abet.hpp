#ifndef REDACT_ABET_HPP_
#define REDACT_ABET_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <set>

#include "redact/msp.hpp"
#include "redact/policy.hpp"
#include "redact/serial.hpp"
#include "redact/suite.hpp"

namespace redact::abet {

inline constexpr size_t kPayloadBytes = 32;  // encrypted trapdoor R
inline constexpr size_t kMaskBytes = 64;     // R plus 256 zero padding bits

class DecryptDenied : public std::runtime_error {
  public:
    explicit DecryptDenied(const std::string& what) : std::runtime_error(what) {}
};

// Committee index vector: depth d uses the first d entries of the fixed
// system-wide sequence I_e = H("committee" || e). Depth k+1 exists only as
// an encryption target for tracing; no key can reach it.
struct IndexVector {
    size_t depth = 0;
    std::vector<Scalar> entries;

    static IndexVector committee(const Field& f, size_t depth);
};

struct Mpk {
    std::shared_ptr<const Suite> suite;
    size_t k = 0;  // committee capacity
    GElem g, u, v, w, g_beta;
    HElem h, h_inv_alpha, h_beta_alpha;
    TElem e_gh_alpha, e_gh_theta_alpha;
    std::vector<GElem> g_alpha;  // g_i^alpha, g_i = g^{z_i}
    std::vector<HElem> h_alpha;  // h_i^alpha
};

struct Master {
    Mpk mpk;
    Scalar alpha, beta, theta;
    std::vector<Scalar> z;

    void wipe_secrets();
};

struct KeyRow {
    GElem d1;  // g^{lambda} w^{t}
    GElem d2;  // (u^{A} v)^{-t}
    HElem d3;  // h^{t}
};

struct SecretKey {
    Msp msp;
    std::string policy_text;
    size_t depth = 0;
    std::vector<KeyRow> rows;
    GElem sk0_t;            // g^{t*/alpha}
    GElem sk0_r;            // g^{r*}
    GElem sk1;              // g^theta * ihat^{t*} * g^{beta r*}
    std::vector<GElem> sk2; // delegation elements, next level first
};

struct Ciphertext {
    AttributeSet attrs;       // carried in clear; the index vector is not
    Bytes mask;               // kMaskBytes
    std::vector<HElem> attr_h;  // h^{r_tau}, aligned with attrs
    std::vector<GElem> attr_g;  // (u^{A_tau} v)^{r_tau} w^{-s}
    HElem ct0_1, ct0_2, ct0_3;  // h^s, h^{s/alpha}, h^{beta s/alpha}
    HElem ct1;                  // jhat^s
};

Master setup(std::shared_ptr<const Suite> suite, size_t k, Rng& rng);

// g * prod_e g_{k+1-e}^{alpha I_e}; the aggregate a key carries.
GElem ihat(const Mpk& mpk, const IndexVector& idx);
// h-side aggregate for ciphertexts; depth k+1 appends an extra factor no
// key or delegation can match.
HElem jhat(const Mpk& mpk, const IndexVector& idx);

// KeyGen needs only (alpha, theta) of the master secret; this is what the
// committee reconstructs transiently.
SecretKey keygen(const Mpk& mpk, const Scalar& alpha, const Scalar& theta,
                 const AccessPolicy& policy, const IndexVector& idx, Rng& rng);
SecretKey keygen(const Master& master, const AccessPolicy& policy, const IndexVector& idx,
                 Rng& rng);

// One level deeper, consuming a delegation element; publicly computable
// from mpk, re-randomized with fresh row and r randomness.
SecretKey delegate_key(const Mpk& mpk, const SecretKey& key, Rng& rng);

Ciphertext encrypt(const Mpk& mpk, std::span<const uint8_t> payload,
                   const AttributeSet& attrs, const IndexVector& idx, Rng& rng);

// Pairing values computed during decryption, exposed for the mock-profile
// exponent oracles.
struct DecryptTrace {
    TElem b_value;
    TElem a_value;
    size_t matched_depth = 0;
};

// Returns the 32-byte payload, or nothing when the policy is unsatisfied,
// the key sits deeper than the ciphertext, or the padding check fails.
// Internally delegates downward (without re-randomization) until the
// padding check passes or depth k is exhausted.
std::optional<Bytes> decrypt(const Mpk& mpk, const Ciphertext& ct, const SecretKey& key,
                             DecryptTrace* trace = nullptr);

using Blackbox = std::function<std::optional<Bytes>(const Ciphertext&)>;

struct TraceReport {
    std::set<size_t> accused;
    // success frequency per probe, indexed [0] unused, [1..k+1] per depth
    std::vector<std::vector<double>> sweeps;
};

// Boneh-Waters style sweep: for each probe attribute set, encrypt fresh
// payloads at depths 1..k+1 and measure the blackbox's success rate; a key
// of depth d turns decryption on from depth d upward, so a rise of at
// least eps between adjacent depths accuses that depth.
TraceReport trace(const Mpk& mpk, const Blackbox& box,
                  std::span<const AttributeSet> probes, double eps, size_t trials,
                  Rng& rng);

void write_mpk(Writer& w, const Mpk& mpk);
Mpk read_mpk(Reader& r, std::shared_ptr<const Suite> suite);
void write_master(Writer& w, const Master& m);
Master read_master(Reader& r, std::shared_ptr<const Suite> suite);
void write_key(Writer& w, const SecretKey& key);
SecretKey read_key(Reader& r, const Suite& suite);
void write_ciphertext(Writer& w, const Ciphertext& ct);
Ciphertext read_ciphertext(Reader& r, const Suite& suite);

}  // namespace redact::abet

#endif
