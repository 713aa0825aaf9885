#ifndef REDACT_SIGMA_HPP_
#define REDACT_SIGMA_HPP_

#include <utility>

#include "redact/chameleon.hpp"
#include "redact/suite.hpp"

namespace redact::sigma {

struct Keypair {
    Scalar sk;
    GElem pk;  // pk = g^sk

    ~Keypair() { sk.wipe(); }
    Keypair() = default;
    Keypair(Scalar s, GElem p) : sk(std::move(s)), pk(std::move(p)) {}
    Keypair(const Keypair&) = default;
    Keypair& operator=(const Keypair&) = default;
    Keypair(Keypair&&) = default;
    Keypair& operator=(Keypair&&) = default;
};

// c = g^{sk + pad(R)}. Two tags from the same trapdoor differ exactly by
// the signer-key delta, which is what the judge exploits.
struct LinkTag {
    GElem c;
};

struct Signature {
    GElem epk;
    Scalar s;  // s = esk + sk * H(epk || c)
};

Keypair keygen(const Suite& suite, Rng& rng);

// (R || 0^{l-|R|}) read as one big-endian integer, reduced mod q.
Scalar pad_scalar(const Field& f, std::span<const uint8_t> trapdoor_bytes);

Scalar challenge(const Suite& suite, const GElem& epk, const LinkTag& tag);

LinkTag tag_for(const Suite& suite, const Scalar& sk, const cham::Trapdoor& td);
std::pair<LinkTag, Signature> sign(const Suite& suite, const Keypair& kp,
                                   const cham::Trapdoor& td, Rng& rng);
bool verify(const Suite& suite, const GElem& pk, const LinkTag& tag, const Signature& sig);

// c' / c = g^{sk' - sk} when both tags come from the same trapdoor.
GElem link_delta(const LinkTag& tag, const LinkTag& tag_new);

// Key/signature homomorphism with the signed message held fixed: the
// result verifies under pk * g^{delta} on the same tag.
struct Shifted {
    GElem pk;
    Signature sig;
};
Shifted shift(const Suite& suite, const GElem& pk, const LinkTag& tag, const Signature& sig,
              const Scalar& delta);

namespace detail {
// sigma = esk + sk * chal; split out so arithmetic oracles can pin the
// challenge.
inline Scalar sign_with_challenge(const Scalar& sk, const Scalar& esk, const Scalar& chal) {
    return esk + sk * chal;
}
}  // namespace detail

}  // namespace redact::sigma

#endif
