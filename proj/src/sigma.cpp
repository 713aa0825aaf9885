#include "redact/sigma.hpp"

namespace redact::sigma {

Keypair keygen(const Suite& suite, Rng& rng) {
    Scalar sk = suite.field().random_nonzero(rng);
    GElem pk = suite.g_pow(sk);
    return Keypair(std::move(sk), std::move(pk));
}

Scalar pad_scalar(const Field& f, std::span<const uint8_t> trapdoor_bytes) {
    Bytes padded(trapdoor_bytes.begin(), trapdoor_bytes.end());
    padded.resize(cham::kPaddedBytes, 0);
    return f.reduce(mpz_from_bytes(padded));
}

Scalar challenge(const Suite& suite, const GElem& epk, const LinkTag& tag) {
    Bytes data = epk.to_bytes();
    append(data, tag.c.to_bytes());
    return hash_to_scalar(suite.field(), data);
}

LinkTag tag_for(const Suite& suite, const Scalar& sk, const cham::Trapdoor& td) {
    return LinkTag{suite.g_pow(sk + pad_scalar(suite.field(), td.r))};
}

std::pair<LinkTag, Signature> sign(const Suite& suite, const Keypair& kp,
                                   const cham::Trapdoor& td, Rng& rng) {
    LinkTag tag = tag_for(suite, kp.sk, td);
    Scalar esk = suite.field().random_nonzero(rng);
    GElem epk = suite.g_pow(esk);
    Scalar s = detail::sign_with_challenge(kp.sk, esk, challenge(suite, epk, tag));
    esk.wipe();
    return {std::move(tag), Signature{std::move(epk), std::move(s)}};
}

bool verify(const Suite& suite, const GElem& pk, const LinkTag& tag, const Signature& sig) {
    return suite.g_pow(sig.s) == sig.epk * pk.pow(challenge(suite, sig.epk, tag));
}

GElem link_delta(const LinkTag& tag, const LinkTag& tag_new) {
    return tag_new.c / tag.c;
}

Shifted shift(const Suite& suite, const GElem& pk, const LinkTag& tag, const Signature& sig,
              const Scalar& delta) {
    GElem pk_new = pk * suite.g_pow(delta);
    Scalar s_new = sig.s + delta * challenge(suite, sig.epk, tag);
    return Shifted{std::move(pk_new), Signature{sig.epk, std::move(s_new)}};
}

}  // namespace redact::sigma
