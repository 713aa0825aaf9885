#include "redact/chameleon.hpp"

#include <stdexcept>

namespace redact::cham {

Scalar trapdoor_exponent(const Suite& suite, const Trapdoor& td) {
    return hash_to_scalar(suite.field(), td.r);
}

std::pair<Trapdoor, PublicKey> keygen(const Suite& suite, Rng& rng) {
    for (;;) {
        Trapdoor td(rng.bytes(kTrapdoorBytes));
        Scalar e = trapdoor_exponent(suite, td);
        if (e.is_zero()) continue;
        PublicKey pub{suite.g_pow(e)};
        return {std::move(td), std::move(pub)};
    }
}

PublicKey public_of(const Suite& suite, const Trapdoor& td) {
    return PublicKey{suite.g_pow(trapdoor_exponent(suite, td))};
}

Hash hash_with_randomness(const Suite& suite, const PublicKey& pub, const Scalar& m,
                          Scalar r) {
    GElem b = suite.g_pow(m) * pub.p_prime.pow(r);
    return Hash{std::move(b), std::move(r)};
}

Hash hash(const Suite& suite, const PublicKey& pub, const Scalar& m, Rng& rng) {
    return hash_with_randomness(suite, pub, m, suite.field().random(rng));
}

bool verify(const Suite& suite, const PublicKey& pub, const Scalar& m, const Hash& h) {
    return suite.g_pow(m) * pub.p_prime.pow(h.r) == h.b;
}

Scalar adapt(const Suite& suite, const Trapdoor& td, const Scalar& m, const Scalar& m_new,
             const Hash& h) {
    Scalar e = trapdoor_exponent(suite, td);
    if (e.is_zero()) throw std::domain_error("degenerate trapdoor");
    return h.r + (m - m_new) * e.inverse();
}

}  // namespace redact::cham
