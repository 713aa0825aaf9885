#ifndef REDACT_CHAMELEON_HPP_
#define REDACT_CHAMELEON_HPP_

#include <utility>

#include "redact/suite.hpp"

namespace redact::cham {

inline constexpr size_t kTrapdoorBytes = 32;  // |R| = 256 bits
inline constexpr size_t kPaddedBytes = 64;    // l = 512 bits, so 256 zero pad bits

// Ephemeral trapdoor R. Knowing R is what allows collisions; wiped on drop.
struct Trapdoor {
    Bytes r;

    Trapdoor() = default;
    explicit Trapdoor(Bytes bytes) : r(std::move(bytes)) {}
    Trapdoor(const Trapdoor&) = default;
    Trapdoor& operator=(const Trapdoor&) = default;
    Trapdoor(Trapdoor&&) = default;
    Trapdoor& operator=(Trapdoor&&) = default;
    ~Trapdoor() { secure_wipe(r); }
};

struct PublicKey {
    GElem p_prime;  // p' = g^e, e = H(R)
};

struct Hash {
    GElem b;   // b = g^m * p'^r
    Scalar r;
};

// e = H(R); keygen resamples until e != 0.
Scalar trapdoor_exponent(const Suite& suite, const Trapdoor& td);
std::pair<Trapdoor, PublicKey> keygen(const Suite& suite, Rng& rng);
PublicKey public_of(const Suite& suite, const Trapdoor& td);

Hash hash_with_randomness(const Suite& suite, const PublicKey& pub, const Scalar& m,
                          Scalar r);
Hash hash(const Suite& suite, const PublicKey& pub, const Scalar& m, Rng& rng);
bool verify(const Suite& suite, const PublicKey& pub, const Scalar& m, const Hash& h);

// Collision: r' = r + (m - m') / e. The returned randomness keeps b valid
// for m'.
Scalar adapt(const Suite& suite, const Trapdoor& td, const Scalar& m, const Scalar& m_new,
             const Hash& h);

}  // namespace redact::cham

#endif
