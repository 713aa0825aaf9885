#ifndef REDACT_FIELD_HPP_
#define REDACT_FIELD_HPP_

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <span>
#include <string>

#include "redact/bytes.hpp"
#include "redact/rng.hpp"

namespace redact {

class Field;

// Element of Z_q. Carries its field so arithmetic reads naturally; mixing
// elements of different fields is a programming error (asserted).
class Scalar {
  public:
    Scalar() = default;
    Scalar(mpz_class v, const Field* f) : v_(std::move(v)), f_(f) {}

    const mpz_class& value() const { return v_; }
    const Field& field() const { assert(f_); return *f_; }
    bool is_zero() const { return v_ == 0; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;  // throws std::domain_error on zero
    bool operator==(const Scalar& o) const { return v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return v_ != o.v_; }

    uint64_t as_u64() const { return mpz_get_ui(v_.get_mpz_t()); }

    void wipe() { v_ = 0; }

  private:
    mpz_class v_;
    const Field* f_ = nullptr;
};

class Field {
  public:
    explicit Field(mpz_class q);

    const mpz_class& modulus() const { return q_; }
    size_t bits() const { return bits_; }
    size_t byte_width() const { return width_; }

    Scalar zero() const { return Scalar(0, this); }
    Scalar one() const { return Scalar(1, this); }
    Scalar from_u64(uint64_t v) const { return Scalar(mpz_class(v) % q_, this); }
    Scalar reduce(const mpz_class& v) const;

    Scalar random(Rng& rng) const;
    Scalar random_nonzero(Rng& rng) const;

    // Fixed-width big-endian.
    Bytes to_bytes(const Scalar& s) const;
    Scalar from_bytes(std::span<const uint8_t> b) const;  // throws if >= q

    bool operator==(const Field& o) const { return q_ == o.q_; }

  private:
    mpz_class q_;
    size_t bits_;
    size_t width_;
};

mpz_class mpz_from_bytes(std::span<const uint8_t> b);
Bytes mpz_to_bytes(const mpz_class& v, size_t width);

// H: {0,1}* -> Z_q. Deterministic; a 512-bit hash expansion reduced mod q,
// so the output is statistically close to uniform for any field in use.
Scalar hash_to_scalar(const Field& f, std::span<const uint8_t> data);
inline Scalar hash_to_scalar(const Field& f, std::string_view s) {
    return hash_to_scalar(f, std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

// 512-bit hash expansion with a domain byte; building block for the
// trapdoor mask and hash_to_scalar.
Bytes hash512(uint8_t domain, std::span<const uint8_t> data);

}  // namespace redact

#endif
