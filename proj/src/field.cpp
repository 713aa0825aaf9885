#include "redact/field.hpp"

#include <stdexcept>

#include "redact/sha256.hpp"

namespace redact {

Scalar Scalar::operator+(const Scalar& o) const {
    assert(f_ && f_ == o.f_);
    mpz_class r = v_ + o.v_;
    if (r >= f_->modulus()) r -= f_->modulus();
    return Scalar(std::move(r), f_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    assert(f_ && f_ == o.f_);
    mpz_class r = v_ - o.v_;
    if (r < 0) r += f_->modulus();
    return Scalar(std::move(r), f_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    assert(f_ && f_ == o.f_);
    mpz_class r = v_ * o.v_;
    r %= f_->modulus();
    return Scalar(std::move(r), f_);
}

Scalar Scalar::operator-() const {
    assert(f_);
    if (v_ == 0) return *this;
    return Scalar(f_->modulus() - v_, f_);
}

Scalar Scalar::inverse() const {
    assert(f_);
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), f_->modulus().get_mpz_t()) == 0) {
        throw std::domain_error("scalar has no inverse");
    }
    return Scalar(std::move(r), f_);
}

Field::Field(mpz_class q) : q_(std::move(q)) {
    if (q_ < 2) throw std::invalid_argument("field modulus too small");
    bits_ = mpz_sizeinbase(q_.get_mpz_t(), 2);
    width_ = (bits_ + 7) / 8;
}

Scalar Field::reduce(const mpz_class& v) const {
    mpz_class r = v % q_;
    if (r < 0) r += q_;
    return Scalar(std::move(r), this);
}

Scalar Rng::scalar(const Field& f) {
    // 64 extra bits make the mod-q bias negligible.
    Bytes b = bytes(f.byte_width() + 8);
    return f.reduce(mpz_from_bytes(b));
}

Scalar Field::random(Rng& rng) const { return rng.scalar(*this); }

Scalar Field::random_nonzero(Rng& rng) const {
    for (;;) {
        Scalar s = random(rng);
        if (!s.is_zero()) return s;
    }
}

Bytes Field::to_bytes(const Scalar& s) const {
    return mpz_to_bytes(s.value(), width_);
}

Scalar Field::from_bytes(std::span<const uint8_t> b) const {
    if (b.size() != width_) throw std::invalid_argument("bad scalar width");
    mpz_class v = mpz_from_bytes(b);
    if (v >= q_) throw std::invalid_argument("scalar out of range");
    return Scalar(std::move(v), this);
}

mpz_class mpz_from_bytes(std::span<const uint8_t> b) {
    mpz_class v;
    if (!b.empty()) {
        mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
    }
    return v;
}

Bytes mpz_to_bytes(const mpz_class& v, size_t width) {
    Bytes out(width, 0);
    size_t count = 0;
    if (v != 0) {
        size_t need = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
        if (need > width) throw std::invalid_argument("value too wide");
        mpz_export(out.data() + (width - need), &count, 1, 1, 1, 0, v.get_mpz_t());
    }
    return out;
}

Bytes hash512(uint8_t domain, std::span<const uint8_t> data) {
    Bytes out;
    out.reserve(64);
    for (uint8_t counter = 0; counter < 2; counter++) {
        Sha256 h;
        uint8_t prefix[2] = {domain, counter};
        h.update({prefix, 2});
        h.update(data);
        Digest32 d = h.finish();
        append(out, d);
    }
    return out;
}

Scalar hash_to_scalar(const Field& f, std::span<const uint8_t> data) {
    Bytes wide = hash512(0x53, data);
    return f.reduce(mpz_from_bytes(wide));
}

}  // namespace redact
