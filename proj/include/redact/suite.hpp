#ifndef REDACT_SUITE_HPP_
#define REDACT_SUITE_HPP_

#include <memory>
#include <string>
#include <variant>

#include "redact/field.hpp"

namespace redact {

// Two profiles behind one contract:
//  - mock: exponent-only groups over a small prime. An element *is* its
//    exponent, the pairing is multiplication in Z_q. Everything is
//    brute-forceable, which the oracle tests rely on.
//  - supersingular: y^2 = x^3 + x over F_p, p = 4q - 1, p ≡ 3 (mod 4),
//    with the modified Tate pairing (distortion map (x,y) -> (-x, iy)).
//    G and H are distinct API types over the same curve.
enum class Profile { kMock, kSupersingular };

namespace detail {
struct MockRep { mpz_class e; bool operator==(const MockRep&) const = default; };
struct PointRep { mpz_class x, y; bool inf = true; bool operator==(const PointRep&) const = default; };
struct Fp2Rep { mpz_class a, b; bool operator==(const Fp2Rep&) const = default; };
using SrcRep = std::variant<MockRep, PointRep>;
using TRep = std::variant<MockRep, Fp2Rep>;
}  // namespace detail

class Suite;

template <int Tag>
class SourceElem {
  public:
    SourceElem() = default;

    SourceElem operator*(const SourceElem& o) const;
    SourceElem operator/(const SourceElem& o) const;
    SourceElem pow(const Scalar& e) const;
    SourceElem inverse() const;
    bool operator==(const SourceElem& o) const { return rep_ == o.rep_; }
    bool operator!=(const SourceElem& o) const { return !(rep_ == o.rep_); }
    bool is_identity() const;
    Bytes to_bytes() const;
    const Suite& suite() const { return *s_; }

  private:
    friend class Suite;
    SourceElem(detail::SrcRep rep, const Suite* s) : rep_(std::move(rep)), s_(s) {}
    detail::SrcRep rep_;
    const Suite* s_ = nullptr;
};

using GElem = SourceElem<0>;
using HElem = SourceElem<1>;

class TElem {
  public:
    TElem() = default;

    TElem operator*(const TElem& o) const;
    TElem operator/(const TElem& o) const;
    TElem pow(const Scalar& e) const;
    TElem inverse() const;
    bool operator==(const TElem& o) const { return rep_ == o.rep_; }
    bool operator!=(const TElem& o) const { return !(rep_ == o.rep_); }
    bool is_identity() const;
    Bytes to_bytes() const;

  private:
    friend class Suite;
    TElem(detail::TRep rep, const Suite* s) : rep_(std::move(rep)), s_(s) {}
    detail::TRep rep_;
    const Suite* s_ = nullptr;
};

class Suite {
  public:
    static std::shared_ptr<const Suite> mock(uint64_t q = 65521);
    static std::shared_ptr<const Suite> supersingular();
    static std::shared_ptr<const Suite> from_name(const std::string& name);

    Profile profile() const { return profile_; }
    const char* name() const;
    const Field& field() const { return field_; }
    size_t fp_byte_width() const;

    GElem g() const { return GElem(g_, this); }
    HElem h() const { return HElem(h_, this); }
    GElem identity_g() const { return GElem(src_identity(), this); }
    HElem identity_h() const { return HElem(src_identity(), this); }
    TElem identity_t() const { return TElem(t_identity(), this); }

    GElem g_pow(const Scalar& e) const { return g().pow(e); }
    HElem h_pow(const Scalar& e) const { return h().pow(e); }

    TElem pair(const GElem& a, const HElem& b) const;
    TElem pair_gh() const { return pair(g(), h()); }

    GElem g_from_bytes(std::span<const uint8_t> b) const { return GElem(src_from_bytes(b), this); }
    HElem h_from_bytes(std::span<const uint8_t> b) const { return HElem(src_from_bytes(b), this); }
    TElem t_from_bytes(std::span<const uint8_t> b) const;

    // Brute-force transparency: the mock profile exposes every element's
    // discrete log so tests can do exponent bookkeeping. Throws on other
    // profiles.
    template <int Tag>
    Scalar exponent_of(const SourceElem<Tag>& e) const { return src_exponent(e.rep_); }
    Scalar exponent_of(const TElem& e) const;

    // Rep-level operations (shared by G and H, which differ only by type tag).
    detail::SrcRep src_mul(const detail::SrcRep& a, const detail::SrcRep& b) const;
    detail::SrcRep src_pow(const detail::SrcRep& a, const Scalar& e) const;
    detail::SrcRep src_inverse(const detail::SrcRep& a) const;
    detail::SrcRep src_identity() const;
    bool src_is_identity(const detail::SrcRep& a) const;
    Bytes src_to_bytes(const detail::SrcRep& a) const;
    detail::SrcRep src_from_bytes(std::span<const uint8_t> b) const;
    Scalar src_exponent(const detail::SrcRep& a) const;

    detail::TRep t_mul(const detail::TRep& a, const detail::TRep& b) const;
    detail::TRep t_pow(const detail::TRep& a, const Scalar& e) const;
    detail::TRep t_inverse(const detail::TRep& a) const;
    detail::TRep t_identity() const;
    bool t_is_identity(const detail::TRep& a) const;

  private:
    Suite() = default;

    // supersingular internals
    mpz_class fp_add(const mpz_class& a, const mpz_class& b) const;
    mpz_class fp_sub(const mpz_class& a, const mpz_class& b) const;
    mpz_class fp_mul(const mpz_class& a, const mpz_class& b) const;
    mpz_class fp_inv(const mpz_class& a) const;
    detail::PointRep pt_add(const detail::PointRep& a, const detail::PointRep& b) const;
    detail::PointRep pt_double(const detail::PointRep& a) const;
    detail::PointRep pt_neg(const detail::PointRep& a) const;
    detail::PointRep pt_mul(const detail::PointRep& a, const mpz_class& k) const;
    detail::Fp2Rep fp2_mul(const detail::Fp2Rep& a, const detail::Fp2Rep& b) const;
    detail::Fp2Rep fp2_sqr(const detail::Fp2Rep& a) const;
    detail::Fp2Rep fp2_inv(const detail::Fp2Rep& a) const;
    detail::Fp2Rep fp2_pow(const detail::Fp2Rep& a, const mpz_class& e) const;
    detail::Fp2Rep tate(const detail::PointRep& p, const detail::PointRep& q) const;

    Profile profile_ = Profile::kMock;
    Field field_{mpz_class(65521)};
    detail::SrcRep g_, h_;

    // supersingular parameters
    mpz_class p_;          // base field prime
    mpz_class sqrt_exp_;   // (p+1)/4
    mpz_class final_exp_;  // (p^2-1)/q
};

template <int Tag>
SourceElem<Tag> SourceElem<Tag>::operator*(const SourceElem& o) const {
    assert(s_ && s_ == o.s_);
    return SourceElem(s_->src_mul(rep_, o.rep_), s_);
}
template <int Tag>
SourceElem<Tag> SourceElem<Tag>::operator/(const SourceElem& o) const {
    assert(s_ && s_ == o.s_);
    return SourceElem(s_->src_mul(rep_, s_->src_inverse(o.rep_)), s_);
}
template <int Tag>
SourceElem<Tag> SourceElem<Tag>::pow(const Scalar& e) const {
    assert(s_);
    return SourceElem(s_->src_pow(rep_, e), s_);
}
template <int Tag>
SourceElem<Tag> SourceElem<Tag>::inverse() const {
    assert(s_);
    return SourceElem(s_->src_inverse(rep_), s_);
}
template <int Tag>
bool SourceElem<Tag>::is_identity() const {
    assert(s_);
    return s_->src_is_identity(rep_);
}
template <int Tag>
Bytes SourceElem<Tag>::to_bytes() const {
    assert(s_);
    return s_->src_to_bytes(rep_);
}

}  // namespace redact

#endif
