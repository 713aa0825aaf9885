#include "redact/suite.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace redact {

using detail::Fp2Rep;
using detail::MockRep;
using detail::PointRep;
using detail::SrcRep;
using detail::TRep;

namespace {

// 256-bit prime q and p = 4q - 1 prime, p ≡ 3 (mod 4). #E(F_p) = p + 1 = 4q
// for y^2 = x^3 + x, so the q-torsion is a prime-order subgroup.
const char* kSsQ = "99b3f83fc63a58c4ef5f44e11a533ccaa1bb2c2848d47a86622873f7ac4286d5";
const char* kSsP = "266cfe0ff18e96313bd7d1384694cf32a86ecb0a12351ea1988a1cfdeb10a1b53";
const char* kSsGx = "1b5d61e45c24dba53e33e5a3a81f261380802abc82d0123a6db3e560942e32774";
const char* kSsGy = "1c27488ccff62e25f0252e1ebd5bda0021e5fd2d53c86d2e5e76f1df83a69ac24";
const char* kSsHx = "25c26cce735dc8d6275b6566fb0496ad8d6ee59e984b9b869174b6201248f077b";
const char* kSsHy = "1048a97d9536dae4656f1becbfc1e8ad623263cc97e28774cc9c2d96f811d49fa";

mpz_class from_hex_str(const char* s) { return mpz_class(s, 16); }

}  // namespace

// Suites are cached singletons: elements hold a raw pointer to their
// suite, and pointer identity is what makes elements from separately
// loaded files interoperable.
std::shared_ptr<const Suite> Suite::mock(uint64_t q) {
    if (q >= (1u << 16)) throw std::invalid_argument("mock modulus must fit 16 bits");
    static std::mutex mu;
    static std::map<uint64_t, std::shared_ptr<const Suite>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;

    mpz_class qz(static_cast<unsigned long>(q));
    if (mpz_probab_prime_p(qz.get_mpz_t(), 30) == 0) {
        throw std::invalid_argument("mock modulus must be prime");
    }
    auto s = std::shared_ptr<Suite>(new Suite());
    s->profile_ = Profile::kMock;
    s->field_ = Field(qz);
    s->g_ = MockRep{1};
    s->h_ = MockRep{1};
    cache[q] = s;
    return s;
}

std::shared_ptr<const Suite> Suite::supersingular() {
    static std::shared_ptr<const Suite> cached = [] {
        auto s = std::shared_ptr<Suite>(new Suite());
        s->profile_ = Profile::kSupersingular;
        mpz_class q = from_hex_str(kSsQ);
        s->field_ = Field(q);
        s->p_ = from_hex_str(kSsP);
        s->sqrt_exp_ = (s->p_ + 1) / 4;
        s->final_exp_ = (s->p_ * s->p_ - 1) / q;
        s->g_ = PointRep{from_hex_str(kSsGx), from_hex_str(kSsGy), false};
        s->h_ = PointRep{from_hex_str(kSsHx), from_hex_str(kSsHy), false};
        return s;
    }();
    return cached;
}

std::shared_ptr<const Suite> Suite::from_name(const std::string& name) {
    if (name == "mock") return mock();
    if (name == "production" || name == "supersingular") return supersingular();
    throw std::invalid_argument("unknown profile: " + name);
}

const char* Suite::name() const {
    return profile_ == Profile::kMock ? "mock" : "production";
}

size_t Suite::fp_byte_width() const {
    return (mpz_sizeinbase(p_.get_mpz_t(), 2) + 7) / 8;
}

// ---- F_p helpers ----

mpz_class Suite::fp_add(const mpz_class& a, const mpz_class& b) const {
    mpz_class r = a + b;
    if (r >= p_) r -= p_;
    return r;
}

mpz_class Suite::fp_sub(const mpz_class& a, const mpz_class& b) const {
    mpz_class r = a - b;
    if (r < 0) r += p_;
    return r;
}

mpz_class Suite::fp_mul(const mpz_class& a, const mpz_class& b) const {
    mpz_class r = a * b;
    r %= p_;
    return r;
}

mpz_class Suite::fp_inv(const mpz_class& a) const {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()) == 0) {
        throw std::domain_error("no inverse in F_p");
    }
    return r;
}

// ---- affine curve arithmetic on y^2 = x^3 + x ----

PointRep Suite::pt_neg(const PointRep& a) const {
    if (a.inf) return a;
    return PointRep{a.x, a.y == 0 ? mpz_class(0) : p_ - a.y, false};
}

PointRep Suite::pt_double(const PointRep& a) const {
    if (a.inf) return a;
    if (a.y == 0) return PointRep{};  // 2-torsion, cannot occur in the q-subgroup
    mpz_class lam = fp_mul(fp_add(fp_mul(3, fp_mul(a.x, a.x)), 1), fp_inv(fp_mul(2, a.y)));
    mpz_class x3 = fp_sub(fp_mul(lam, lam), fp_mul(2, a.x));
    mpz_class y3 = fp_sub(fp_mul(lam, fp_sub(a.x, x3)), a.y);
    return PointRep{std::move(x3), std::move(y3), false};
}

PointRep Suite::pt_add(const PointRep& a, const PointRep& b) const {
    if (a.inf) return b;
    if (b.inf) return a;
    if (a.x == b.x) {
        if (a.y == b.y) return pt_double(a);
        return PointRep{};
    }
    mpz_class lam = fp_mul(fp_sub(b.y, a.y), fp_inv(fp_sub(b.x, a.x)));
    mpz_class x3 = fp_sub(fp_sub(fp_mul(lam, lam), a.x), b.x);
    mpz_class y3 = fp_sub(fp_mul(lam, fp_sub(a.x, x3)), a.y);
    return PointRep{std::move(x3), std::move(y3), false};
}

PointRep Suite::pt_mul(const PointRep& a, const mpz_class& k) const {
    PointRep r{};
    if (k == 0 || a.inf) return r;
    size_t nbits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (size_t i = nbits; i-- > 0;) {
        r = pt_double(r);
        if (mpz_tstbit(k.get_mpz_t(), i)) r = pt_add(r, a);
    }
    return r;
}

// ---- F_p2 = F_p[i], i^2 = -1 ----

Fp2Rep Suite::fp2_mul(const Fp2Rep& a, const Fp2Rep& b) const {
    return Fp2Rep{fp_sub(fp_mul(a.a, b.a), fp_mul(a.b, b.b)),
                  fp_add(fp_mul(a.a, b.b), fp_mul(a.b, b.a))};
}

Fp2Rep Suite::fp2_sqr(const Fp2Rep& a) const {
    return Fp2Rep{fp_mul(fp_add(a.a, a.b), fp_sub(a.a, a.b)),
                  fp_mul(fp_mul(2, a.a), a.b)};
}

Fp2Rep Suite::fp2_inv(const Fp2Rep& a) const {
    mpz_class norm = fp_add(fp_mul(a.a, a.a), fp_mul(a.b, a.b));
    mpz_class ni = fp_inv(norm);
    return Fp2Rep{fp_mul(a.a, ni), fp_mul(p_ - (a.b % p_), ni)};
}

Fp2Rep Suite::fp2_pow(const Fp2Rep& a, const mpz_class& e) const {
    Fp2Rep r{1, 0};
    if (e == 0) return r;
    size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = nbits; i-- > 0;) {
        r = fp2_sqr(r);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = fp2_mul(r, a);
    }
    return r;
}

// Modified Tate pairing: f_{q,P}(phi(Q)) raised to (p^2-1)/q, with the
// distortion map phi(x, y) = (-x, iy). Vertical lines evaluate in F_p and
// vanish under the final exponentiation, so they are skipped.
Fp2Rep Suite::tate(const PointRep& pp, const PointRep& qq) const {
    if (pp.inf || qq.inf) return Fp2Rep{1, 0};
    const mpz_class& q = field_.modulus();
    Fp2Rep f{1, 0};
    PointRep v = pp;
    size_t nbits = mpz_sizeinbase(q.get_mpz_t(), 2);
    for (size_t i = nbits - 1; i-- > 0;) {
        // tangent at V, evaluated at (-xq, i*yq)
        mpz_class lam = fp_mul(fp_add(fp_mul(3, fp_mul(v.x, v.x)), 1), fp_inv(fp_mul(2, v.y)));
        Fp2Rep line{fp_sub(fp_mul(lam, fp_add(qq.x, v.x)), v.y), qq.y};
        f = fp2_mul(fp2_sqr(f), line);
        v = pt_double(v);
        if (mpz_tstbit(q.get_mpz_t(), i)) {
            if (v.x == pp.x && v.y != pp.y) {
                // V = -P: final addition reaches infinity through a vertical
                // line, which the final exponentiation kills.
                v = PointRep{};
            } else {
                mpz_class lam2 = fp_mul(fp_sub(pp.y, v.y), fp_inv(fp_sub(pp.x, v.x)));
                Fp2Rep line2{fp_sub(fp_mul(lam2, fp_add(qq.x, v.x)), v.y), qq.y};
                f = fp2_mul(f, line2);
                v = pt_add(v, pp);
            }
        }
    }
    return fp2_pow(f, final_exp_);
}

// ---- rep-level group operations ----

SrcRep Suite::src_mul(const SrcRep& a, const SrcRep& b) const {
    if (profile_ == Profile::kMock) {
        const auto& ma = std::get<MockRep>(a);
        const auto& mb = std::get<MockRep>(b);
        mpz_class r = ma.e + mb.e;
        if (r >= field_.modulus()) r -= field_.modulus();
        return MockRep{std::move(r)};
    }
    return pt_add(std::get<PointRep>(a), std::get<PointRep>(b));
}

SrcRep Suite::src_pow(const SrcRep& a, const Scalar& e) const {
    if (profile_ == Profile::kMock) {
        const auto& ma = std::get<MockRep>(a);
        mpz_class r = ma.e * e.value();
        r %= field_.modulus();
        return MockRep{std::move(r)};
    }
    return pt_mul(std::get<PointRep>(a), e.value());
}

SrcRep Suite::src_inverse(const SrcRep& a) const {
    if (profile_ == Profile::kMock) {
        const auto& ma = std::get<MockRep>(a);
        if (ma.e == 0) return MockRep{0};
        return MockRep{field_.modulus() - ma.e};
    }
    return pt_neg(std::get<PointRep>(a));
}

SrcRep Suite::src_identity() const {
    if (profile_ == Profile::kMock) return MockRep{0};
    return PointRep{};
}

bool Suite::src_is_identity(const SrcRep& a) const {
    if (profile_ == Profile::kMock) return std::get<MockRep>(a).e == 0;
    return std::get<PointRep>(a).inf;
}

Bytes Suite::src_to_bytes(const SrcRep& a) const {
    if (profile_ == Profile::kMock) {
        return mpz_to_bytes(std::get<MockRep>(a).e, field_.byte_width());
    }
    const auto& pt = std::get<PointRep>(a);
    if (pt.inf) return Bytes{0x00};
    size_t w = (mpz_sizeinbase(p_.get_mpz_t(), 2) + 7) / 8;
    Bytes out;
    out.push_back(mpz_tstbit(pt.y.get_mpz_t(), 0) ? 0x03 : 0x02);
    append(out, mpz_to_bytes(pt.x, w));
    return out;
}

SrcRep Suite::src_from_bytes(std::span<const uint8_t> b) const {
    if (profile_ == Profile::kMock) {
        if (b.size() != field_.byte_width()) throw std::invalid_argument("bad element width");
        mpz_class e = mpz_from_bytes(b);
        if (e >= field_.modulus()) throw std::invalid_argument("element out of range");
        return MockRep{std::move(e)};
    }
    if (b.size() == 1 && b[0] == 0x00) return PointRep{};
    size_t w = (mpz_sizeinbase(p_.get_mpz_t(), 2) + 7) / 8;
    if (b.size() != 1 + w || (b[0] != 0x02 && b[0] != 0x03)) {
        throw std::invalid_argument("bad point encoding");
    }
    mpz_class x = mpz_from_bytes(b.subspan(1));
    if (x >= p_) throw std::invalid_argument("point x out of range");
    mpz_class rhs = fp_add(fp_mul(fp_mul(x, x), x), x);
    mpz_class y;
    mpz_powm(y.get_mpz_t(), rhs.get_mpz_t(), sqrt_exp_.get_mpz_t(), p_.get_mpz_t());
    if (fp_mul(y, y) != rhs) throw std::invalid_argument("x not on curve");
    bool odd = mpz_tstbit(y.get_mpz_t(), 0);
    if (odd != (b[0] == 0x03)) y = p_ - y;
    PointRep pt{std::move(x), std::move(y), false};
    if (!pt_mul(pt, field_.modulus()).inf) throw std::invalid_argument("point not in subgroup");
    return pt;
}

Scalar Suite::src_exponent(const SrcRep& a) const {
    if (profile_ != Profile::kMock) {
        throw std::logic_error("exponent_of is only available on the mock profile");
    }
    return Scalar(std::get<MockRep>(a).e, &field_);
}

// ---- target group ----

TRep Suite::t_mul(const TRep& a, const TRep& b) const {
    if (profile_ == Profile::kMock) {
        mpz_class r = std::get<MockRep>(a).e + std::get<MockRep>(b).e;
        if (r >= field_.modulus()) r -= field_.modulus();
        return MockRep{std::move(r)};
    }
    return fp2_mul(std::get<Fp2Rep>(a), std::get<Fp2Rep>(b));
}

TRep Suite::t_pow(const TRep& a, const Scalar& e) const {
    if (profile_ == Profile::kMock) {
        mpz_class r = std::get<MockRep>(a).e * e.value();
        r %= field_.modulus();
        return MockRep{std::move(r)};
    }
    return fp2_pow(std::get<Fp2Rep>(a), e.value());
}

TRep Suite::t_inverse(const TRep& a) const {
    if (profile_ == Profile::kMock) {
        const auto& ma = std::get<MockRep>(a);
        if (ma.e == 0) return MockRep{0};
        return MockRep{field_.modulus() - ma.e};
    }
    return fp2_inv(std::get<Fp2Rep>(a));
}

TRep Suite::t_identity() const {
    if (profile_ == Profile::kMock) return MockRep{0};
    return Fp2Rep{1, 0};
}

bool Suite::t_is_identity(const TRep& a) const {
    if (profile_ == Profile::kMock) return std::get<MockRep>(a).e == 0;
    const auto& f = std::get<Fp2Rep>(a);
    return f.a == 1 && f.b == 0;
}

TElem Suite::pair(const GElem& a, const HElem& b) const {
    assert(a.s_ == this && b.s_ == this);
    if (profile_ == Profile::kMock) {
        mpz_class r = std::get<MockRep>(a.rep_).e * std::get<MockRep>(b.rep_).e;
        r %= field_.modulus();
        return TElem(MockRep{std::move(r)}, this);
    }
    return TElem(tate(std::get<PointRep>(a.rep_), std::get<PointRep>(b.rep_)), this);
}

TElem Suite::t_from_bytes(std::span<const uint8_t> b) const {
    if (profile_ == Profile::kMock) {
        if (b.size() != field_.byte_width()) throw std::invalid_argument("bad element width");
        mpz_class e = mpz_from_bytes(b);
        if (e >= field_.modulus()) throw std::invalid_argument("element out of range");
        return TElem(MockRep{std::move(e)}, this);
    }
    size_t w = fp_byte_width();
    if (b.size() != 2 * w) throw std::invalid_argument("bad target element width");
    mpz_class a = mpz_from_bytes(b.first(w));
    mpz_class bb = mpz_from_bytes(b.subspan(w));
    if (a >= p_ || bb >= p_) throw std::invalid_argument("target element out of range");
    return TElem(Fp2Rep{std::move(a), std::move(bb)}, this);
}

TElem TElem::operator*(const TElem& o) const {
    assert(s_ && s_ == o.s_);
    return TElem(s_->t_mul(rep_, o.rep_), s_);
}
TElem TElem::operator/(const TElem& o) const {
    assert(s_ && s_ == o.s_);
    return TElem(s_->t_mul(rep_, s_->t_inverse(o.rep_)), s_);
}
TElem TElem::pow(const Scalar& e) const {
    assert(s_);
    return TElem(s_->t_pow(rep_, e), s_);
}
TElem TElem::inverse() const {
    assert(s_);
    return TElem(s_->t_inverse(rep_), s_);
}
bool TElem::is_identity() const {
    assert(s_);
    return s_->t_is_identity(rep_);
}

Bytes TElem::to_bytes() const {
    assert(s_);
    if (s_->profile() == Profile::kMock) {
        return mpz_to_bytes(std::get<MockRep>(rep_).e, s_->field().byte_width());
    }
    const auto& f = std::get<Fp2Rep>(rep_);
    size_t w = s_->fp_byte_width();
    Bytes out = mpz_to_bytes(f.a, w);
    append(out, mpz_to_bytes(f.b, w));
    return out;
}

Scalar Suite::exponent_of(const TElem& e) const {
    if (profile_ != Profile::kMock) {
        throw std::logic_error("exponent_of is only available on the mock profile");
    }
    return Scalar(std::get<MockRep>(e.rep_).e, &field_);
}

}  // namespace redact
