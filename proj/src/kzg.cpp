#include "redact/kzg.hpp"

#include <stdexcept>

namespace redact::kzg {

std::pair<Scalar, Params> setup(std::shared_ptr<const Suite> suite, size_t t, Rng& rng) {
    if (t < 1) throw std::invalid_argument("degree bound must be >= 1");
    const Field& f = suite->field();
    Scalar alpha = f.random_nonzero(rng);
    Params p;
    p.suite = suite;
    p.g_powers.reserve(t + 1);
    Scalar power = f.one();
    for (size_t j = 0; j <= t; j++) {
        p.g_powers.push_back(suite->g_pow(power));
        power = power * alpha;
    }
    p.h = suite->h();
    p.h_alpha = suite->h_pow(alpha);
    return {std::move(alpha), std::move(p)};
}

bool consistent(const Params& params) {
    const Suite& s = *params.suite;
    for (size_t j = 0; j + 1 < params.g_powers.size(); j++) {
        if (s.pair(params.g_powers[j], params.h_alpha) !=
            s.pair(params.g_powers[j + 1], params.h)) {
            return false;
        }
    }
    return true;
}

Commitment commit(const Params& params, const UniPoly& f) {
    if (f.degree_bound() > params.degree_bound()) {
        throw std::invalid_argument("polynomial exceeds degree bound");
    }
    GElem acc = params.suite->identity_g();
    for (size_t j = 0; j < f.c.size(); j++) {
        acc = acc * params.g_powers[j].pow(f.c[j]);
    }
    return Commitment{acc};
}

Witness create_witness(const Params& params, const UniPoly& f, const Scalar& point) {
    if (f.degree_bound() > params.degree_bound()) {
        throw std::invalid_argument("polynomial exceeds degree bound");
    }
    UniPoly q = quotient_by_linear(f, point);
    GElem acc = params.suite->identity_g();
    for (size_t j = 0; j < q.c.size(); j++) {
        acc = acc * params.g_powers[j].pow(q.c[j]);
    }
    return Witness{point, f.eval(point), acc};
}

bool verify_eval(const Params& params, const Commitment& c, const Witness& wit) {
    const Suite& s = *params.suite;
    // ê(C / g^{f(i)}, h) = ê(w, h^alpha / h^i)
    GElem lhs_g = c.c / s.g_pow(wit.value);
    HElem rhs_h = params.h_alpha / params.h.pow(wit.point);
    return s.pair(lhs_g, params.h) == s.pair(wit.w, rhs_h);
}

void write_params(Writer& w, const Params& p) {
    w.put_u64(1);
    w.put_u64(p.g_powers.size());
    for (const auto& e : p.g_powers) w.put_g(e);
    w.put_h(p.h);
    w.put_h(p.h_alpha);
}

Params read_params(Reader& r, std::shared_ptr<const Suite> suite) {
    if (r.get_u64() != 1) throw SerialError("bad kzg params version");
    Params p;
    p.suite = suite;
    size_t n = r.get_u64();
    p.g_powers.reserve(n);
    for (size_t i = 0; i < n; i++) p.g_powers.push_back(r.get_g());
    p.h = r.get_h();
    p.h_alpha = r.get_h();
    return p;
}

void write_commitment(Writer& w, const Commitment& c) { w.put_g(c.c); }
Commitment read_commitment(Reader& r) { return Commitment{r.get_g()}; }

void write_witness(Writer& w, const Witness& wit) {
    w.put_scalar(wit.point);
    w.put_scalar(wit.value);
    w.put_g(wit.w);
}

Witness read_witness(Reader& r) {
    Witness wit;
    wit.point = r.get_scalar();
    wit.value = r.get_scalar();
    wit.w = r.get_g();
    return wit;
}

}  // namespace redact::kzg
