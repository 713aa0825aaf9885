#include "redact/poly.hpp"

#include <cassert>
#include <stdexcept>

namespace redact {

UniPoly UniPoly::operator+(const UniPoly& o) const {
    const UniPoly& longer = c.size() >= o.c.size() ? *this : o;
    const UniPoly& shorter = c.size() >= o.c.size() ? o : *this;
    UniPoly out = longer;
    for (size_t i = 0; i < shorter.c.size(); i++) out.c[i] = out.c[i] + shorter.c[i];
    return out;
}

UniPoly interpolate(const std::vector<std::pair<Scalar, Scalar>>& points) {
    if (points.empty()) throw std::invalid_argument("no interpolation points");
    const Field& f = points[0].first.field();
    size_t n = points.size();
    UniPoly acc = UniPoly::zero(f, n - 1);
    std::vector<Scalar> basis;
    for (size_t i = 0; i < n; i++) {
        // numerator polynomial prod_{j != i} (x - x_j)
        basis.assign(1, f.one());
        Scalar denom = f.one();
        for (size_t j = 0; j < n; j++) {
            if (j == i) continue;
            basis.push_back(f.zero());
            for (size_t k = basis.size() - 1; k > 0; k--) {
                basis[k] = basis[k - 1] - basis[k] * points[j].first;
            }
            basis[0] = -(basis[0] * points[j].first);
            denom = denom * (points[i].first - points[j].first);
        }
        Scalar w = points[i].second * denom.inverse();
        for (size_t k = 0; k < basis.size(); k++) {
            acc.c[k] = acc.c[k] + basis[k] * w;
        }
    }
    return acc;
}

Scalar interpolate_at(const std::vector<std::pair<Scalar, Scalar>>& points, const Scalar& x) {
    if (points.empty()) throw std::invalid_argument("no interpolation points");
    const Field& f = points[0].first.field();
    Scalar acc = f.zero();
    for (size_t i = 0; i < points.size(); i++) {
        Scalar num = f.one();
        Scalar den = f.one();
        for (size_t j = 0; j < points.size(); j++) {
            if (j == i) continue;
            num = num * (x - points[j].first);
            den = den * (points[i].first - points[j].first);
        }
        acc = acc + points[i].second * num * den.inverse();
    }
    return acc;
}

UniPoly quotient_by_linear(const UniPoly& f, const Scalar& i) {
    if (f.c.empty()) throw std::invalid_argument("empty polynomial");
    const Field& fld = i.field();
    size_t n = f.c.size();
    if (n == 1) return UniPoly::zero(fld, 0);
    UniPoly q = UniPoly::zero(fld, n - 2);
    Scalar carry = fld.zero();
    for (size_t k = n; k-- > 1;) {
        carry = f.c[k] + carry * i;
        q.c[k - 1] = carry;
    }
    return q;
}

BivarPoly BivarPoly::random(const Field& f, size_t dx, size_t dy,
                            const Scalar& at_origin, Rng& rng) {
    BivarPoly p;
    p.dx = dx;
    p.dy = dy;
    p.c.assign(dx + 1, {});
    for (size_t i = 0; i <= dx; i++) {
        p.c[i].reserve(dy + 1);
        for (size_t j = 0; j <= dy; j++) p.c[i].push_back(f.random(rng));
    }
    p.c[0][0] = at_origin;
    return p;
}

Scalar BivarPoly::eval(const Scalar& x, const Scalar& y) const {
    return slice_x(x).eval(y);
}

UniPoly BivarPoly::slice_x(const Scalar& x) const {
    const Field& f = x.field();
    UniPoly out = UniPoly::zero(f, dy);
    // powers of x accumulate across rows
    Scalar xp = f.one();
    for (size_t i = 0; i <= dx; i++) {
        for (size_t j = 0; j <= dy; j++) {
            out.c[j] = out.c[j] + c[i][j] * xp;
        }
        xp = xp * x;
    }
    return out;
}

UniPoly BivarPoly::slice_y(const Scalar& y) const {
    assert(!c.empty());
    const Field& f = y.field();
    UniPoly out = UniPoly::zero(f, dx);
    Scalar yp = f.one();
    for (size_t j = 0; j <= dy; j++) {
        for (size_t i = 0; i <= dx; i++) {
            out.c[i] = out.c[i] + c[i][j] * yp;
        }
        yp = yp * y;
    }
    return out;
}

void BivarPoly::wipe() {
    for (auto& row : c) {
        for (auto& s : row) s.wipe();
    }
}

}  // namespace redact
