#ifndef REDACT_POLY_HPP_
#define REDACT_POLY_HPP_

#include <utility>
#include <vector>

#include "redact/field.hpp"

namespace redact {

// Univariate polynomial over Z_q, coefficients low to high. Size fixes the
// degree bound; trailing zeros are meaningful for dimension accounting.
struct UniPoly {
    std::vector<Scalar> c;

    static UniPoly zero(const Field& f, size_t deg) {
        UniPoly p;
        p.c.assign(deg + 1, f.zero());
        return p;
    }
    static UniPoly random(const Field& f, size_t deg, Rng& rng) {
        UniPoly p;
        p.c.reserve(deg + 1);
        for (size_t i = 0; i <= deg; i++) p.c.push_back(f.random(rng));
        return p;
    }

    size_t degree_bound() const { return c.empty() ? 0 : c.size() - 1; }

    Scalar eval(const Scalar& x) const {
        Scalar acc = x.field().zero();
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    UniPoly operator+(const UniPoly& o) const;
    void wipe() {
        for (auto& s : c) s.wipe();
    }
};

// Interpolates the unique polynomial of degree < points.size() through the
// given (x, y) pairs; coefficients via Lagrange basis expansion.
UniPoly interpolate(const std::vector<std::pair<Scalar, Scalar>>& points);

// Evaluates the interpolating polynomial at a single point without forming
// coefficients.
Scalar interpolate_at(const std::vector<std::pair<Scalar, Scalar>>& points, const Scalar& x);

// (f(x) - f(i)) / (x - i), exact synthetic division.
UniPoly quotient_by_linear(const UniPoly& f, const Scalar& i);

// Bivariate polynomial, degree dx in x and dy in y; c[i][j] x^i y^j.
struct BivarPoly {
    size_t dx = 0, dy = 0;
    std::vector<std::vector<Scalar>> c;

    static BivarPoly random(const Field& f, size_t dx, size_t dy,
                            const Scalar& at_origin, Rng& rng);

    Scalar eval(const Scalar& x, const Scalar& y) const;
    UniPoly slice_x(const Scalar& x) const;  // f(x, ·) as a polynomial in y
    UniPoly slice_y(const Scalar& y) const;  // f(·, y) as a polynomial in x
    void wipe();
};

}  // namespace redact

#endif
