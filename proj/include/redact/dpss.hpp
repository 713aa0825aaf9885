#ifndef REDACT_DPSS_HPP_
#define REDACT_DPSS_HPP_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "redact/poly.hpp"

namespace redact::dpss {

// Committee shape. Members are ordered lexicographically by their public
// key string; evaluation positions are the 1-based ranks in that order.
struct Config {
    size_t n = 0;
    size_t t = 0;
    uint64_t epoch = 0;
    std::vector<std::string> members;

    void validate() const;
    size_t position_of(const std::string& member) const;  // 1-based
};

// f(i, ·): what member at position i holds; degree 2t in y.
struct FullShare {
    size_t holder = 0;
    UniPoly poly;
};

// f(·, j): the intermediate handoff form; degree t in x.
struct ReducedShare {
    size_t holder = 0;
    UniPoly poly;
};

class OpenError : public std::runtime_error {
  public:
    enum Kind { kTooFew, kInconsistent };
    OpenError(Kind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
    Kind kind;
};

// Dealer sharing of a secret: random bivariate with degrees (t, 2t) and
// f(0,0) = secret.
std::vector<FullShare> share(const Scalar& secret, const Config& cfg, Rng& rng);

// Interpolates f(·,0) at 0 from at least t+1 full shares. With more than
// t+1 shares the extras must lie on the same degree-t polynomial;
// otherwise the shares are inconsistent.
Scalar open(std::span<const FullShare> shares, size_t t);

}  // namespace redact::dpss

#endif
