#include "redact/dpss.hpp"

#include <algorithm>
#include <set>

namespace redact::dpss {

void Config::validate() const {
    if (n < 3 || t < 1) throw std::invalid_argument("committee too small");
    if (2 * t >= n) throw std::invalid_argument("threshold must satisfy t < n/2");
    if (members.size() != n) throw std::invalid_argument("member list size mismatch");
    if (!std::is_sorted(members.begin(), members.end())) {
        throw std::invalid_argument("members must be sorted by public key");
    }
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
        throw std::invalid_argument("duplicate member");
    }
}

size_t Config::position_of(const std::string& member) const {
    auto it = std::lower_bound(members.begin(), members.end(), member);
    if (it == members.end() || *it != member) throw std::invalid_argument("unknown member");
    return size_t(it - members.begin()) + 1;
}

std::vector<FullShare> share(const Scalar& secret, const Config& cfg, Rng& rng) {
    cfg.validate();
    const Field& f = secret.field();
    BivarPoly poly = BivarPoly::random(f, cfg.t, 2 * cfg.t, secret, rng);
    std::vector<FullShare> shares;
    shares.reserve(cfg.n);
    for (size_t i = 1; i <= cfg.n; i++) {
        shares.push_back(FullShare{i, poly.slice_x(f.from_u64(i))});
    }
    poly.wipe();
    return shares;
}

Scalar open(std::span<const FullShare> shares, size_t t) {
    if (shares.size() < t + 1) {
        throw OpenError(OpenError::kTooFew, "need at least t+1 shares");
    }
    std::set<size_t> holders;
    for (const auto& s : shares) {
        if (!holders.insert(s.holder).second) {
            throw OpenError(OpenError::kInconsistent, "duplicate holder");
        }
    }
    const Field& f = shares[0].poly.c[0].field();
    std::vector<std::pair<Scalar, Scalar>> points;
    points.reserve(t + 1);
    for (size_t i = 0; i <= t; i++) {
        points.emplace_back(f.from_u64(shares[i].holder), shares[i].poly.eval(f.zero()));
    }
    UniPoly along_x = interpolate(points);
    for (size_t i = t + 1; i < shares.size(); i++) {
        Scalar expect = along_x.eval(f.from_u64(shares[i].holder));
        if (expect != shares[i].poly.eval(f.zero())) {
            throw OpenError(OpenError::kInconsistent, "share off the reconstruction polynomial");
        }
    }
    return along_x.eval(f.zero());
}

}  // namespace redact::dpss
