#include "redact/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace redact {

double chi_square_uniform(std::span<const uint64_t> samples, uint64_t range, size_t bins) {
    if (bins < 2 || range < bins) throw std::invalid_argument("bad binning");
    std::vector<uint64_t> counts(bins, 0);
    for (uint64_t v : samples) {
        if (v >= range) throw std::invalid_argument("sample out of range");
        counts[size_t((unsigned __int128)(v)*bins / range)]++;
    }
    auto cell_start = [&](size_t i) -> uint64_t {
        // first v with v*bins/range >= i
        return uint64_t(((unsigned __int128)(i)*range + bins - 1) / bins);
    };
    double chi2 = 0;
    double n = double(samples.size());
    for (size_t i = 0; i < bins; i++) {
        uint64_t width = cell_start(i + 1) - cell_start(i);
        double expected = n * double(width) / double(range);
        double diff = double(counts[i]) - expected;
        chi2 += diff * diff / expected;
    }
    return chi2;
}

LinearFit fit_linear(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("bad fit input");
    size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; i++) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double mean = sy / n;
    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < n; i++) {
        double pred = fit.slope * xs[i] + fit.intercept;
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - mean) * (ys[i] - mean);
    }
    fit.r2 = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

LinearFit fit_power(std::span<const double> xs, std::span<const double> ys) {
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (size_t i = 0; i < xs.size(); i++) {
        if (xs[i] <= 0 || ys[i] <= 0) throw std::invalid_argument("power fit needs positives");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    return fit_linear(lx, ly);
}

}  // namespace redact
