#ifndef REDACT_STATS_HPP_
#define REDACT_STATS_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace redact {

// Chi-square statistic of u64 samples assumed uniform on [0, range),
// bucketed into `bins` near-equal cells (expected counts follow the exact
// cell widths, so range need not divide evenly).
double chi_square_uniform(std::span<const uint64_t> samples, uint64_t range, size_t bins);

// 99th percentile of chi-square with 63 degrees of freedom (64 bins),
// the acceptance threshold for the uniformity proxy at significance 0.01.
inline constexpr double kChi2Crit99Df63 = 92.01;

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

LinearFit fit_linear(std::span<const double> xs, std::span<const double> ys);

// Least-squares exponent of y ~ a * x^b via the log-log fit.
LinearFit fit_power(std::span<const double> xs, std::span<const double> ys);

}  // namespace redact

#endif
