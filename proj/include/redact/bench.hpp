#ifndef REDACT_BENCH_HPP_
#define REDACT_BENCH_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>

namespace redact {

// Per-op milliseconds as the minimum over timed batches, with the batch
// size calibrated so one batch is long enough for the clock. The minimum
// is the stable noise-floor estimate for microsecond-scale operations.
template <typename F>
double measure_op_ms(F&& op, size_t batches = 8, double target_batch_ms = 0.25) {
    using clock = std::chrono::steady_clock;
    auto run_batch = [&](size_t inner) {
        auto t0 = clock::now();
        for (size_t i = 0; i < inner; i++) op();
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };
    double single = run_batch(1);
    size_t inner = 1;
    if (single < target_batch_ms) {
        inner = size_t(std::ceil(target_batch_ms / std::max(single, 1e-6)));
        inner = std::min<size_t>(inner, 10000);
    }
    double best = run_batch(inner) / double(inner);
    for (size_t b = 1; b < batches; b++) {
        best = std::min(best, run_batch(inner) / double(inner));
    }
    return best;
}

}  // namespace redact

#endif
