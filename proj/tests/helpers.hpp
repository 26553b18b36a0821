#pragma once

// Shared test utilities: running moment accumulators and small scene
// builders. Oracles that check a specific operation live next to their
// tests, not here.

#include <cmath>
#include <complex>

#include "starnoma/starnoma.hpp"

namespace test_util {

/// Streaming mean/variance accumulator for real samples.
struct RunningStats {
    long n = 0;
    double sum = 0.0;
    double sum2 = 0.0;

    void add(double x) {
        ++n;
        sum += x;
        sum2 += x * x;
    }
    double mean() const { return sum / n; }
    double variance() const {
        const double m = mean();
        return (sum2 - n * m * m) / (n - 1);
    }
    double stderr_mean() const { return std::sqrt(variance() / n); }
};

/// Streaming accumulator for complex samples; tracks the total spread
/// E|x - mean|^2 for standard-error bounds on the complex mean.
struct RunningComplexStats {
    long n = 0;
    std::complex<double> sum{0.0, 0.0};
    double sum_norm = 0.0;

    void add(std::complex<double> x) {
        ++n;
        sum += x;
        sum_norm += std::norm(x);
    }
    std::complex<double> mean() const { return sum / static_cast<double>(n); }
    double total_variance() const { return (sum_norm - n * std::norm(mean())) / (n - 1); }
    double stderr_mean() const { return std::sqrt(total_variance() / n); }
};

/// Reference scene (defaults) with a smaller panel for fast MC loops.
inline starnoma::SceneConfig small_scene(int nx = 10, int ny = 10) {
    starnoma::SceneConfig s;
    s.panel_t = {nx, ny};
    s.panel_r = {nx, ny};
    return s;
}

}  // namespace test_util
