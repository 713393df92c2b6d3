#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version and a serial
// reference; both partition the work the same way and reduce in a fixed
// order, so their results agree bit for bit for any thread count.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polylb/measure.hpp"

namespace polylb::kernels {

/// Moments of N = |V_{n+1}(x_1..x_{n+1})| and D = |V_n(x_1..x_n)| over
/// i.i.d. draws from mu (D reuses the first n points of each draw).
struct VandermondeMoments {
    std::int64_t samples = 0;
    double mean_num = 0.0;
    double mean_den = 0.0;
    double var_num = 0.0;
    double var_den = 0.0;
    double cov = 0.0;
};

VandermondeMoments mc_vandermonde_moments(const ProbMeasure& mu, int n, std::int64_t samples,
                                          std::uint64_t seed);
VandermondeMoments mc_vandermonde_moments_serial(const ProbMeasure& mu, int n,
                                                 std::int64_t samples, std::uint64_t seed);

/// Point i of the uniform sample on the unit sphere in R^dim.
std::vector<double> sphere_point(int dim, std::uint64_t seed, std::int64_t index);

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct ScanHit {
    double value;
    std::int64_t index;
    std::vector<double> point;
};

/// Evaluates the objective at `budget` sphere points and returns the `keep`
/// smallest, ordered by (value, index). Non-finite values are ignored.
std::vector<ScanHit> sphere_scan(int dim, std::int64_t budget, std::uint64_t seed,
                                 const ObjectiveFn& f, int keep);
std::vector<ScanHit> sphere_scan_serial(int dim, std::int64_t budget, std::uint64_t seed,
                                        const ObjectiveFn& f, int keep);

/// Reduction over independent trials: slack_of(i) returns the trial's
/// relative slack, or NaN to skip it.
struct BatchStats {
    std::int64_t trials = 0;
    std::int64_t checked = 0;
    std::int64_t violations = 0;
    double min_slack = 0.0;
    std::int64_t argmin = -1;
};

BatchStats evaluate_batch(std::int64_t trials, double tolerance,
                          const std::function<double(std::int64_t)>& slack_of);
BatchStats evaluate_batch_serial(std::int64_t trials, double tolerance,
                                 const std::function<double(std::int64_t)>& slack_of);

}  // namespace polylb::kernels
