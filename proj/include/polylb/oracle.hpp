#pragma once

#include <cstdint>
#include <vector>

#include "polylb/certificate.hpp"
#include "polylb/kernels.hpp"
#include "polylb/measure.hpp"

namespace polylb {

/// ratio(p) = int |p| dmu / (scale^j * sup_region |p^{(j)}|) over p of
/// degree <= n. With mu uniform on K and scale = |K| this is
/// int_K |p| dt / (|K|^{j+1} sup_region |p^{(j)}|).
struct RatioProblem {
    RealSet K;
    ProbMeasure mu = ProbMeasure::uniform(RealSet::single({0.0, 1.0}));
    RealSet region;
    int n = 1;
    int j = 0;
    double scale = 1.0;

    /// Lebesgue measure on K: mu uniform on K, scale |K|.
    static RatioProblem lebesgue(RealSet K, RealSet region, int n, int j);
};

/// +inf when the denominator vanishes.
double ratio_value(const RatioProblem& prob, const Polynomial& p);

struct RatioResult {
    double min_ratio = 0.0;
    Polynomial witness;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    int refine_steps = 0;
};

/// Minimizes the ratio over the unit coefficient sphere (monomial basis on
/// the common hull of K and the region, rescaled to [0, 1]): `budget`
/// uniform sphere samples, then Nelder-Mead polish of the best ten in
/// projective coordinates. The result is an upper bound on the true
/// minimum. Deterministic in (prob, budget, seed).
RatioResult certify_ratio(const RatioProblem& prob, std::int64_t budget, std::uint64_t seed);

struct SphereMinimum {
    double value = 0.0;
    std::vector<double> point;
    int refine_steps = 0;
};

/// Generic sphere search used by certify_ratio and the theorem-1 class.
SphereMinimum sphere_minimize(int dim, const kernels::ObjectiveFn& f, std::int64_t budget,
                              std::uint64_t seed, int polish = 10);

/// Affine map taking the hull [lo, hi] onto [0, 1].
struct UnitChart {
    double lo = 0.0;
    double len = 1.0;
    static UnitChart of(const Interval& hull);
    /// p(t) = q((t - lo) / len) for q given in the chart coordinate.
    Polynomial to_world(std::span<const double> q) const;
};

struct ValidationReport {
    std::int64_t trials = 0;
    std::int64_t checked = 0;
    std::int64_t violations = 0;
    /// min over trials and indices of ratio / c_j - 1.
    double min_slack = 0.0;
    Polynomial worst;
};

/// Draws `trials` random polynomials from the certificate's class and counts
/// relative slacks below -1e-9.
ValidationReport validate_inequality(const Certificate& cert, std::int64_t trials,
                                     std::uint64_t seed);

/// Ratio a certificate asserts is at least constant_for(j); NaN when p is
/// outside the certificate's class, +inf when the right side vanishes.
double certificate_ratio(const Certificate& cert, const Polynomial& p, int j);

/// Mass-imbalanced family: n main components of length (1 - d)/n at
/// k * 2^m (k < n) and a small one of length d = 4^{-m} at n * 2^m.
RealSet imbalanced_family_member(int n, int m);

struct CounterexampleRow {
    int m = 0;
    RealSet K;
    /// Best j = 0 constant over the candidate intervals I with
    /// |K cap I| >= |K| / n (eps = 0), and the interval achieving it.
    double eps0_constant = 0.0;
    Interval eps0_interval;
    int candidates = 0;
    /// j = 0 constant of the eps = pipeline_eps pipeline on the same K.
    double pipeline_constant = 0.0;
    Interval pipeline_interval;
};

struct CounterexampleReport {
    int n = 1;
    double pipeline_eps = 0.25;
    std::vector<CounterexampleRow> rows;
    bool eps0_strictly_decreasing = false;
    double pipeline_min = 0.0;
};

CounterexampleReport search_counterexample(int n, int family_size, std::uint64_t seed,
                                           std::int64_t budget = 2000, double pipeline_eps = 0.25);

}  // namespace polylb
