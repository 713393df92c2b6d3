#pragma once

#include <cstdint>
#include <vector>

#include "polylb/measure.hpp"

namespace polylb {

struct MCBudget {
    std::int64_t samples = 200000;
    std::uint64_t seed = 0x5eed;
    /// Atomic measures are summed exactly when C(m, n+1) stays below this.
    std::int64_t exact_limit = 10000000;
};

/// Estimate of l_n(mu), where l_n^n = E|V_{n+1}| / E|V_n| under product
/// draws from mu.
struct EllEstimate {
    enum class Method { exact, montecarlo };

    int n = 0;
    double value = 0.0;
    double stderr_ = 0.0;
    Method method = Method::exact;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    /// Set when E|V_n| = 0 (mu sits on fewer than n points).
    bool degenerate = false;

    double relative_stderr() const { return value > 0.0 ? stderr_ / value : 0.0; }
};

EllEstimate ell_n(const ProbMeasure& mu, int n, const MCBudget& budget = {});

struct Child {
    Interval interval;
    double mass = 0.0;  // mu-mass of the child
};

/// (n, eps)-children: the components of
///   E = { t : prod_i |t - t_i| <= 2 eps^{-1} l_n^n }
/// with mu(E) >= 1 - eps/2, keeping those of mass >= eps/(2n). Each child is
/// shrunk to the hull of the mass it carries, so children of atomic measures
/// may be points.
struct ChildrenDecomposition {
    int n = 0;
    double eps = 0.0;
    EllEstimate ell;
    std::vector<double> nodes;
    double threshold = 0.0;
    /// mu-mass of the sublevel set before small components are dropped.
    double sublevel_mass = 0.0;
    /// Number of connected components of the sublevel set.
    int sublevel_components = 0;
    double sublevel_length = 0.0;
    std::vector<Child> children;

    double total_mass() const;
    double total_length() const;
};

/// Connected components of { t : prod_i |t - t_i| <= threshold }.
RealSet sublevel_set(const std::vector<double>& nodes, double threshold);

/// Throws when the node search cannot reach mass 1 - eps/2, which signals
/// an error in the l_n estimate.
ChildrenDecomposition decompose(const ProbMeasure& mu, int n, double eps,
                                const MCBudget& budget = {});

/// Iterated children: the root decomposes mu into (n, eps')-children, each
/// child interval I is decomposed into (n-1, eps')-children of mu_I, and so
/// on down to 1-children, which are the leaves.
struct ChildrenTree {
    Interval interval;
    /// mu-mass of `interval` under the original measure.
    double mass = 1.0;
    int order = 0;
    ChildrenDecomposition decomposition;
    /// One subtree per child, empty at order 1.
    std::vector<ChildrenTree> subtrees;

    std::vector<Child> leaves() const;
    int depth() const;
};

ChildrenTree children_tree(const ProbMeasure& mu, int n, double eps_prime,
                           const MCBudget& budget = {});

}  // namespace polylb
