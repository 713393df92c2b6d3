#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polylb/certificate.hpp"
#include "polylb/children.hpp"
#include "polylb/measure.hpp"

namespace polylb {

/// Oracle effort behind every certified constant.
struct OracleBudget {
    std::int64_t samples = 4000;
    std::uint64_t seed = 1;
};

/// f is of polynomial type n on (K_eps, hull): f^{(n)} keeps the sign
/// `sign` on the hull and sup_hull |f^{(n)}| <= C inf_{K_eps} |f^{(n)}|.
struct PolyTypeWitness {
    Polynomial f;
    int n = 0;
    double constant_C = 1.0;
    int sign = 1;
};

/// Checks the sign condition and computes the smallest C. Throws when
/// f^{(n)} changes sign on the hull or vanishes on K_eps.
PolyTypeWitness make_poly_type_witness(const Polynomial& f, int n, const Interval& hull,
                                       const RealSet& keps);

struct Theorem1Bound {
    double lhs = 0.0;  // int |f| dmu
    double rhs = 0.0;  // l_n^n / (n+1)! * inf_hull |f^{(n)}|
    EllEstimate ell;
};

/// The explicit lower bound int |f| dmu >= l_n(mu)^n / (n+1)! inf |f^{(n)}|,
/// the infimum taken over the hull of K.
Theorem1Bound theorem1_bound(const ProbMeasure& mu, const RealSet& K, int n,
                             const PolyTypeWitness& f, const MCBudget& mc = {});

/// Certified constant for int |f| dmu >= c |mu|_{n,eps}^n inf_{K_eps} |f^{(n)}|
/// over degree <= n + extra_degree polynomials whose n-th derivative keeps
/// one sign on the hull of K.
Certificate theorem1_certificate(const ProbMeasure& mu, const RealSet& K, int n, double eps,
                                 const OracleBudget& oracle = {}, int extra_degree = 2);

/// Joins sorted points into at most n closed components so that
/// sup_E |f| <= (n+1) 2^n max_j |f(t_j)| whenever f^{(n)} keeps one sign.
/// Repeatedly applies the (n+1)-point rule to windows of gap left endpoints
/// and closes every gap inside the shortest resulting interval.
RealSet close_gaps(std::span<const double> points, int n);
/// Same, treating each block as already closed.
RealSet close_gaps_blocks(std::span<const Interval> blocks, int n);

/// For n+1 increasing points: the interior index k maximizing
/// V_n(t without t_k) and the shorter neighbouring interval.
struct GapRule {
    int k = 1;
    Interval closed;
};
GapRule close_gap_rule(std::span<const double> window);

struct Theorem2Construction {
    double eps_prime = 0.0;
    ChildrenTree tree;
    std::vector<Child> leaves;
    RealSet E;
};

/// eps' = 1 - (1 - eps)^{1/n}; the leaves of the children tree joined by
/// close_gaps_blocks. Atomic measures on at most n points short-circuit to
/// the points themselves.
Theorem2Construction theorem2_construction(const ProbMeasure& mu, int n, double eps,
                                           const MCBudget& mc = {});

/// E with mu(E) >= 1 - eps and at most n components, with the certified
/// constant for int |p| dmu >= c sup_E |p|.
Certificate theorem2_set(const ProbMeasure& mu, const RealSet& K, int n, double eps,
                         const OracleBudget& oracle = {}, const MCBudget& mc = {});

/// The heaviest component I' of E (mu(I') >= (1-eps)/n), certified for
/// j = 0..n with scale min(|I'|, |mu|_{n,eps}).
Certificate corollary_interval(const ProbMeasure& mu, const RealSet& K, int n, double eps,
                               const OracleBudget& oracle = {}, const MCBudget& mc = {});

/// Interval I with |K cap I| >= (1-eps)/n |K| and constants c_j with
/// int_K |p| >= c_j |K|^{j+1} sup_I |p^{(j)}|, j = 0..n.
Certificate theorem0_pipeline(const RealSet& K, int n, double eps, const OracleBudget& oracle = {},
                              const MCBudget& mc = {});

/// Diagnostic replay of the index selection along one leaf chain
/// I_0 ⊆ I_1 ⊆ ... ⊆ I_n: maximizes c^j |I_{j-1}|^j sup_{I_j} |f^{(j)}| with
/// 1/c = log(3/2) and I_{-1} = I_0, taking the largest maximizer.
struct Theorem2Selection {
    int j = 0;
    std::vector<double> scores;
};
Theorem2Selection theorem2_selection(std::span<const Interval> chain, const Polynomial& f);

/// Leaf-to-root chains [I_0, I_1, ..., I_n] of a children tree.
std::vector<std::vector<Interval>> leaf_chains(const ChildrenTree& tree);

struct RecenterBound {
    /// lhs[j] = min(|I'|^j, ell^j) sup |f^{(j)}|,
    /// rhs[j] = sup |f| + ell^n sup |f^{(n)}|, sups over I'.
    std::vector<double> lhs;
    std::vector<double> rhs;
};
RecenterBound recenter_bound(const Polynomial& f, const Interval& Iprime, double ell, int n);

/// Largest lhs/rhs ratio found over degree <= n polynomials for the ratio
/// ell / |I'| = rho (the inequality is scale invariant).
double recenter_constant(int n, double rho, const OracleBudget& oracle = {});

}  // namespace polylb
