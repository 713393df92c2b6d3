#pragma once

#include <concepts>
#include <span>
#include <vector>

#include "polylb/polynomial.hpp"

namespace polylb {

/// Strictly increasing, pairwise distinct nodes t_1 < ... < t_{n+1}.
class NodeSet {
public:
    /// Sorts; throws on duplicates, non-finite values or an empty list.
    explicit NodeSet(std::vector<double> nodes);

    const std::vector<double>& nodes() const { return t_; }
    /// Number of nodes minus one.
    int order() const { return static_cast<int>(t_.size()) - 1; }
    double front() const { return t_.front(); }
    double back() const { return t_.back(); }

private:
    std::vector<double> t_;
};

/// Product over j > i of (t_j - t_i); 1 for fewer than two points.
double vandermonde(std::span<const double> points);

/// Divided difference [t_1, ..., t_{n+1}] f from the Newton table.
double divided_difference(std::span<const double> values, const NodeSet& nodes);

template <class F>
    requires std::invocable<F, double>
double divided_difference(F&& f, const NodeSet& nodes) {
    std::vector<double> v;
    v.reserve(nodes.nodes().size());
    for (double t : nodes.nodes()) v.push_back(f(t));
    return divided_difference(std::span<const double>(v), nodes);
}

/// The same functional as an alternating sum of Vandermonde ratios,
///   sum_i (-1)^{n+1-i} f(t_i) V_n(t without t_i) / V_{n+1}(t).
/// Poorly conditioned; kept as the independent route for cross-checks.
double divided_difference_vandermonde(std::span<const double> values, const NodeSet& nodes);

/// Piecewise polynomial psi with breakpoints at the nodes such that
///   [t_1..t_{n+1}] f = (1/n!) * integral f^{(n)}(s) psi(s) ds.
/// Piece k lives on [t_k, t_{k+1}] and is stored in the local variable
/// u = s - t_k. psi is the normalized B-spline of order n on the nodes.
class PeanoKernel {
public:
    const NodeSet& nodes() const { return nodes_; }
    int order() const { return nodes_.order(); }
    const std::vector<Polynomial>& pieces() const { return pieces_; }

    /// 0 outside [t_1, t_{n+1}].
    double operator()(double s) const;
    /// d-th derivative of the piece owning s, taken from the left or right.
    double derivative(double s, int d, bool from_left) const;

    /// Exact piecewise integral of g(s) psi(s).
    double integrate_against(const Polynomial& g) const;
    double integral() const { return integrate_against(Polynomial::constant(1.0)); }

private:
    friend PeanoKernel peano_kernel(const NodeSet& nodes);
    explicit PeanoKernel(NodeSet nodes) : nodes_(std::move(nodes)) {}

    NodeSet nodes_;
    std::vector<Polynomial> pieces_;
};

/// Builds psi from the truncated-power sum
///   psi(s) = sum over t_i > s of n (t_i - s)^{n-1} / prod_{j != i}(t_i - t_j).
/// The full sum over all i vanishes identically, so on each piece the
/// shorter of the two equivalent sums (nodes right of s, or minus the
/// nodes left of s) is expanded. Requires at least two nodes.
PeanoKernel peano_kernel(const NodeSet& nodes);

/// |[t] f - (1/n!) integral f^{(n)} psi|.
double kernel_identity_residual(const Polynomial& f, const NodeSet& nodes);
double kernel_identity_residual(const Polynomial& f, const PeanoKernel& psi);

}  // namespace polylb
