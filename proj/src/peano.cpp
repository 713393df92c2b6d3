#include "polylb/peano.hpp"

#include <algorithm>
#include <cmath>

namespace polylb {

NodeSet::NodeSet(std::vector<double> nodes) : t_(std::move(nodes)) {
    if (t_.empty()) throw Error("node set is empty");
    for (double t : t_)
        if (!std::isfinite(t)) throw Error("nodes must be finite");
    std::sort(t_.begin(), t_.end());
    for (std::size_t i = 1; i < t_.size(); ++i)
        if (t_[i] == t_[i - 1]) throw Error("nodes must be distinct");
}

double vandermonde(std::span<const double> points) {
    double v = 1.0;
    for (std::size_t j = 1; j < points.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) v *= points[j] - points[i];
    return v;
}

double divided_difference(std::span<const double> values, const NodeSet& nodes) {
    const auto& t = nodes.nodes();
    if (values.size() != t.size()) throw Error("divided_difference: value/node count mismatch");
    std::vector<double> v(values.begin(), values.end());
    const std::size_t n = t.size() - 1;
    for (std::size_t level = 1; level <= n; ++level)
        for (std::size_t i = n; i >= level; --i) v[i] = (v[i] - v[i - 1]) / (t[i] - t[i - level]);
    return v[n];
}

double divided_difference_vandermonde(std::span<const double> values, const NodeSet& nodes) {
    const auto& t = nodes.nodes();
    if (values.size() != t.size()) throw Error("divided_difference: value/node count mismatch");
    const int n = nodes.order();
    const double full = vandermonde(t);
    double sum = 0.0;
    std::vector<double> rest;
    for (int i = 0; i <= n; ++i) {
        rest.clear();
        for (int j = 0; j <= n; ++j)
            if (j != i) rest.push_back(t[j]);
        // 1-based index i+1: sign (-1)^{n+1-(i+1)} = (-1)^{n-i}
        const double sgn = ((n - i) % 2 == 0) ? 1.0 : -1.0;
        sum += sgn * values[i] * vandermonde(rest);
    }
    return sum / full;
}

namespace {

double binomial(int m, int r) {
    double b = 1.0;
    for (int q = 1; q <= r; ++q) b = b * (m - r + q) / q;
    return b;
}

// (d - u)^m expanded in u.
Polynomial power_of_offset(double d, int m) {
    std::vector<double> c(static_cast<std::size_t>(m) + 1);
    for (int r = 0; r <= m; ++r) c[r] = binomial(m, r) * std::pow(d, m - r) * ((r % 2) ? -1.0 : 1.0);
    return Polynomial(std::move(c));
}

}  // namespace

PeanoKernel peano_kernel(const NodeSet& nodes) {
    const int n = nodes.order();
    if (n < 1) throw Error("Peano kernel needs at least two nodes");
    const auto& t = nodes.nodes();

    std::vector<double> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        double prod = 1.0;
        for (int j = 0; j <= n; ++j)
            if (j != i) prod *= t[i] - t[j];
        c[i] = n / prod;
    }

    PeanoKernel psi(nodes);
    for (int k = 0; k < n; ++k) {
        const double h = t[k + 1] - t[k];
        auto weight = [&](int i) {
            const double d = t[i] - t[k];
            return std::abs(c[i]) * std::pow(std::max(std::abs(d), std::abs(d - h)), n - 1);
        };
        double right_size = 0.0, left_size = 0.0;
        for (int i = k + 1; i <= n; ++i) right_size += weight(i);
        for (int i = 0; i <= k; ++i) left_size += weight(i);

        Polynomial piece;
        if (right_size <= left_size) {
            for (int i = k + 1; i <= n; ++i) piece += c[i] * power_of_offset(t[i] - t[k], n - 1);
        } else {
            for (int i = 0; i <= k; ++i) piece -= c[i] * power_of_offset(t[i] - t[k], n - 1);
        }
        psi.pieces_.push_back(std::move(piece));
    }
    return psi;
}

double PeanoKernel::operator()(double s) const {
    const auto& t = nodes_.nodes();
    if (s < t.front() || s > t.back()) return 0.0;
    auto it = std::upper_bound(t.begin(), t.end(), s);
    std::size_t k = static_cast<std::size_t>(it - t.begin());
    k = std::clamp<std::size_t>(k, 1, pieces_.size()) - 1;
    return pieces_[k](s - t[k]);
}

double PeanoKernel::derivative(double s, int d, bool from_left) const {
    const auto& t = nodes_.nodes();
    if (s < t.front() || s > t.back()) return 0.0;
    std::size_t k;
    if (from_left) {
        auto it = std::lower_bound(t.begin(), t.end(), s);
        k = static_cast<std::size_t>(it - t.begin());
        if (k == 0) return 0.0;
        k -= 1;
    } else {
        auto it = std::upper_bound(t.begin(), t.end(), s);
        k = static_cast<std::size_t>(it - t.begin());
        if (k > pieces_.size()) return 0.0;
        k -= 1;
    }
    return pieces_[k].derivative(d)(s - t[k]);
}

double PeanoKernel::integrate_against(const Polynomial& g) const {
    const auto& t = nodes_.nodes();
    double total = 0.0;
    for (std::size_t k = 0; k < pieces_.size(); ++k)
        total += (g.shifted(t[k]) * pieces_[k]).integrate(0.0, t[k + 1] - t[k]);
    return total;
}

double kernel_identity_residual(const Polynomial& f, const PeanoKernel& psi) {
    const int n = psi.order();
    const double dd = divided_difference(f, psi.nodes());
    double factorial = 1.0;
    for (int q = 2; q <= n; ++q) factorial *= q;
    return std::abs(dd - psi.integrate_against(f.derivative(n)) / factorial);
}

double kernel_identity_residual(const Polynomial& f, const NodeSet& nodes) {
    return kernel_identity_residual(f, peano_kernel(nodes));
}

}  // namespace polylb
