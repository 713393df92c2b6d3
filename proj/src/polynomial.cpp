#include "polylb/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polylb {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

Polynomial Polynomial::monomial(int k, double c) {
    std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
    v[k] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const double> roots, double leading) {
    std::vector<double> v{leading};
    for (double r : roots) {
        std::vector<double> next(v.size() + 1, 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            next[i + 1] += v[i];
            next[i] -= r * v[i];
        }
        v = std::move(next);
    }
    return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative(int order) const {
    std::vector<double> v = c_;
    for (int o = 0; o < order && !v.empty(); ++o) {
        for (std::size_t i = 1; i < v.size(); ++i) v[i - 1] = v[i] * static_cast<double>(i);
        v.pop_back();
    }
    return Polynomial(std::move(v));
}

Polynomial Polynomial::antiderivative() const {
    if (c_.empty()) return {};
    std::vector<double> v(c_.size() + 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i + 1] = c_[i] / static_cast<double>(i + 1);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::shifted(double a) const {
    // Taylor shift by repeated synthetic division.
    std::vector<double> v = c_;
    const std::size_t n = v.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = n - 1; i > k; --i) v[i - 1] += a * v[i];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::composed_affine(double scale, double shift) const {
    std::vector<double> v = shifted(shift).c_;
    double f = 1.0;
    for (auto& x : v) {
        x *= f;
        f *= scale;
    }
    return Polynomial(std::move(v));
}

double Polynomial::integrate(double a, double b) const {
    const Polynomial P = antiderivative();
    return P(b) - P(a);
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> v(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t k = 0; k < b.c_.size(); ++k) v[i + k] += a.c_[i] * b.c_[k];
    return Polynomial(std::move(v));
}

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

double bisect(const Polynomial& p, double a, double b, int sa) {
    for (int it = 0; it < 2000; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const int sm = sign(p(m));
        if (sm == 0) return m;
        if (sm == sa) a = m; else b = m;
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<double> real_roots(const Polynomial& p, double lo, double hi) {
    std::vector<double> roots;
    if (p.degree() <= 0 || lo > hi) return roots;
    if (p.degree() == 1) {
        const double r = -p.coeff(0) / p.coeff(1);
        if (r >= lo && r <= hi) roots.push_back(r);
        return roots;
    }
    std::vector<double> cuts{lo};
    for (double c : real_roots(p.derivative(), lo, hi))
        if (c > cuts.back() && c < hi) cuts.push_back(c);
    if (hi > cuts.back()) cuts.push_back(hi);

    auto push = [&](double r) {
        if (roots.empty() || r > roots.back()) roots.push_back(r);
    };
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        const double a = cuts[k];
        const int sa = sign(p(a));
        if (sa == 0) {
            push(a);
            continue;
        }
        if (k + 1 == cuts.size()) break;
        const double b = cuts[k + 1];
        const int sb = sign(p(b));
        if (sb != 0 && sb != sa) push(bisect(p, a, b, sa));
    }
    return roots;
}

double cauchy_bound(const Polynomial& p) {
    if (p.degree() <= 0) return 0.0;
    double m = 0.0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, std::abs(p.coeff(i) / p.leading()));
    return 1.0 + m;
}

std::vector<double> real_roots(const Polynomial& p) {
    const double b = cauchy_bound(p);
    return real_roots(p, -b, b);
}

std::pair<double, double> poly_sup(const Polynomial& p, const Interval& I, int j) {
    const Polynomial q = p.derivative(j);
    double best = std::abs(q(I.lo));
    double arg = I.lo;
    if (I.is_point()) return {best, arg};
    auto consider = [&](double t) {
        const double v = std::abs(q(t));
        if (v > best) {
            best = v;
            arg = t;
        }
    };
    for (double c : real_roots(q.derivative(), I.lo, I.hi)) consider(c);
    consider(I.hi);
    return {best, arg};
}

double poly_sup(const Polynomial& p, const RealSet& S, int j) {
    double best = 0.0;
    for (const auto& part : S.parts()) best = std::max(best, poly_sup(p, part, j).first);
    return best;
}

double poly_inf_abs(const Polynomial& p, const Interval& I, int j) {
    const Polynomial q = p.derivative(j);
    if (q.is_zero()) return 0.0;
    double best = std::min(std::abs(q(I.lo)), std::abs(q(I.hi)));
    if (I.is_point() || best == 0.0) return best;
    if (sign(q(I.lo)) != sign(q(I.hi))) return 0.0;
    if (!real_roots(q, I.lo, I.hi).empty()) return 0.0;
    for (double c : real_roots(q.derivative(), I.lo, I.hi)) best = std::min(best, std::abs(q(c)));
    return best;
}

double poly_inf_abs(const Polynomial& p, const RealSet& S, int j) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& part : S.parts()) best = std::min(best, poly_inf_abs(p, part, j));
    return best;
}

double integrate_abs(const Polynomial& p, double a, double b) {
    if (b <= a || p.is_zero()) return 0.0;
    const Polynomial P = p.antiderivative();
    double total = 0.0;
    double prev = a;
    double Pprev = P(a);
    for (double r : real_roots(p, a, b)) {
        if (r <= prev) continue;
        const double Pr = P(r);
        total += std::abs(Pr - Pprev);
        prev = r;
        Pprev = Pr;
    }
    total += std::abs(P(b) - Pprev);
    return total;
}

double integrate_abs(const Polynomial& p, const RealSet& S) {
    double total = 0.0;
    for (const auto& part : S.parts()) total += integrate_abs(p, part.lo, part.hi);
    return total;
}

}  // namespace polylb
