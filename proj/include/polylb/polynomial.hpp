#pragma once

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "polylb/realset.hpp"

namespace polylb {

/// Largest degree accepted from callers (test functions, kernels, CLI input).
inline constexpr int kMaxDegree = 12;

/// Real polynomial with ascending coefficients; trailing zeros are trimmed,
/// so the zero polynomial has no coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);
    Polynomial(std::initializer_list<double> coeffs)
        : Polynomial(std::vector<double>(coeffs)) {}

    static Polynomial constant(double c) { return Polynomial({c}); }
    static Polynomial monomial(int k, double c = 1.0);
    static Polynomial from_roots(std::span<const double> roots, double leading = 1.0);

    const std::vector<double>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    double coeff(int k) const { return k >= 0 && k <= degree() ? c_[k] : 0.0; }
    double leading() const { return c_.empty() ? 0.0 : c_.back(); }

    double operator()(double t) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    Polynomial derivative(int order = 1) const;
    /// Antiderivative vanishing at 0.
    Polynomial antiderivative() const;
    /// q(u) = p(u + a).
    Polynomial shifted(double a) const;
    /// q(u) = p(scale * u + shift).
    Polynomial composed_affine(double scale, double shift) const;

    double integrate(double a, double b) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(double s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();
    std::vector<double> c_;
};

/// Sign-changing real roots of p inside [lo, hi], ascending. Roots are
/// isolated recursively: the critical points of p split [lo, hi] into
/// monotone branches, and each branch with a sign change is bisected to
/// full double precision. Even-multiplicity roots are reported only when
/// p evaluates to exactly zero there.
std::vector<double> real_roots(const Polynomial& p, double lo, double hi);

/// All sign-changing real roots, bracketed by the Cauchy bound.
std::vector<double> real_roots(const Polynomial& p);

double cauchy_bound(const Polynomial& p);

/// sup over I of |p^{(j)}| and the leftmost point attaining it.
std::pair<double, double> poly_sup(const Polynomial& p, const Interval& I, int j = 0);
double poly_sup(const Polynomial& p, const RealSet& S, int j = 0);

/// inf over I of |p^{(j)}| (0 when p^{(j)} vanishes somewhere on I).
double poly_inf_abs(const Polynomial& p, const Interval& I, int j = 0);
double poly_inf_abs(const Polynomial& p, const RealSet& S, int j = 0);

/// Exact integral of |p| over [a, b], splitting at the sign changes.
double integrate_abs(const Polynomial& p, double a, double b);
double integrate_abs(const Polynomial& p, const RealSet& S);

}  // namespace polylb
