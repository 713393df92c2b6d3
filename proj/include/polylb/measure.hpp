#pragma once

#include <variant>
#include <vector>

#include "polylb/polynomial.hpp"
#include "polylb/realset.hpp"

namespace polylb {

struct Atom {
    double point = 0.0;
    double weight = 0.0;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Probability measure on the line: normalized Lebesgue measure on a
/// RealSet of positive measure, or a finite atomic measure with strictly
/// increasing points and positive weights summing to one.
class ProbMeasure {
public:
    struct Uniform {
        RealSet support;
        friend bool operator==(const Uniform&, const Uniform&) = default;
    };
    struct Atomic {
        std::vector<Atom> atoms;
        friend bool operator==(const Atomic&, const Atomic&) = default;
    };

    static ProbMeasure uniform(RealSet support);
    /// Atoms are sorted; equal points are merged. Weights must be positive
    /// and sum to one within 1e-12.
    static ProbMeasure atomic(std::vector<Atom> atoms);
    /// As atomic(), but rescales the weights to sum to one first.
    static ProbMeasure atomic_normalized(std::vector<Atom> atoms);

    bool is_uniform() const { return std::holds_alternative<Uniform>(kind_); }
    bool is_atomic() const { return std::holds_alternative<Atomic>(kind_); }
    const RealSet& support_set() const { return std::get<Uniform>(kind_).support; }
    const std::vector<Atom>& atoms() const { return std::get<Atomic>(kind_).atoms; }

    /// Smallest closed set carrying the mass (atoms become point intervals).
    RealSet support() const;
    Interval hull() const { return support().hull(); }

    /// Smallest x with mu((-inf, x]) >= q, q in [0, 1].
    double quantile(double q) const;

    /// Image under t -> scale * t + shift.
    ProbMeasure affine(double scale, double shift) const;

    friend bool operator==(const ProbMeasure&, const ProbMeasure&) = default;

private:
    explicit ProbMeasure(std::variant<Uniform, Atomic> k) : kind_(std::move(k)) {}
    std::variant<Uniform, Atomic> kind_;
};

double mass(const ProbMeasure& mu, const RealSet& S);
double mass(const ProbMeasure& mu, const Interval& I);

/// mu restricted to I and renormalized. Throws when mu(I) == 0.
ProbMeasure restrict(const ProbMeasure& mu, const Interval& I);

/// Integral of |p| against mu; exact for both kinds.
double integrate_abs(const Polynomial& p, const ProbMeasure& mu);

/// Smallest closed interval containing mu's mass inside I, if any.
bool support_hull_within(const ProbMeasure& mu, const Interval& I, Interval& out);

struct LengthResult {
    double value = 0.0;
    std::vector<Interval> witness;
};

/// |mu|_{n,eps}: least total length of at most n closed intervals carrying
/// mass at least 1 - eps. Exact for both kinds (see measure.cpp).
LengthResult length_n_eps(const ProbMeasure& mu, int n, double eps);

}  // namespace polylb
