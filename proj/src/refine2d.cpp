#include "polylb/refine2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "polylb/kernels.hpp"
#include "polylb/rng.hpp"

namespace polylb {

double PlaneRegion::area() const {
    double a = 0.0;
    for (const auto& c : columns) a += c.dx * c.fiber.measure();
    return a;
}

double PlaneRegion::width() const {
    double w = 0.0;
    for (const auto& c : columns)
        if (!c.fiber.empty()) w += c.dx;
    return w;
}

RefinementResult refine(const PlaneRegion& omega, int n, double eps, const OracleBudget& oracle,
                        const MCBudget& mc) {
    for (const auto& c : omega.columns)
        if (!(c.dx > 0.0)) throw Error("refine: column widths must be positive");
    const double area = omega.area();
    if (!(area > 0.0)) throw Error("refine requires positive area");

    RefinementResult res;
    res.n = n;
    res.eps = eps;
    res.original = omega;
    res.c_mass = res.keep_fraction * (1.0 - eps) / n;
    const double threshold = res.keep_fraction * area / omega.width();

    const auto m = static_cast<std::int64_t>(omega.columns.size());
    res.per_column.resize(omega.columns.size());
    std::vector<RealSet> fibers(omega.columns.size());
    std::vector<std::string> errors(omega.columns.size());

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < m; ++i) {
        const auto& col = omega.columns[i];
        auto& pc = res.per_column[i];
        pc.column = static_cast<std::size_t>(i);
        if (col.fiber.measure() < threshold) continue;
        try {
            OracleBudget ob{oracle.samples, derive_seed(oracle.seed, static_cast<std::uint64_t>(i))};
            const Certificate cert = theorem0_pipeline(col.fiber, n, eps, ob, mc);
            pc.kept = true;
            pc.interval = cert.region.hull();
            pc.constants = cert.constants;
            fibers[i] = col.fiber.intersect(pc.interval);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw Error("refine: " + e);

    res.c_ineq = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < omega.columns.size(); ++i) {
        const auto& pc = res.per_column[i];
        if (!pc.kept) continue;
        res.refined.columns.push_back({omega.columns[i].x0, omega.columns[i].dx, fibers[i]});
        for (double c : pc.constants) res.c_ineq = std::min(res.c_ineq, c);
    }
    if (res.refined.columns.empty()) res.c_ineq = 0.0;
    return res;
}

namespace {

double sample_in(const RealSet& S, CounterRng& rng) {
    const double total = S.measure();
    if (total > 0.0) {
        double u = rng.uniform() * total;
        for (const auto& p : S.parts()) {
            if (u <= p.length()) return p.lo + u;
            u -= p.length();
        }
        return S.parts().back().hi;
    }
    const auto k = static_cast<std::size_t>(rng.uniform() * static_cast<double>(S.size()));
    return S.parts()[std::min(k, S.size() - 1)].lo;
}

RealSet outside(const RealSet& fiber, const Interval& I) {
    const Interval h = fiber.hull();
    RealSet below = I.lo > h.lo ? fiber.intersect(Interval{h.lo, I.lo}) : RealSet{};
    RealSet above = I.hi < h.hi ? fiber.intersect(Interval{I.hi, h.hi}) : RealSet{};
    RealSet out = below.unite(above);
    return out.measure() > 0.0 ? out : RealSet{};
}

struct Draw {
    std::size_t column;
    double s;
    Polynomial f;
};

// Relative slack of the re-centred inequality at s.
double intest_slack(const RealSet& K, const std::vector<double>& c, const Polynomial& f, double s) {
    const double lhs = integrate_abs(f, K.affine(1.0, -s));
    const double len = K.measure();
    double rhs = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j)
        rhs = std::max(rhs, c[j] * std::pow(len, static_cast<double>(j) + 1.0) *
                                std::abs(f.derivative(static_cast<int>(j))(0.0)));
    if (!(rhs > 0.0)) return std::nan("");
    return lhs / rhs - 1.0;
}

}  // namespace

IntestReport validate_intest(const RefinementResult& result, std::int64_t trials, std::uint64_t seed) {
    IntestReport rep;
    rep.trials = trials;
    std::vector<std::size_t> usable;
    std::vector<RealSet> refined_fiber(result.per_column.size());
    std::vector<RealSet> negative_fiber(result.per_column.size());
    {
        std::size_t r = 0;
        for (std::size_t i = 0; i < result.per_column.size(); ++i) {
            const auto& pc = result.per_column[i];
            if (!pc.kept) continue;
            refined_fiber[i] = result.refined.columns[r++].fiber;
            negative_fiber[i] = outside(result.original.columns[i].fiber, pc.interval);
            if (!refined_fiber[i].empty()) usable.push_back(i);
        }
    }
    if (trials <= 0 || usable.empty()) return rep;

    const int n = result.n;
    auto draw = [&](std::int64_t t) {
        CounterRng rng(seed, static_cast<std::uint64_t>(t));
        const auto k = static_cast<std::size_t>(rng.uniform() * static_cast<double>(usable.size()));
        const std::size_t col = usable[std::min(k, usable.size() - 1)];
        const double len = result.original.columns[col].fiber.measure();
        std::vector<double> q(n + 1);
        for (int i = 0; i <= n; ++i) q[i] = rng.normal() / std::pow(len, i);
        return Draw{col, 0.0, Polynomial(q)};
    };

    const auto pos = kernels::evaluate_batch(trials, 1e-9, [&](std::int64_t t) {
        Draw d = draw(t);
        CounterRng rng(derive_seed(seed, 1), static_cast<std::uint64_t>(t));
        d.s = sample_in(refined_fiber[d.column], rng);
        return intest_slack(result.original.columns[d.column].fiber, result.per_column[d.column].constants,
                            d.f, d.s);
    });
    rep.checked = pos.checked;
    rep.violations = pos.violations;
    rep.min_slack = pos.min_slack;

    const auto neg = kernels::evaluate_batch(trials, 1e-9, [&](std::int64_t t) {
        Draw d = draw(t);
        if (negative_fiber[d.column].empty()) return std::nan("");
        CounterRng rng(derive_seed(seed, 2), static_cast<std::uint64_t>(t));
        d.s = sample_in(negative_fiber[d.column], rng);
        return intest_slack(result.original.columns[d.column].fiber, result.per_column[d.column].constants,
                            d.f, d.s);
    });
    rep.negative_checked = neg.checked;
    rep.negative_violations = neg.violations;
    return rep;
}

void write_refinement_csv(std::ostream& os, const RefinementResult& result) {
    os << "x0,dx,kept,fiber_measure,refined_measure,interval_lo,interval_hi\n";
    std::size_t r = 0;
    for (std::size_t i = 0; i < result.per_column.size(); ++i) {
        const auto& col = result.original.columns[i];
        const auto& pc = result.per_column[i];
        double refined = 0.0;
        if (pc.kept) refined = result.refined.columns[r++].fiber.measure();
        os << col.x0 << ',' << col.dx << ',' << (pc.kept ? 1 : 0) << ',' << col.fiber.measure() << ','
           << refined << ',';
        if (pc.kept)
            os << pc.interval.lo << ',' << pc.interval.hi << '\n';
        else
            os << ",\n";
    }
}

}  // namespace polylb
