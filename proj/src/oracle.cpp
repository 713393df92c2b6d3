#include "polylb/oracle.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "polylb/bounds.hpp"
#include "polylb/rng.hpp"

namespace polylb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kValidationTol = 1e-9;

Interval common_hull(const RealSet& K, const RealSet& region, const ProbMeasure& mu) {
    Interval h = mu.hull();
    for (const RealSet* s : {&K, &region}) {
        if (s->empty()) continue;
        const Interval t = s->hull();
        h.lo = std::min(h.lo, t.lo);
        h.hi = std::max(h.hi, t.hi);
    }
    return h;
}

struct PolishContext {
    const kernels::ObjectiveFn* f;
    std::vector<double> q;
    int fixed;
};

double polish_eval(const gsl_vector* x, void* params) {
    auto* ctx = static_cast<PolishContext*>(params);
    std::size_t k = 0;
    for (std::size_t i = 0; i < ctx->q.size(); ++i) {
        if (static_cast<int>(i) == ctx->fixed) continue;
        ctx->q[i] = gsl_vector_get(x, k++);
    }
    const double v = (*ctx->f)(ctx->q);
    return std::isfinite(v) ? v : 1e300;
}

// Nelder-Mead on the affine chart where the largest coordinate is 1.
SphereMinimum polish_point(const kernels::ObjectiveFn& f, std::vector<double> point, double value) {
    SphereMinimum out{value, point, 0};
    const int dim = static_cast<int>(point.size());
    if (dim < 2) return out;

    int fixed = 0;
    for (int i = 1; i < dim; ++i)
        if (std::abs(point[i]) > std::abs(point[fixed])) fixed = i;
    const double pivot = point[fixed];
    for (double& c : point) c /= pivot;

    PolishContext ctx{&f, point, fixed};
    gsl_multimin_function F;
    F.n = static_cast<std::size_t>(dim - 1);
    F.f = polish_eval;
    F.params = &ctx;

    gsl_vector* x = gsl_vector_alloc(F.n);
    gsl_vector* step = gsl_vector_alloc(F.n);
    std::size_t k = 0;
    for (int i = 0; i < dim; ++i) {
        if (i == fixed) continue;
        gsl_vector_set(x, k, point[i]);
        gsl_vector_set(step, k, 0.05);
        ++k;
    }
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, F.n);
    gsl_multimin_fminimizer_set(s, &F, x, step);

    int iter = 0;
    int status = GSL_CONTINUE;
    while (status == GSL_CONTINUE && iter < 4000) {
        ++iter;
        if (gsl_multimin_fminimizer_iterate(s)) break;
        status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-10);
    }
    out.refine_steps = iter;
    if (s->fval < value) {
        std::vector<double> q(dim);
        k = 0;
        for (int i = 0; i < dim; ++i) q[i] = i == fixed ? 1.0 : gsl_vector_get(s->x, k++);
        const double v = f(q);
        if (v < value) {
            double norm = 0.0;
            for (double c : q) norm += c * c;
            norm = std::sqrt(norm);
            for (double& c : q) c /= norm;
            out.value = f(q);
            out.point = std::move(q);
        }
    }
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(x);
    gsl_vector_free(step);
    return out;
}

RatioProblem to_chart(const RatioProblem& prob, const UnitChart& chart) {
    const double a = 1.0 / chart.len;
    const double b = -chart.lo / chart.len;
    RatioProblem u = prob;
    u.K = prob.K.affine(a, b);
    u.mu = prob.mu.affine(a, b);
    u.region = prob.region.affine(a, b);
    u.scale = prob.scale * a;
    return u;
}

bool derivative_changes_sign(const Polynomial& g, const Interval& hull) {
    if (g.is_zero()) return true;
    for (double r : real_roots(g, hull.lo, hull.hi))
        if (r > hull.lo && r < hull.hi) return true;
    return false;
}

}  // namespace

RatioProblem RatioProblem::lebesgue(RealSet K, RealSet region, int n, int j) {
    RatioProblem p;
    p.mu = ProbMeasure::uniform(K);
    p.scale = K.measure();
    p.K = std::move(K);
    p.region = std::move(region);
    p.n = n;
    p.j = j;
    return p;
}

double ratio_value(const RatioProblem& prob, const Polynomial& p) {
    double den = poly_sup(p, prob.region, prob.j);
    if (prob.j > 0) den *= std::pow(prob.scale, prob.j);
    if (!(den > 0.0)) return kInf;
    return integrate_abs(p, prob.mu) / den;
}

UnitChart UnitChart::of(const Interval& hull) {
    UnitChart c;
    c.lo = hull.lo;
    c.len = hull.length() > 0.0 ? hull.length() : 1.0;
    return c;
}

Polynomial UnitChart::to_world(std::span<const double> q) const {
    return Polynomial(std::vector<double>(q.begin(), q.end())).composed_affine(1.0 / len, -lo / len);
}

SphereMinimum sphere_minimize(int dim, const kernels::ObjectiveFn& f, std::int64_t budget,
                              std::uint64_t seed, int polish) {
    static const bool handler_off = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)handler_off;

    SphereMinimum best{kInf, {}, 0};
    const auto hits = kernels::sphere_scan(dim, budget, seed, f, polish);
    for (const auto& h : hits) {
        SphereMinimum m = polish_point(f, h.point, h.value);
        best.refine_steps += m.refine_steps;
        if (m.value < best.value) {
            best.value = m.value;
            best.point = std::move(m.point);
        }
    }
    return best;
}

RatioResult certify_ratio(const RatioProblem& prob, std::int64_t budget, std::uint64_t seed) {
    if (budget < 1) throw Error("certify_ratio requires a positive budget");
    if (prob.n < 0 || prob.j < 0 || prob.j > prob.n) throw Error("certify_ratio requires 0 <= j <= n");
    if (prob.region.empty()) throw Error("certify_ratio: empty region");

    const UnitChart chart = UnitChart::of(common_hull(prob.K, prob.region, prob.mu));
    const RatioProblem u = to_chart(prob, chart);
    const kernels::ObjectiveFn f = [&u](std::span<const double> q) {
        return ratio_value(u, Polynomial(std::vector<double>(q.begin(), q.end())));
    };
    const SphereMinimum m = sphere_minimize(prob.n + 1, f, budget, seed);
    if (!std::isfinite(m.value)) throw Error("certify_ratio: denominator vanishes for every sample");

    RatioResult r;
    r.min_ratio = m.value;
    r.witness = chart.to_world(m.point);
    r.samples = budget;
    r.seed = seed;
    r.refine_steps = m.refine_steps;
    return r;
}

double certificate_ratio(const Certificate& cert, const Polynomial& p, int j) {
    switch (cert.kind) {
        case CertificateKind::theorem1: {
            if (p.degree() > cert.n + cert.extra_degree) return std::nan("");
            const Polynomial g = p.derivative(cert.n);
            if (derivative_changes_sign(g, cert.K.hull())) return std::nan("");
            const double den = std::pow(cert.length, cert.n) * poly_inf_abs(g, cert.keps);
            if (!(den > 0.0)) return kInf;
            return integrate_abs(p, cert.mu) / den;
        }
        case CertificateKind::theorem2:
        case CertificateKind::theorem0:
        case CertificateKind::corollary: {
            if (p.degree() > cert.n) return std::nan("");
            RatioProblem prob;
            prob.mu = cert.mu;
            prob.region = cert.region;
            prob.n = cert.n;
            prob.j = j;
            prob.scale = cert.scale;
            return ratio_value(prob, p);
        }
    }
    return std::nan("");
}

ValidationReport validate_inequality(const Certificate& cert, std::int64_t trials, std::uint64_t seed) {
    ValidationReport rep;
    rep.trials = trials;
    if (trials <= 0) return rep;

    const UnitChart chart = UnitChart::of(common_hull(cert.K, cert.region, cert.mu));
    const int dim = cert.n + 1 + (cert.kind == CertificateKind::theorem1 ? cert.extra_degree : 0);
    const bool use_witness = !cert.oracle.witness.is_zero();

    auto poly_of = [&](std::int64_t i) {
        if (i == 0 && use_witness) return cert.oracle.witness;
        return chart.to_world(kernels::sphere_point(dim, seed, i));
    };
    auto slack_of = [&](std::int64_t i) {
        const Polynomial p = poly_of(i);
        double worst = std::nan("");
        for (std::size_t q = 0; q < cert.j_range.size(); ++q) {
            const double r = certificate_ratio(cert, p, cert.j_range[q]);
            if (std::isnan(r)) continue;
            const double s = r / cert.constants[q] - 1.0;
            if (std::isnan(worst) || s < worst) worst = s;
        }
        return worst;
    };

    const auto st = kernels::evaluate_batch(trials, kValidationTol, slack_of);
    rep.checked = st.checked;
    rep.violations = st.violations;
    rep.min_slack = st.min_slack;
    if (st.argmin >= 0) rep.worst = poly_of(st.argmin);
    return rep;
}

RealSet imbalanced_family_member(int n, int m) {
    if (n < 1 || m < 0) throw Error("imbalanced_family_member requires n >= 1, m >= 0");
    const double d = std::pow(4.0, -m);
    const double step = std::pow(2.0, m);
    std::vector<Interval> parts;
    for (int k = 0; k < n; ++k) parts.push_back({k * step, k * step + (1.0 - d) / n});
    parts.push_back({n * step, n * step + d});
    return RealSet::normalize(parts);
}

namespace {

// Smallest b with |K cap [a, b]| >= need, or NaN.
double reach_right(const RealSet& K, double a, double need) {
    double acc = 0.0;
    for (const auto& p : K.parts()) {
        if (p.hi < a) continue;
        const double lo = std::max(p.lo, a);
        const double len = p.hi - lo;
        if (acc + len >= need) return lo + (need - acc);
        acc += len;
    }
    return std::nan("");
}

// Largest b with |K cap [b, a]| >= need, or NaN.
double reach_left(const RealSet& K, double a, double need) {
    double acc = 0.0;
    const auto& parts = K.parts();
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        if (it->lo > a) continue;
        const double hi = std::min(it->hi, a);
        const double len = hi - it->lo;
        if (acc + len >= need) return hi - (need - acc);
        acc += len;
    }
    return std::nan("");
}

std::vector<Interval> eps0_candidates(const RealSet& K, int n) {
    if (n == 1) return {K.hull()};
    const double need = K.measure() / n;
    std::vector<Interval> out;
    for (const auto& p : K.parts()) {
        for (int i = 0; i <= 8; ++i) {
            const double a = p.lo + p.length() * i / 8.0;
            const double r = reach_right(K, a, need);
            if (!std::isnan(r)) out.push_back({a, r});
            const double l = reach_left(K, a, need);
            if (!std::isnan(l)) out.push_back({l, a});
        }
    }
    std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) {
        return x.lo != y.lo ? x.lo < y.lo : x.hi < y.hi;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

CounterexampleReport search_counterexample(int n, int family_size, std::uint64_t seed,
                                           std::int64_t budget, double pipeline_eps) {
    if (n < 1) throw Error("search_counterexample requires n >= 1");
    if (family_size < 1) throw Error("search_counterexample requires family_size >= 1");

    CounterexampleReport rep;
    rep.n = n;
    rep.pipeline_eps = pipeline_eps;
    rep.pipeline_min = kInf;
    for (int m = 1; m <= family_size; ++m) {
        CounterexampleRow row;
        row.m = m;
        row.K = imbalanced_family_member(n, m);
        const std::uint64_t row_seed = derive_seed(seed, static_cast<std::uint64_t>(m));

        const auto cands = eps0_candidates(row.K, n);
        row.candidates = static_cast<int>(cands.size());
        row.eps0_constant = -1.0;
        for (std::size_t c = 0; c < cands.size(); ++c) {
            const auto prob = RatioProblem::lebesgue(row.K, RealSet::single(cands[c]), n, 0);
            const double v = certify_ratio(prob, budget, derive_seed(row_seed, c + 1)).min_ratio;
            if (v > row.eps0_constant) {
                row.eps0_constant = v;
                row.eps0_interval = cands[c];
            }
        }

        const Certificate cert =
            theorem0_pipeline(row.K, n, pipeline_eps, OracleBudget{budget, derive_seed(row_seed, 0)});
        row.pipeline_constant = cert.constant_for(0);
        row.pipeline_interval = cert.region.hull();
        rep.pipeline_min = std::min(rep.pipeline_min, row.pipeline_constant);
        rep.rows.push_back(std::move(row));
    }
    rep.eps0_strictly_decreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (!(rep.rows[i].eps0_constant < rep.rows[i - 1].eps0_constant))
            rep.eps0_strictly_decreasing = false;
    return rep;
}

}  // namespace polylb
