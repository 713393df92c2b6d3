#include "polylb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polylb/oracle.hpp"
#include "polylb/rng.hpp"

namespace polylb {

std::string to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::theorem0: return "theorem0";
        case CertificateKind::theorem1: return "theorem1";
        case CertificateKind::theorem2: return "theorem2";
        case CertificateKind::corollary: return "corollary";
    }
    return "theorem0";
}

CertificateKind certificate_kind_from_string(const std::string& s) {
    if (s == "theorem0") return CertificateKind::theorem0;
    if (s == "theorem1") return CertificateKind::theorem1;
    if (s == "theorem2") return CertificateKind::theorem2;
    if (s == "corollary") return CertificateKind::corollary;
    throw Error("unknown certificate kind: " + s);
}

double Certificate::constant_for(int j) const {
    for (std::size_t i = 0; i < j_range.size(); ++i)
        if (j_range[i] == j) return constants.at(i);
    throw Error("certificate does not cover j = " + std::to_string(j));
}

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

void finish(Certificate& c) {
    c.constant = c.constants.empty() ? 0.0 : *std::min_element(c.constants.begin(), c.constants.end());
}

void record_oracle(Certificate& c, const RatioResult& r, double& worst) {
    c.oracle.samples = r.samples;
    if (r.min_ratio < worst) {
        worst = r.min_ratio;
        c.oracle.witness = r.witness;
    }
}

Interval heaviest_component(const ProbMeasure& mu, const RealSet& E) {
    Interval best = E.parts().front();
    double best_mass = -1.0;
    for (const auto& p : E.parts()) {
        const double m = mass(mu, p);
        if (m > best_mass) {
            best_mass = m;
            best = p;
        }
    }
    return best;
}

// j = 0..n certificate on a single interval with the given scale.
void certify_indices(Certificate& c, const OracleBudget& oracle) {
    c.oracle.seed = oracle.seed;
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= c.n; ++j) {
        if (j >= 1 && !(c.scale > 0.0)) continue;
        RatioProblem prob;
        prob.K = c.K;
        prob.mu = c.mu;
        prob.region = c.region;
        prob.n = c.n;
        prob.j = j;
        prob.scale = c.scale;
        const auto r = certify_ratio(prob, oracle.samples, derive_seed(oracle.seed, static_cast<std::uint64_t>(j)));
        c.j_range.push_back(j);
        c.constants.push_back(r.min_ratio);
        record_oracle(c, r, worst);
    }
    finish(c);
}

}  // namespace

PolyTypeWitness make_poly_type_witness(const Polynomial& f, int n, const Interval& hull,
                                       const RealSet& keps) {
    const Polynomial g = f.derivative(n);
    if (g.is_zero()) throw Error("f^{(n)} vanishes identically");
    for (double r : real_roots(g, hull.lo, hull.hi))
        if (r > hull.lo && r < hull.hi) throw Error("f^{(n)} changes sign on the hull");
    const double inf = poly_inf_abs(g, keps);
    if (!(inf > 0.0)) throw Error("f^{(n)} vanishes on K_eps");
    PolyTypeWitness w;
    w.f = f;
    w.n = n;
    w.sign = g(0.5 * (hull.lo + hull.hi)) >= 0.0 ? 1 : -1;
    w.constant_C = poly_sup(g, hull).first / inf;
    return w;
}

Theorem1Bound theorem1_bound(const ProbMeasure& mu, const RealSet& K, int n, const PolyTypeWitness& f,
                             const MCBudget& mc) {
    Theorem1Bound b;
    b.ell = ell_n(mu, n, mc);
    b.lhs = integrate_abs(f.f, mu);
    b.rhs = std::pow(b.ell.value, n) / factorial(n + 1) * poly_inf_abs(f.f, K.hull(), n);
    return b;
}

Certificate theorem1_certificate(const ProbMeasure& mu, const RealSet& K, int n, double eps,
                                 const OracleBudget& oracle, int extra_degree) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error("theorem1 requires 0 < eps < 1");
    Certificate c;
    c.kind = CertificateKind::theorem1;
    c.n = n;
    c.eps = eps;
    c.mu = mu;
    c.K = K;
    c.region = RealSet::single(K.hull());
    c.keps = k_epsilon(K, K.hull(), eps);
    c.length = length_n_eps(mu, n, eps).value;
    c.extra_degree = extra_degree;
    c.j_range = {n};
    c.oracle.seed = oracle.seed;
    c.oracle.samples = oracle.samples;

    if (!(c.length > 0.0)) {
        // The right side vanishes; every positive constant holds.
        c.constants = {1.0};
        finish(c);
        return c;
    }

    Interval h = mu.hull();
    h.lo = std::min(h.lo, K.hull().lo);
    h.hi = std::max(h.hi, K.hull().hi);
    const UnitChart chart = UnitChart::of(h);
    const double a = 1.0 / chart.len;
    const double b = -chart.lo / chart.len;
    Certificate u = c;
    u.mu = mu.affine(a, b);
    u.K = K.affine(a, b);
    u.keps = c.keps.affine(a, b);
    u.length = c.length * a;

    const kernels::ObjectiveFn f = [&u, n](std::span<const double> q) {
        const double r = certificate_ratio(u, Polynomial(std::vector<double>(q.begin(), q.end())), n);
        return std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
    };
    const SphereMinimum m = sphere_minimize(n + 1 + extra_degree, f, oracle.samples, oracle.seed);
    if (!std::isfinite(m.value)) throw Error("theorem1: no admissible polynomial found");
    c.constants = {m.value};
    c.oracle.witness = chart.to_world(m.point);
    finish(c);
    return c;
}

GapRule close_gap_rule(std::span<const double> s) {
    const int w = static_cast<int>(s.size());
    if (w < 2) throw Error("close_gap_rule needs at least two points");
    GapRule rule;
    if (w == 2) {
        rule.k = 1;
        rule.closed = {s[0], s[1]};
        return rule;
    }
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k + 1 < w; ++k) {
        double prod = 1.0;
        for (int i = 0; i < w; ++i)
            if (i != k) prod *= std::abs(s[k] - s[i]);
        if (prod < best) {
            best = prod;
            rule.k = k;
        }
    }
    const int k = rule.k;
    if (s[k] - s[k - 1] <= s[k + 1] - s[k])
        rule.closed = {s[k - 1], s[k]};
    else
        rule.closed = {s[k], s[k + 1]};
    return rule;
}

RealSet close_gaps_blocks(std::span<const Interval> blocks, int n) {
    if (n < 1) throw Error("close_gaps requires n >= 1");
    std::vector<Interval> comps = RealSet::normalize(blocks).parts();
    if (comps.empty()) return {};
    if (n == 1) return RealSet::single(RealSet::normalize(comps).hull());

    while (static_cast<int>(comps.size()) > n) {
        std::vector<double> ends;
        for (const auto& c : comps) ends.push_back(c.hi);
        double best_len = std::numeric_limits<double>::infinity();
        Interval best;
        for (std::size_t w = 0; w + n + 1 <= ends.size(); ++w) {
            const auto rule = close_gap_rule(std::span<const double>(ends).subspan(w, n + 1));
            if (rule.closed.length() < best_len) {
                best_len = rule.closed.length();
                best = rule.closed;
            }
        }
        std::vector<Interval> next;
        for (const auto& c : comps) {
            if (!next.empty() && best.lo <= next.back().hi && c.lo <= best.hi)
                next.back().hi = c.hi;
            else
                next.push_back(c);
        }
        comps = std::move(next);
    }
    return RealSet::normalize(comps);
}

RealSet close_gaps(std::span<const double> points, int n) {
    std::vector<Interval> blocks;
    for (double t : points) blocks.push_back({t, t});
    return close_gaps_blocks(blocks, n);
}

Theorem2Construction theorem2_construction(const ProbMeasure& mu, int n, double eps, const MCBudget& mc) {
    if (n < 1) throw Error("theorem2 requires n >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw Error("theorem2 requires 0 < eps < 1");
    Theorem2Construction out;
    out.eps_prime = 1.0 - std::pow(1.0 - eps, 1.0 / n);
    if (mu.is_atomic() && static_cast<int>(mu.atoms().size()) <= n) {
        for (const auto& a : mu.atoms()) out.leaves.push_back({{a.point, a.point}, a.weight});
        out.E = mu.support();
        return out;
    }
    out.tree = children_tree(mu, n, out.eps_prime, mc);
    out.leaves = out.tree.leaves();
    std::vector<Interval> blocks;
    for (const auto& l : out.leaves) blocks.push_back(l.interval);
    out.E = close_gaps_blocks(blocks, n);
    return out;
}

Certificate theorem2_set(const ProbMeasure& mu, const RealSet& K, int n, double eps,
                         const OracleBudget& oracle, const MCBudget& mc) {
    const auto con = theorem2_construction(mu, n, eps, mc);
    Certificate c;
    c.kind = CertificateKind::theorem2;
    c.n = n;
    c.eps = eps;
    c.mu = mu;
    c.K = K.empty() ? mu.support() : K;
    c.region = con.E;
    c.scale = 1.0;
    c.oracle.seed = oracle.seed;
    RatioProblem prob{c.K, mu, c.region, n, 0, 1.0};
    const auto r = certify_ratio(prob, oracle.samples, oracle.seed);
    c.j_range = {0};
    c.constants = {r.min_ratio};
    c.oracle.samples = r.samples;
    c.oracle.witness = r.witness;
    finish(c);
    return c;
}

Certificate corollary_interval(const ProbMeasure& mu, const RealSet& K, int n, double eps,
                               const OracleBudget& oracle, const MCBudget& mc) {
    const auto con = theorem2_construction(mu, n, eps, mc);
    Certificate c;
    c.kind = CertificateKind::corollary;
    c.n = n;
    c.eps = eps;
    c.mu = mu;
    c.K = K.empty() ? mu.support() : K;
    const Interval Ip = heaviest_component(mu, con.E);
    c.region = RealSet::single(Ip);
    c.length = length_n_eps(mu, n, eps).value;
    c.scale = std::min(Ip.length(), c.length);
    certify_indices(c, oracle);
    return c;
}

Certificate theorem0_pipeline(const RealSet& K, int n, double eps, const OracleBudget& oracle,
                              const MCBudget& mc) {
    if (!(K.measure() > 0.0)) throw Error("theorem0 requires |K| > 0");
    const ProbMeasure mu = ProbMeasure::uniform(K);
    const auto con = theorem2_construction(mu, n, eps, mc);
    Certificate c;
    c.kind = CertificateKind::theorem0;
    c.n = n;
    c.eps = eps;
    c.mu = mu;
    c.K = K;
    c.region = RealSet::single(heaviest_component(mu, con.E));
    c.length = length_n_eps(mu, n, eps).value;
    c.scale = K.measure();
    certify_indices(c, oracle);
    return c;
}

Theorem2Selection theorem2_selection(std::span<const Interval> chain, const Polynomial& f) {
    if (chain.empty()) throw Error("theorem2_selection needs a chain");
    const int n = static_cast<int>(chain.size()) - 1;
    const double c = 1.0 / std::log(1.5);
    Theorem2Selection sel;
    double best = -1.0;
    for (int j = 0; j <= n; ++j) {
        const double len = chain[j == 0 ? 0 : j - 1].length();
        const double score = std::pow(c * len, j) * poly_sup(f, chain[j], j).first;
        sel.scores.push_back(score);
        if (score >= best) {
            best = score;
            sel.j = j;
        }
    }
    return sel;
}

namespace {

void collect_chains(const ChildrenTree& node, std::vector<Interval>& above,
                    std::vector<std::vector<Interval>>& out) {
    above.push_back(node.interval);
    if (node.order == 1) {
        for (const auto& ch : node.decomposition.children) {
            std::vector<Interval> chain{ch.interval};
            chain.insert(chain.end(), above.rbegin(), above.rend());
            out.push_back(std::move(chain));
        }
    } else {
        for (const auto& s : node.subtrees) collect_chains(s, above, out);
    }
    above.pop_back();
}

}  // namespace

std::vector<std::vector<Interval>> leaf_chains(const ChildrenTree& tree) {
    std::vector<std::vector<Interval>> out;
    std::vector<Interval> above;
    collect_chains(tree, above, out);
    return out;
}

RecenterBound recenter_bound(const Polynomial& f, const Interval& Iprime, double ell, int n) {
    RecenterBound b;
    const double sup0 = poly_sup(f, Iprime, 0).first;
    const double supn = poly_sup(f, Iprime, n).first;
    for (int j = 0; j <= n; ++j) {
        const double w = std::min(std::pow(Iprime.length(), j), std::pow(ell, j));
        b.lhs.push_back(w * poly_sup(f, Iprime, j).first);
        b.rhs.push_back(sup0 + std::pow(ell, n) * supn);
    }
    return b;
}

double recenter_constant(int n, double rho, const OracleBudget& oracle) {
    if (n < 0 || !(rho >= 0.0)) throw Error("recenter_constant requires n >= 0 and rho >= 0");
    const Interval unit{0.0, 1.0};
    const kernels::ObjectiveFn f = [&](std::span<const double> q) {
        const auto b = recenter_bound(Polynomial(std::vector<double>(q.begin(), q.end())), unit, rho, n);
        double r = std::numeric_limits<double>::infinity();
        for (int j = 0; j <= n; ++j)
            if (b.lhs[j] > 0.0) r = std::min(r, b.rhs[j] / b.lhs[j]);
        return r;
    };
    const SphereMinimum m = sphere_minimize(n + 1, f, oracle.samples, oracle.seed);
    return std::isfinite(m.value) && m.value > 0.0 ? 1.0 / m.value : std::numeric_limits<double>::infinity();
}

}  // namespace polylb
