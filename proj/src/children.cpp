#include "polylb/children.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "polylb/kernels.hpp"
#include "polylb/peano.hpp"
#include "polylb/rng.hpp"

namespace polylb {

namespace {

double binomial_capped(std::int64_t m, std::int64_t k, double cap) {
    if (k < 0 || k > m) return 0.0;
    double b = 1.0;
    for (std::int64_t q = 1; q <= k; ++q) {
        b = b * static_cast<double>(m - k + q) / static_cast<double>(q);
        if (b > cap) return b;
    }
    return b;
}

// Sum over size-k subsets S of the atoms of prod_{s in S} w_s * |V_k(S)|.
double subset_vandermonde_sum(const std::vector<Atom>& atoms, int k) {
    double total = 0.0;
    std::vector<double> chosen;
    std::function<void(std::size_t, double)> rec = [&](std::size_t start, double acc) {
        if (static_cast<int>(chosen.size()) == k) {
            total += acc;
            return;
        }
        const std::size_t need = static_cast<std::size_t>(k) - chosen.size();
        for (std::size_t i = start; i + need <= atoms.size(); ++i) {
            double f = atoms[i].weight;
            for (double c : chosen) f *= atoms[i].point - c;
            chosen.push_back(atoms[i].point);
            rec(i + 1, acc * f);
            chosen.pop_back();
        }
    };
    rec(0, 1.0);
    return total;
}

}  // namespace

EllEstimate ell_n(const ProbMeasure& mu, int n, const MCBudget& budget) {
    if (n < 1) throw Error("ell_n requires n >= 1");
    EllEstimate e;
    e.n = n;

    if (mu.is_atomic()) {
        const auto& atoms = mu.atoms();
        const auto m = static_cast<std::int64_t>(atoms.size());
        if (m <= n) {
            e.degenerate = m < n;
            return e;
        }
        const double limit = static_cast<double>(budget.exact_limit);
        if (binomial_capped(m, n + 1, limit) <= limit) {
            const double num = subset_vandermonde_sum(atoms, n + 1);
            const double den = subset_vandermonde_sum(atoms, n);
            // ordered tuples: (n+1)! and n! times the subset sums
            e.value = std::pow((n + 1) * num / den, 1.0 / n);
            return e;
        }
    }

    const auto mom = kernels::mc_vandermonde_moments(mu, n, budget.samples, budget.seed);
    e.method = EllEstimate::Method::montecarlo;
    e.samples = budget.samples;
    e.seed = budget.seed;
    if (!(mom.mean_den > 0.0)) {
        e.degenerate = true;
        return e;
    }
    const double r = mom.mean_num / mom.mean_den;
    if (!(r > 0.0)) return e;
    const double var_r =
        (mom.var_num - 2.0 * r * mom.cov + r * r * mom.var_den) / (mom.mean_den * mom.mean_den);
    const double se_r = std::sqrt(std::max(0.0, var_r) / static_cast<double>(mom.samples));
    e.value = std::pow(r, 1.0 / n);
    e.stderr_ = e.value * se_r / (n * r);
    return e;
}

double ChildrenDecomposition::total_mass() const {
    double m = 0.0;
    for (const auto& c : children) m += c.mass;
    return m;
}

double ChildrenDecomposition::total_length() const {
    double l = 0.0;
    for (const auto& c : children) l += c.interval.length();
    return l;
}

RealSet sublevel_set(const std::vector<double>& nodes, double threshold) {
    std::vector<Interval> pts;
    if (!(threshold > 0.0)) {
        for (double t : nodes) pts.push_back({t, t});
        return RealSet::normalize(pts);
    }
    const Polynomial P = Polynomial::from_roots(nodes);
    std::vector<double> cuts = real_roots(P - Polynomial::constant(threshold));
    for (double r : real_roots(P + Polynomial::constant(threshold))) cuts.push_back(r);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Interval> segs;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
        if (std::abs(P(mid)) <= threshold) segs.push_back({cuts[k], cuts[k + 1]});
    }
    // Nodes always belong to the set; keeps tangencies from losing them.
    for (double t : nodes) segs.push_back({t, t});
    return RealSet::normalize(segs);
}

ChildrenDecomposition decompose(const ProbMeasure& mu, int n, double eps, const MCBudget& budget) {
    if (n < 1) throw Error("decompose requires n >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw Error("decompose requires 0 < eps < 1");

    ChildrenDecomposition dec;
    dec.n = n;
    dec.eps = eps;
    dec.ell = ell_n(mu, n, budget);
    const double min_child = eps / (2.0 * n);

    if (!(dec.ell.value > 0.0)) {
        // mu sits on at most n points: those points are the children.
        for (const auto& p : mu.support().parts()) dec.nodes.push_back(p.lo);
        RealSet E = mu.support();
        dec.sublevel_mass = 1.0;
        dec.sublevel_components = static_cast<int>(E.size());
        for (const auto& p : E.parts()) {
            const double m = mass(mu, p);
            if (m >= min_child) dec.children.push_back({p, m});
        }
        return dec;
    }

    dec.threshold = 2.0 / eps * std::pow(dec.ell.value, n);
    const double target = 1.0 - eps / 2.0;

    constexpr int kGrid = 256;
    std::vector<double> grid;
    for (int q = 0; q <= kGrid; ++q) grid.push_back(mu.quantile(static_cast<double>(q) / kGrid));

    std::vector<double> nodes;
    for (int i = 1; i <= n; ++i) nodes.push_back(mu.quantile(static_cast<double>(i) / (n + 1)));

    auto coverage = [&](const std::vector<double>& t) { return mass(mu, sublevel_set(t, dec.threshold)); };

    double best = coverage(nodes);
    for (int sweep = 0; sweep < 64 && best < target; ++sweep) {
        bool improved = false;
        for (int i = 0; i < n && best < target; ++i) {
            std::vector<double> trial = nodes;
            for (double g : grid) {
                trial[i] = g;
                const double m = coverage(trial);
                if (m > best) {
                    best = m;
                    nodes[i] = g;
                    improved = true;
                    if (best >= target) break;
                }
            }
        }
        if (!improved) break;
    }
    if (best < target)
        throw Error("decompose: node search did not reach mass 1 - eps/2 (l_n estimate too small?)");

    dec.nodes = nodes;
    const RealSet E = sublevel_set(nodes, dec.threshold);
    dec.sublevel_mass = mass(mu, E);
    dec.sublevel_components = static_cast<int>(E.size());
    dec.sublevel_length = E.measure();
    for (const auto& part : E.parts()) {
        const double m = mass(mu, part);
        if (m < min_child) continue;
        Interval shrunk;
        if (support_hull_within(mu, part, shrunk)) dec.children.push_back({shrunk, m});
    }
    return dec;
}

std::vector<Child> ChildrenTree::leaves() const {
    std::vector<Child> out;
    if (order == 1) {
        for (const auto& c : decomposition.children) out.push_back({c.interval, c.mass * mass});
        return out;
    }
    for (const auto& s : subtrees) {
        auto l = s.leaves();
        out.insert(out.end(), l.begin(), l.end());
    }
    return out;
}

int ChildrenTree::depth() const {
    int d = 0;
    for (const auto& s : subtrees) d = std::max(d, s.depth());
    return d + 1;
}

namespace {

ChildrenTree build_tree(const ProbMeasure& mu, Interval interval, double global_mass, int order,
                        double eps_prime, const MCBudget& budget) {
    ChildrenTree node;
    node.interval = interval;
    node.mass = global_mass;
    node.order = order;
    node.decomposition = decompose(mu, order, eps_prime, budget);
    if (order == 1) return node;
    std::uint64_t tag = 0;
    for (const auto& c : node.decomposition.children) {
        MCBudget sub = budget;
        sub.seed = derive_seed(budget.seed, ++tag);
        node.subtrees.push_back(build_tree(restrict(mu, c.interval), c.interval,
                                           global_mass * c.mass, order - 1, eps_prime, sub));
    }
    return node;
}

}  // namespace

ChildrenTree children_tree(const ProbMeasure& mu, int n, double eps_prime, const MCBudget& budget) {
    if (n < 1) throw Error("children_tree requires n >= 1");
    return build_tree(mu, mu.hull(), 1.0, n, eps_prime, budget);
}

}  // namespace polylb
