#include "polylb/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace polylb {

ProbMeasure ProbMeasure::uniform(RealSet support) {
    if (!(support.measure() > 0.0)) throw Error("uniform measure needs a support of positive measure");
    return ProbMeasure(Uniform{std::move(support)});
}

ProbMeasure ProbMeasure::atomic(std::vector<Atom> atoms) {
    if (atoms.empty()) throw Error("atomic measure needs at least one atom");
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.point < b.point; });
    std::vector<Atom> merged;
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!std::isfinite(a.point) || !std::isfinite(a.weight)) throw Error("atom must be finite");
        if (!(a.weight > 0.0)) throw Error("atom weights must be positive");
        total += a.weight;
        if (!merged.empty() && merged.back().point == a.point) merged.back().weight += a.weight;
        else merged.push_back(a);
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error("atom weights must sum to 1");
    return ProbMeasure(Atomic{std::move(merged)});
}

ProbMeasure ProbMeasure::atomic_normalized(std::vector<Atom> atoms) {
    double total = 0.0;
    for (const auto& a : atoms) total += a.weight;
    if (!(total > 0.0)) throw Error("atom weights must be positive");
    for (auto& a : atoms) a.weight /= total;
    // absorb the rounding residue in the heaviest atom
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight;
    auto heavy = std::max_element(atoms.begin(), atoms.end(),
                                  [](const Atom& a, const Atom& b) { return a.weight < b.weight; });
    heavy->weight += 1.0 - s;
    return atomic(std::move(atoms));
}

RealSet ProbMeasure::support() const {
    if (is_uniform()) return support_set();
    std::vector<Interval> pts;
    for (const auto& a : atoms()) pts.push_back({a.point, a.point});
    return RealSet::normalize(pts);
}

double ProbMeasure::quantile(double q) const {
    q = std::clamp(q, 0.0, 1.0);
    if (is_uniform()) {
        const auto& parts = support_set().parts();
        double remaining = q * support_set().measure();
        for (const auto& p : parts) {
            if (remaining <= p.length()) return p.lo + remaining;
            remaining -= p.length();
        }
        return parts.back().hi;
    }
    double cum = 0.0;
    for (const auto& a : atoms()) {
        cum += a.weight;
        if (cum >= q - 1e-15) return a.point;
    }
    return atoms().back().point;
}

ProbMeasure ProbMeasure::affine(double scale, double shift) const {
    if (is_uniform()) return uniform(support_set().affine(scale, shift));
    std::vector<Atom> a = atoms();
    for (auto& x : a) x.point = scale * x.point + shift;
    return ProbMeasure(Atomic{std::move(a)});
}

double mass(const ProbMeasure& mu, const RealSet& S) {
    if (mu.is_uniform()) {
        const RealSet& K = mu.support_set();
        return std::min(1.0, K.intersect(S).measure() / K.measure());
    }
    double m = 0.0;
    for (const auto& a : mu.atoms())
        if (S.contains(a.point)) m += a.weight;
    return std::min(1.0, m);
}

double mass(const ProbMeasure& mu, const Interval& I) { return mass(mu, RealSet::single(I)); }

ProbMeasure restrict(const ProbMeasure& mu, const Interval& I) {
    if (mu.is_uniform()) {
        RealSet r = mu.support_set().intersect(I);
        if (!(r.measure() > 0.0)) throw Error("cannot restrict a measure to a set of zero mass");
        return ProbMeasure::uniform(std::move(r));
    }
    std::vector<Atom> kept;
    for (const auto& a : mu.atoms())
        if (I.contains(a.point)) kept.push_back(a);
    if (kept.empty()) throw Error("cannot restrict a measure to a set of zero mass");
    return ProbMeasure::atomic_normalized(std::move(kept));
}

double integrate_abs(const Polynomial& p, const ProbMeasure& mu) {
    if (mu.is_uniform()) return integrate_abs(p, mu.support_set()) / mu.support_set().measure();
    double s = 0.0;
    for (const auto& a : mu.atoms()) s += a.weight * std::abs(p(a.point));
    return s;
}

bool support_hull_within(const ProbMeasure& mu, const Interval& I, Interval& out) {
    if (mu.is_uniform()) {
        RealSet r = mu.support_set().intersect(I);
        if (!(r.measure() > 0.0)) return false;
        out = r.hull();
        return true;
    }
    bool found = false;
    for (const auto& a : mu.atoms()) {
        if (!I.contains(a.point)) continue;
        if (!found) out = {a.point, a.point};
        out.hi = a.point;
        found = true;
    }
    return found;
}

// |mu|_{n,eps}.
//
// Optimal intervals may be taken with endpoints in the support. Grouping the
// support into items (atoms, or components of a uniform support), a
// configuration is a choice of at most n runs of consecutive items; its cost
// is the sum of the gaps bridged inside runs. For atoms the length equals
// that cost. For a uniform support the run endpoints can be pulled inward
// until the covered mass is exactly 1 - eps, so the length is
// cost + (1 - eps)|K|. Both reduce to: minimize bridged gaps subject to
// covered item mass >= 1 - eps, solved by a Pareto DP over (gaps, mass).
namespace {

struct Item {
    double lo, hi, weight;
};

struct Entry {
    double gaps;
    double mass;
    int prev_item;  // -1 when this item starts the first run
    int prev_runs;
    int prev_index;
};

void pareto_prune(std::vector<Entry>& v) {
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) {
        return a.gaps < b.gaps || (a.gaps == b.gaps && a.mass > b.mass);
    });
    std::vector<Entry> out;
    double best_mass = -1.0;
    for (const auto& e : v) {
        if (e.mass > best_mass) {
            out.push_back(e);
            best_mass = e.mass;
        }
    }
    v = std::move(out);
}

}  // namespace

LengthResult length_n_eps(const ProbMeasure& mu, int n, double eps) {
    if (n < 1) throw Error("length_n_eps requires n >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw Error("length_n_eps requires 0 < eps < 1");

    std::vector<Item> items;
    double total_len = 0.0;
    if (mu.is_uniform()) {
        total_len = mu.support_set().measure();
        for (const auto& p : mu.support_set().parts()) items.push_back({p.lo, p.hi, p.length() / total_len});
    } else {
        for (const auto& a : mu.atoms()) items.push_back({a.point, a.point, a.weight});
    }
    const int r = static_cast<int>(items.size());
    const double target = 1.0 - eps;
    constexpr double kTol = 1e-12;

    // table[i][k]: configurations whose last covered item is i, using k runs.
    std::vector<std::vector<std::vector<Entry>>> table(
        r, std::vector<std::vector<Entry>>(n + 1));
    // closed[k]: union over already-processed items of table[.][k], stored as
    // references to the originating entry.
    std::vector<std::vector<Entry>> closed(n + 1);

    for (int i = 0; i < r; ++i) {
        const double w = items[i].weight;
        for (int k = 1; k <= n; ++k) {
            auto& cell = table[i][k];
            if (k == 1) cell.push_back({0.0, w, -1, 0, -1});
            else
                for (const auto& e : closed[k - 1])
                    cell.push_back({e.gaps, e.mass + w, e.prev_item, e.prev_runs, e.prev_index});
            if (i > 0) {
                const double gap = items[i].lo - items[i - 1].hi;
                const auto& prev = table[i - 1][k];
                for (int idx = 0; idx < static_cast<int>(prev.size()); ++idx)
                    cell.push_back({prev[idx].gaps + gap, prev[idx].mass + w, i - 1, k, -idx - 2});
            }
            pareto_prune(cell);
        }
        for (int k = 1; k <= n; ++k) {
            for (int idx = 0; idx < static_cast<int>(table[i][k].size()); ++idx) {
                const auto& e = table[i][k][idx];
                closed[k].push_back({e.gaps, e.mass, i, k, idx});
            }
            pareto_prune(closed[k]);
        }
    }

    // Pick the cheapest feasible end state.
    int best_i = -1, best_k = -1, best_idx = -1;
    double best_gaps = std::numeric_limits<double>::infinity();
    for (int i = 0; i < r; ++i)
        for (int k = 1; k <= n; ++k)
            for (int idx = 0; idx < static_cast<int>(table[i][k].size()); ++idx) {
                const auto& e = table[i][k][idx];
                if (e.mass >= target - kTol && e.gaps < best_gaps) {
                    best_gaps = e.gaps;
                    best_i = i;
                    best_k = k;
                    best_idx = idx;
                }
            }
    if (best_i < 0) throw Error("length_n_eps: no feasible configuration");

    // Walk back. A negative prev_index (-idx-2) marks an extension of the
    // current run; a non-negative one marks the end of the previous run.
    std::vector<std::pair<int, int>> runs;  // [first item, last item], reversed
    int i = best_i, k = best_k, idx = best_idx;
    int run_end = i;
    double covered = 0.0;
    while (true) {
        const Entry& e = table[i][k][idx];
        covered += items[i].weight;
        if (e.prev_item < 0) {
            runs.push_back({i, run_end});
            break;
        }
        if (e.prev_index <= -2) {
            idx = -e.prev_index - 2;
            i = e.prev_item;
        } else {
            runs.push_back({i, run_end});
            i = e.prev_item;
            k = e.prev_runs;
            idx = e.prev_index;
            run_end = i;
        }
    }
    std::reverse(runs.begin(), runs.end());

    LengthResult res;
    for (const auto& [a, b] : runs) res.witness.push_back({items[a].lo, items[b].hi});

    if (mu.is_uniform()) {
        // Pull run ends inward, one end component at a time, until the
        // covered mass is (just above) 1 - eps.
        double excess = (covered - target) * total_len - kTol * total_len;
        for (std::size_t q = 0; q < runs.size() && excess > 0.0; ++q) {
            const auto [a, b] = runs[q];
            auto& w = res.witness[q];
            const double take_r = std::min(excess, items[b].hi - items[b].lo);
            w.hi -= take_r;
            excess -= take_r;
            if (a < b && excess > 0.0) {
                const double take_l = std::min(excess, items[a].hi - items[a].lo);
                w.lo += take_l;
                excess -= take_l;
            }
        }
    }
    for (const auto& w : res.witness) res.value += w.length();

    if (mu.is_uniform() && res.value < target * total_len - 1e-9 * total_len)
        throw Error("length_n_eps: result below (1 - eps)|K|");
    return res;
}

}  // namespace polylb
