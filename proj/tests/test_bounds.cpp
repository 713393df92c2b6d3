#include <doctest.h>

#include <cmath>

#include "polylb/bounds.hpp"
#include "polylb/oracle.hpp"
#include "polylb/rng.hpp"

using namespace polylb;

namespace {

const ProbMeasure& unit() {
    static const ProbMeasure u = ProbMeasure::uniform(RealSet::single({0, 1}));
    return u;
}

// Random f of degree n whose n-th derivative is a nonzero constant, or
// (extra) a degree n-1 part plus terms making f^{(n)} positive everywhere.
Polynomial sign_constant(CounterRng& rng, int n, double lo, double hi, bool extra) {
    std::vector<double> c(extra ? n : n + 1);
    for (double& x : c) x = rng.normal();
    Polynomial f(c);
    if (extra) {
        // f^{(n)} = a + b (t - m)^2 with a > 0
        const double m = rng.uniform(lo, hi);
        Polynomial g = Polynomial::from_roots(std::vector<double>{m, m}) * rng.uniform(0.0, 2.0) +
                       Polynomial::constant(rng.uniform(0.1, 2.0));
        for (int k = 0; k < n; ++k) g = g.antiderivative();
        f = f + g;
    }
    return f;
}

}  // namespace

TEST_CASE("theorem1_bound examples") {
    const auto K = RealSet::single({0, 1});
    const auto w = make_poly_type_witness(Polynomial{-0.5, 1.0}, 1, K.hull(), K);
    MCBudget mc;
    const auto b = theorem1_bound(unit(), K, 1, w, mc);
    CHECK(b.lhs == doctest::Approx(0.25));
    CHECK(b.rhs == doctest::Approx(1.0 / 6.0).epsilon(3.0 * b.ell.relative_stderr() + 1e-12));
    CHECK(b.lhs >= b.rhs);

    const auto pair = ProbMeasure::atomic({{0, 0.5}, {1, 0.5}});
    const auto b2 = theorem1_bound(pair, K, 1, w, mc);
    CHECK(b2.lhs == doctest::Approx(0.5));
    CHECK(b2.rhs == doctest::Approx(0.25));

    CHECK_THROWS_AS(make_poly_type_witness(Polynomial{}, 1, K.hull(), K), Error);
    CHECK_THROWS_AS(make_poly_type_witness(Polynomial{0, -0.5, 0.5}, 1, K.hull(), K), Error);
}

TEST_CASE("poly type witness constant") {
    const auto K = RealSet::normalize({{0, 0.3}, {0.7, 1}});
    const Polynomial f{0, 0, 1, 1};  // f'' = 2 + 6t > 0 on [0, 1]
    const auto w = make_poly_type_witness(f, 2, K.hull(), k_epsilon(K, K.hull(), 0.5));
    CHECK(w.sign == 1);
    CHECK(w.constant_C == doctest::Approx(8.0 / 2.0));
}

TEST_CASE("close_gaps examples") {
    const std::vector<double> a{0, 5, 6};
    CHECK(close_gaps(a, 1).parts() == std::vector<Interval>{{0, 6}});
    const std::vector<double> b{0, 1, 100};
    CHECK(close_gaps(b, 2).parts() == std::vector<Interval>{{0, 1}, {100, 100}});
    const std::vector<double> c{0, 0.1, 5, 5.2};
    CHECK(close_gaps(c, 2).parts() == std::vector<Interval>{{0, 0.1}, {5, 5.2}});
    const std::vector<double> d{0, 1};
    CHECK(close_gaps(d, 3).parts() == std::vector<Interval>{{0, 0}, {1, 1}});
}

TEST_CASE("close_gap_rule never picks an endpoint") {
    CounterRng rng(61, 0);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> s(3 + t % 4);
        for (double& x : s) x = rng.uniform(0, 10);
        std::sort(s.begin(), s.end());
        const auto r = close_gap_rule(s);
        CHECK(r.k >= 1);
        CHECK(r.k + 1 < static_cast<int>(s.size()));
        CHECK((r.closed.lo == s[r.k] || r.closed.hi == s[r.k]));
    }
}

TEST_CASE("close_gaps bound on a small ensemble") {
    CounterRng rng(62, 0);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 4;
        std::vector<double> pts(1 + t % 8);
        for (double& x : pts) x = rng.uniform(0, 1);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const RealSet E = close_gaps(pts, n);
        CHECK(static_cast<int>(E.size()) <= n);
        for (double p : pts) CHECK(E.contains(p));
        for (int k = 0; k < 100; ++k) {
            const Polynomial f = sign_constant(rng, n, 0, 1, false);
            double mx = 0.0;
            for (double p : pts) mx = std::max(mx, std::abs(f(p)));
            CHECK(poly_sup(f, E) <= (n + 1) * std::pow(2.0, n) * mx * (1 + 1e-9));
        }
    }
}

TEST_CASE("theorem2_set examples") {
    const auto c1 = theorem2_set(unit(), {}, 1, 0.25);
    CHECK(c1.region.size() == 1);
    CHECK(mass(unit(), c1.region) >= 0.75);
    CHECK(c1.constant > 0.0);

    const auto pts = ProbMeasure::atomic({{0, 0.5}, {1, 0.5}});
    const auto c2 = theorem2_set(pts, {}, 2, 0.25);
    CHECK(c2.region == RealSet::normalize({{0, 0}, {1, 1}}));
    CHECK(mass(pts, c2.region) == 1.0);

    const auto clusters = ProbMeasure::uniform(RealSet::normalize({{0, 0.01}, {0.99, 1}}));
    const auto c3 = theorem2_set(clusters, {}, 2, 0.25);
    REQUIRE(c3.region.size() == 2);
    CHECK(c3.region.parts()[0].hi <= 0.01);
    CHECK(c3.region.parts()[1].lo >= 0.99);
    CHECK(mass(clusters, c3.region) >= 0.75);
}

TEST_CASE("corollary_interval examples") {
    const auto c1 = corollary_interval(unit(), {}, 1, 0.25);
    CHECK(mass(unit(), c1.region) >= 0.75);
    CHECK(c1.j_range == std::vector<int>{0, 1});

    const auto one = ProbMeasure::atomic({{0.3, 1.0}});
    const auto c2 = corollary_interval(one, {}, 1, 0.25);
    CHECK(c2.region == RealSet::single({0.3, 0.3}));
    CHECK(c2.j_range == std::vector<int>{0});
    CHECK(c2.constant == doctest::Approx(1.0));

    const auto halves = ProbMeasure::uniform(RealSet::normalize({{0, 0.5}, {0.5001, 1}}));
    const auto c3 = corollary_interval(halves, {}, 2, 0.25);
    CHECK(c3.region.size() == 1);
    CHECK(mass(halves, c3.region) >= 0.375);
}

TEST_CASE("theorem0_pipeline examples") {
    const auto K = RealSet::single({0, 1});
    const auto c = theorem0_pipeline(K, 1, 0.25);
    const Interval I = c.region.hull();
    CHECK(I.length() >= 0.75);
    if (I == Interval{0, 1}) CHECK(c.constant_for(0) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-4));
    CHECK_THROWS_AS(theorem0_pipeline(RealSet::single({0, 0}), 1, 0.25), Error);
    const auto split = theorem0_pipeline(RealSet::normalize({{0, 0.5}, {0.5, 1}}), 1, 0.25);
    CHECK(split.region == c.region);
    CHECK(split.constants == c.constants);
}

TEST_CASE("shrinking the interval never lowers the certified constant") {
    const auto K = RealSet::normalize({{0, 0.3}, {0.5, 1}});
    const OracleBudget ob{4000, 3};
    for (int j = 0; j <= 2; ++j) {
        const auto big = certify_ratio(RatioProblem::lebesgue(K, RealSet::single({0, 1}), 2, j), ob.samples, ob.seed);
        const auto small = certify_ratio(RatioProblem::lebesgue(K, RealSet::single({0.2, 0.7}), 2, j), ob.samples, ob.seed);
        CHECK(small.min_ratio >= big.min_ratio * (1 - 1e-6));
    }
}

TEST_CASE("recenter_bound examples") {
    const Interval I{0, 1};
    const auto a = recenter_bound(Polynomial{0, 1}, I, 1.0, 2);
    CHECK(a.lhs[1] == doctest::Approx(1.0));
    CHECK(a.rhs[1] == doctest::Approx(1.0));
    const auto c = recenter_bound(Polynomial{2.0}, I, 1.0, 2);
    CHECK(c.lhs[0] == doctest::Approx(c.rhs[0]));
    CHECK(c.lhs[1] == 0.0);
    CHECK(c.lhs[2] == 0.0);
    const auto q = recenter_bound(Polynomial{0, -1, 1}, I, 1.0, 2);
    CHECK(q.lhs[1] == doctest::Approx(1.0));
    CHECK(q.rhs[1] == doctest::Approx(0.25 + 2.0));
}

TEST_CASE("recenter constant bounds random polynomials") {
    CounterRng rng(63, 0);
    for (int n = 1; n <= 3; ++n) {
        for (double rho : {0.25, 1.0, 3.0}) {
            const double C = recenter_constant(n, rho, {4000, 7});
            CHECK(std::isfinite(C));
            CHECK(C > 0.0);
            for (int k = 0; k < 300; ++k) {
                std::vector<double> q(n + 1);
                for (double& x : q) x = rng.normal();
                const double L = rng.uniform(0.5, 4.0), lo = rng.uniform(-3, 3);
                const Polynomial f = Polynomial(q).composed_affine(1.0 / L, -lo / L);
                const auto b = recenter_bound(f, {lo, lo + L}, rho * L, n);
                for (int j = 0; j <= n; ++j) CHECK(b.lhs[j] <= C * b.rhs[j] * (1 + 1e-9));
            }
        }
    }
}

TEST_CASE("index selection along leaf chains") {
    const auto u = ProbMeasure::uniform(RealSet::normalize({{0, 0.2}, {0.35, 0.6}, {0.8, 1}}));
    CounterRng rng(64, 0);
    for (int n = 1; n <= 3; ++n) {
        const auto tree = children_tree(u, n, 1.0 - std::pow(0.75, 1.0 / n));
        const auto chains = leaf_chains(tree);
        REQUIRE(!chains.empty());
        for (const auto& ch : chains) {
            REQUIRE(static_cast<int>(ch.size()) == n + 1);
            for (int k = 1; k <= n; ++k) CHECK(ch[k].contains(ch[k - 1]));
            for (int trial = 0; trial < 200; ++trial) {
                const Polynomial f = sign_constant(rng, n, ch[n].lo, ch[n].hi, true);
                const auto sel = theorem2_selection(ch, f);
                CHECK(sel.scores.size() == static_cast<std::size_t>(n + 1));
                if (sel.j < n) {
                    const double sup = poly_sup(f, ch[sel.j], sel.j).first;
                    const double inf = poly_inf_abs(f, ch[sel.j], sel.j);
                    CHECK(sup <= 2.0 * inf * (1 + 1e-9));
                }
            }
        }
    }
}
