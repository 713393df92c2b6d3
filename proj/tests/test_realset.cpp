#include <doctest.h>

#include <cmath>

#include "polylb/realset.hpp"
#include "polylb/rng.hpp"

using namespace polylb;

namespace {

RealSet random_set(CounterRng& rng, int parts) {
    std::vector<Interval> v;
    for (int i = 0; i < parts; ++i) {
        const double a = rng.uniform(-3.0, 3.0);
        v.push_back({a, a + rng.uniform(0.0, 0.8)});
    }
    return RealSet::normalize(v);
}

}  // namespace

TEST_CASE("normalize merges, sorts and keeps points") {
    CHECK(RealSet::normalize({{0, 1}, {0.5, 2}}).parts() == std::vector<Interval>{{0, 2}});
    CHECK(RealSet::normalize({{2, 3}, {0, 1}}).parts() == std::vector<Interval>{{0, 1}, {2, 3}});
    const auto pt = RealSet::normalize({{0, 0}});
    CHECK(pt.size() == 1);
    CHECK(pt.measure() == 0.0);
    CHECK(RealSet::normalize({{0, 1}, {1, 2}}).size() == 1);
}

TEST_CASE("normalize rejects bad endpoints") {
    CHECK_THROWS_AS(RealSet::normalize({{0, NAN}}), Error);
    CHECK_THROWS_AS(RealSet::normalize({{0, INFINITY}}), Error);
    CHECK_THROWS_AS(RealSet::normalize({{1, 0}}), Error);
}

TEST_CASE("measure examples") {
    CHECK(RealSet::normalize({{0, 1}, {2, 3}}).measure() == 2.0);
    CHECK(RealSet::normalize({{0, 0}}).measure() == 0.0);
    CHECK(RealSet::normalize({{0, 0.2}, {0.8, 1}}).measure() == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("normalize is idempotent and preserves measure") {
    CounterRng rng(11, 0);
    for (int t = 0; t < 200; ++t) {
        const RealSet s = random_set(rng, 1 + t % 6);
        const RealSet again = RealSet::normalize(s.parts());
        CHECK(again == s);
        CHECK(again.measure() == s.measure());
    }
}

TEST_CASE("set operations") {
    const auto a = RealSet::normalize({{0, 1}, {2, 3}});
    const auto b = RealSet::normalize({{0.5, 2.5}});
    CHECK(a.intersect(b).parts() == std::vector<Interval>{{0.5, 1}, {2, 2.5}});
    CHECK(a.unite(b).parts() == std::vector<Interval>{{0, 3}});
    CHECK(a.gaps() == std::vector<Interval>{{1, 2}});
    CHECK(a.contains(2.5));
    CHECK_FALSE(a.contains(1.5));
    CHECK(a.affine(2.0, 1.0).parts() == std::vector<Interval>{{1, 3}, {5, 7}});
    CHECK(a.hull() == Interval{0, 3});
}

TEST_CASE("k_epsilon examples") {
    const auto K = RealSet::normalize({{0, 1}, {2, 3}});
    const auto ke = k_epsilon(K, K.hull(), 0.5);
    REQUIRE(ke.size() == 2);
    CHECK(ke.parts()[0].lo == 0.0);
    CHECK(ke.parts()[0].hi == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(ke.parts()[1].lo == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(ke.parts()[1].hi == 3.0);

    const auto one = RealSet::single({0, 1});
    CHECK(k_epsilon(one, one.hull(), 0.3) == one);

    const auto tiny = k_epsilon(K, K.hull(), 1e-12);
    CHECK(tiny.measure() == doctest::Approx(K.measure()).epsilon(1e-10));

    CHECK_THROWS_AS(k_epsilon(K, K.hull(), 0.0), Error);
    CHECK_THROWS_AS(k_epsilon(K, K.hull(), 1.0), Error);
}

TEST_CASE("k_epsilon containment, monotonicity and gap measure") {
    CounterRng rng(12, 0);
    for (int t = 0; t < 200; ++t) {
        const RealSet K = random_set(rng, 2 + t % 5);
        const Interval hull = K.hull();
        const double e1 = rng.uniform(0.01, 0.9);
        const double e2 = std::min(0.99, e1 + rng.uniform(0.0, 0.3));
        const RealSet k1 = k_epsilon(K, hull, e1);
        const RealSet k2 = k_epsilon(K, hull, e2);
        CHECK(k1.contains(K));
        CHECK(RealSet::single(hull).contains(k1));
        CHECK(k2.contains(k1));
        for (const auto& g : K.gaps()) {
            const double added = k1.intersect(g).measure();
            CHECK(added == doctest::Approx(2.0 * e1 * g.length() / (1.0 + e1)).epsilon(1e-12));
            CHECK(added / 2.0 <= e1 * (hull.length() - K.measure()) + 1e-12);
        }
    }
}

TEST_CASE("k_epsilon agrees with the distance definition on gap samples") {
    CounterRng rng(13, 0);
    for (int t = 0; t < 20; ++t) {
        const RealSet K = random_set(rng, 3 + t % 3);
        const double eps = rng.uniform(0.05, 0.95);
        const RealSet ke = k_epsilon(K, K.hull(), eps);
        for (const auto& g : K.gaps()) {
            int disagree = 0;
            for (int i = 0; i < 10000; ++i) {
                const double s = rng.uniform(g.lo, g.hi);
                if (ke.contains(s) != in_k_epsilon_by_distance(K, s, eps)) ++disagree;
            }
            CHECK(disagree == 0);
        }
    }
}
