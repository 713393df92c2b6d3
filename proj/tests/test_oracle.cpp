#include <doctest.h>

#include <cmath>

#include "polylb/bounds.hpp"
#include "polylb/json_io.hpp"
#include "polylb/oracle.hpp"
#include "polylb/rng.hpp"

using namespace polylb;

TEST_CASE("sphere minimum on the unit interval") {
    const auto K = RealSet::single({0, 1});
    const auto r = certify_ratio(RatioProblem::lebesgue(K, K, 1, 0), 2000, 1);
    CHECK(r.min_ratio == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-6));
    // witness ~ t - (1 - sqrt(2)/2) up to scale
    const double root = -r.witness.coeff(0) / r.witness.coeff(1);
    CHECK(std::min(std::abs(root - (1 - std::sqrt(0.5))), std::abs(root - std::sqrt(0.5))) < 1e-4);
    CHECK(ratio_value(RatioProblem::lebesgue(K, K, 1, 0), r.witness) ==
          doctest::Approx(r.min_ratio).epsilon(1e-10));

    const auto r0 = certify_ratio(RatioProblem::lebesgue(K, K, 0, 0), 1000, 1);
    CHECK(r0.min_ratio == doctest::Approx(1.0));

    const auto pt = certify_ratio(RatioProblem::lebesgue(K, RealSet::single({0.5, 0.5}), 1, 0), 2000, 1);
    CHECK(pt.min_ratio > 0.0);
    CHECK(pt.min_ratio == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ratio is invariant under scaling") {
    CounterRng rng(71, 0);
    const auto prob = RatioProblem::lebesgue(RealSet::normalize({{0, 0.3}, {0.6, 1}}), RealSet::single({0.1, 0.9}), 3, 1);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> c(4);
        for (double& x : c) x = rng.normal();
        const Polynomial p(c);
        const double lam = rng.uniform(-100, 100);
        CHECK(ratio_value(prob, p * lam) == doctest::Approx(ratio_value(prob, p)).epsilon(1e-12));
    }
}

TEST_CASE("certification is deterministic and doubling the budget never raises the minimum") {
    const auto prob = RatioProblem::lebesgue(RealSet::normalize({{0, 0.2}, {0.5, 1}}), RealSet::single({0, 1}), 2, 1);
    const auto a = certify_ratio(prob, 2000, 9);
    const auto b = certify_ratio(prob, 2000, 9);
    CHECK(to_json(a.witness).dump() == to_json(b.witness).dump());
    CHECK(a.min_ratio == b.min_ratio);
    const auto c = certify_ratio(prob, 4000, 9);
    CHECK(c.min_ratio <= a.min_ratio + 1e-9);
}

TEST_CASE("validation of a theorem-0 certificate and the doubled negative control") {
    const auto cert = theorem0_pipeline(RealSet::single({0, 1}), 2, 0.25);
    const auto rep = validate_inequality(cert, 10000, 5);
    CHECK(rep.violations == 0);
    CHECK(rep.checked == 10000);
    CHECK(rep.min_slack >= -1e-9);

    Certificate doubled = cert;
    for (double& c : doubled.constants) c *= 2.0;
    CHECK(validate_inequality(doubled, 10000, 5).violations > 0);

    const auto empty = validate_inequality(cert, 0, 5);
    CHECK(empty.trials == 0);
    CHECK(empty.violations == 0);
}

TEST_CASE("certificate JSON round trip") {
    const auto cert = corollary_interval(ProbMeasure::atomic({{0, 0.2}, {0.4, 0.3}, {1, 0.5}}), {}, 2, 0.25);
    const auto back = certificate_from_json(to_json(cert));
    CHECK(to_json(back).dump() == to_json(cert).dump());
    CHECK(validate_inequality(back, 2000, 1).violations == 0);
}

TEST_CASE("imbalanced family") {
    for (int n = 1; n <= 3; ++n) {
        for (int m = 1; m <= 4; ++m) {
            const auto K = imbalanced_family_member(n, m);
            CHECK(static_cast<int>(K.size()) == n + 1);
            CHECK(K.measure() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(K.parts().back().length() == doctest::Approx(std::pow(4.0, -m)));
        }
    }
}

TEST_CASE("counterexample search, small family") {
    const auto one = search_counterexample(1, 1, 3);
    REQUIRE(one.rows.size() == 1);
    CHECK(one.rows[0].eps0_constant > 0.0);

    const auto rep = search_counterexample(1, 3, 3);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.eps0_strictly_decreasing);
    for (const auto& r : rep.rows) CHECK(r.pipeline_constant >= r.eps0_constant * (1 - 1e-9));
    // once the far piece is light enough the pipeline drops it
    CHECK(rep.rows[2].pipeline_constant > 4.0 * rep.rows[2].eps0_constant);
    CHECK(rep.pipeline_min > 0.1);
}
