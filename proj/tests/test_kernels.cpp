#include <doctest.h>

#include <cmath>
#include <cstring>

#include "polylb/kernels.hpp"
#include "polylb/oracle.hpp"

using namespace polylb;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("moments: parallel and serial agree bit for bit") {
    for (const auto& mu : {ProbMeasure::uniform(RealSet::normalize({{0, 0.3}, {0.5, 1.2}})),
                           ProbMeasure::atomic({{0, 0.25}, {0.4, 0.25}, {1, 0.5}})}) {
        for (int n = 1; n <= 4; ++n) {
            for (std::int64_t samples : {1, 4095, 4096, 4097, 50000}) {
                const auto a = kernels::mc_vandermonde_moments(mu, n, samples, 99);
                const auto b = kernels::mc_vandermonde_moments_serial(mu, n, samples, 99);
                CHECK(a.samples == b.samples);
                CHECK(same_bits(a.mean_num, b.mean_num));
                CHECK(same_bits(a.mean_den, b.mean_den));
                CHECK(same_bits(a.var_num, b.var_num));
                CHECK(same_bits(a.var_den, b.var_den));
                CHECK(same_bits(a.cov, b.cov));
            }
        }
    }
}

TEST_CASE("sphere points are unit vectors and reproducible") {
    for (int dim = 1; dim <= 6; ++dim) {
        for (std::int64_t i = 0; i < 100; ++i) {
            const auto p = kernels::sphere_point(dim, 5, i);
            double s = 0.0;
            for (double x : p) s += x * x;
            CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(p == kernels::sphere_point(dim, 5, i));
        }
    }
}

TEST_CASE("sphere scan: parallel and serial agree") {
    const auto prob = RatioProblem::lebesgue(RealSet::normalize({{0, 0.4}, {0.6, 1}}), RealSet::single({0, 1}), 3, 1);
    const kernels::ObjectiveFn f = [&](std::span<const double> q) {
        return ratio_value(prob, Polynomial(std::vector<double>(q.begin(), q.end())));
    };
    const auto a = kernels::sphere_scan(4, 20000, 3, f, 10);
    const auto b = kernels::sphere_scan_serial(4, 20000, 3, f, 10);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].index == b[i].index);
        CHECK(same_bits(a[i].value, b[i].value));
        if (i > 0) CHECK(a[i - 1].value <= a[i].value);
    }
}

TEST_CASE("batch evaluation: parallel and serial agree") {
    auto slack = [](std::int64_t i) {
        if (i % 7 == 3) return std::nan("");
        return std::sin(static_cast<double>(i)) * 0.5;
    };
    const auto a = kernels::evaluate_batch(30000, 1e-9, slack);
    const auto b = kernels::evaluate_batch_serial(30000, 1e-9, slack);
    CHECK(a.checked == b.checked);
    CHECK(a.violations == b.violations);
    CHECK(same_bits(a.min_slack, b.min_slack));
    CHECK(a.argmin == b.argmin);
    CHECK(a.checked == 30000 - 30000 / 7 - (30000 % 7 > 3 ? 1 : 0));
    const auto empty = kernels::evaluate_batch(0, 1e-9, slack);
    CHECK(empty.checked == 0);
    CHECK(empty.violations == 0);
}
