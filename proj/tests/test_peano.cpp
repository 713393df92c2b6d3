#include <doctest.h>

#include <cmath>

#include "polylb/peano.hpp"
#include "polylb/rng.hpp"

using namespace polylb;

namespace {

// Unit-integral B-spline from the Cox-de Boor recursion, for cross-checks.
double cox_de_boor(const std::vector<double>& t, int i, int k, double s) {
    if (k == 1) return t[i] <= s && s < t[i + 1] ? 1.0 : 0.0;
    double v = 0.0;
    if (t[i + k - 1] > t[i]) v += (s - t[i]) / (t[i + k - 1] - t[i]) * cox_de_boor(t, i, k - 1, s);
    if (t[i + k] > t[i + 1]) v += (t[i + k] - s) / (t[i + k] - t[i + 1]) * cox_de_boor(t, i + 1, k - 1, s);
    return v;
}

double m_spline(const std::vector<double>& t, double s) {
    const int n = static_cast<int>(t.size()) - 1;
    return n / (t.back() - t.front()) * cox_de_boor(t, 0, n, s);
}

std::vector<double> random_nodes(CounterRng& rng, int n) {
    while (true) {
        std::vector<double> t(n + 1);
        for (double& x : t) x = rng.uniform(-5, 5);
        std::sort(t.begin(), t.end());
        bool ok = true;
        for (int i = 0; i < n; ++i) ok = ok && t[i + 1] - t[i] >= 1e-2;
        if (ok) return t;
    }
}

}  // namespace

TEST_CASE("vandermonde examples") {
    CHECK(vandermonde(std::vector<double>{0, 1}) == 1.0);
    CHECK(vandermonde(std::vector<double>{0, 1, 2}) == 2.0);
    CHECK(vandermonde(std::vector<double>{0, 0, 1}) == 0.0);
    CHECK(vandermonde(std::vector<double>{}) == 1.0);
}

TEST_CASE("divided difference examples") {
    const NodeSet n3({0, 1, 2});
    CHECK(divided_difference(Polynomial{0, 0, 1}, n3) == doctest::Approx(1.0));
    CHECK(divided_difference(Polynomial{0, 1}, n3) == doctest::Approx(0.0));
    CHECK(divided_difference(Polynomial{0, 0, 0, 1}, NodeSet({0, 1, 3, 4})) == doctest::Approx(1.0));
    CHECK_THROWS_AS(NodeSet({0, 1, 1}), Error);
}

TEST_CASE("divided difference of t^n is one; Newton and Vandermonde routes agree") {
    CounterRng rng(31, 0);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + t % 6;
        const NodeSet nodes(random_nodes(rng, n));
        CHECK(divided_difference(Polynomial::monomial(n), nodes) == doctest::Approx(1.0).epsilon(1e-12));
        std::vector<double> v;
        std::vector<double> coeffs(n + 3);
        for (double& c : coeffs) c = rng.normal();
        const Polynomial f(coeffs);
        for (double x : nodes.nodes()) v.push_back(f(x));
        const double a = divided_difference(v, nodes);
        const double b = divided_difference_vandermonde(v, nodes);
        CHECK(b == doctest::Approx(a).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("kernel examples") {
    const auto box = peano_kernel(NodeSet({0, 1}));
    CHECK(box(0.3) == doctest::Approx(1.0));
    CHECK(box(1.5) == 0.0);

    const auto tent = peano_kernel(NodeSet({0, 1, 2}));
    CHECK(tent(1.0) == doctest::Approx(1.0));
    CHECK(tent(0.0) == doctest::Approx(0.0));
    CHECK(tent(2.0) == doctest::Approx(0.0));
    CHECK(tent(0.5) == doctest::Approx(0.5));
    CHECK(tent.integral() == doctest::Approx(1.0).epsilon(1e-14));

    const auto quad = peano_kernel(NodeSet({0, 1, 2, 3}));
    CHECK(quad(1.5) == doctest::Approx(0.75));
    for (double node : {1.0, 2.0}) {
        CHECK(quad.derivative(node, 0, true) == doctest::Approx(quad.derivative(node, 0, false)));
        CHECK(quad.derivative(node, 1, true) == doctest::Approx(quad.derivative(node, 1, false)));
    }
}

TEST_CASE("kernel identity examples") {
    CHECK(kernel_identity_residual(Polynomial{0, 0, 1}, NodeSet({0, 1, 2})) < 1e-14);
    CHECK(kernel_identity_residual(Polynomial{0, 5, 0, 1}, NodeSet({0, 1, 2, 3})) < 1e-12);
    CHECK(kernel_identity_residual(Polynomial{3.0}, NodeSet({-1, 0.5, 2})) < 1e-14);
}

TEST_CASE("kernel matches the Cox-de Boor recursion") {
    CounterRng rng(32, 0);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + t % 6;
        const auto nodes = random_nodes(rng, n);
        const auto psi = peano_kernel(NodeSet(nodes));
        for (int i = 0; i < 50; ++i) {
            const double s = rng.uniform(nodes.front(), nodes.back());
            const double ref = m_spline(nodes, s);
            CHECK(psi(s) == doctest::Approx(ref).epsilon(1e-9).scale(1.0 / (nodes.back() - nodes.front())));
        }
        CHECK(psi(nodes.front() - 1.0) == 0.0);
        CHECK(psi(nodes.back() + 1.0) == 0.0);
    }
}
