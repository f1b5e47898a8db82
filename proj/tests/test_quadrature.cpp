#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include <qel/quadrature.hpp>

TEST_CASE("low-order gauss-legendre nodes") {
    auto r1 = qel::gauss_legendre(1);
    REQUIRE(r1.nodes.size() == 1);
    CHECK(r1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    auto r2 = qel::gauss_legendre(2);
    REQUIRE(r2.nodes.size() == 2);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("polynomial exactness to degree 2n-1") {
    auto r = qel::gauss_legendre(16);
    for (int k = 0; k <= 31; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            s += r.weights[i] * std::pow(r.nodes[i], k);
        double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
        CHECK(std::abs(s - exact) < 1e-13);
    }
}

TEST_CASE("nodes ascending and symmetric") {
    auto r = qel::gauss_legendre(21);
    for (std::size_t i = 1; i < r.nodes.size(); ++i)
        CHECK(r.nodes[i] > r.nodes[i - 1]);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        CHECK(std::abs(r.nodes[i] + r.nodes[r.nodes.size() - 1 - i]) < 1e-14);
        CHECK(std::abs(r.weights[i] - r.weights[r.nodes.size() - 1 - i]) <
              1e-14);
    }
}

TEST_CASE("angular grid integrates to 4 pi") {
    qel::AngularGrid g(16, 24);
    REQUIRE(g.phi.size() == 24);
    double total = 0.0;
    for (double wmu : g.mu.weights)
        total += wmu * g.phi_weight * static_cast<double>(g.phi.size());
    CHECK(total == doctest::Approx(4.0 * M_PI).epsilon(1e-13));

    // int over sphere of z^2 = 4 pi / 3
    double zz = 0.0;
    for (std::size_t i = 0; i < g.mu.nodes.size(); ++i)
        for (std::size_t j = 0; j < g.phi.size(); ++j)
            zz += g.mu.weights[i] * g.phi_weight * g.mu.nodes[i] *
                  g.mu.nodes[i];
    CHECK(zz == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));

    // int of x^2 matches by symmetry of the phi grid
    double xx = 0.0;
    for (std::size_t i = 0; i < g.mu.nodes.size(); ++i) {
        double s2 = 1.0 - g.mu.nodes[i] * g.mu.nodes[i];
        for (double phi : g.phi)
            xx += g.mu.weights[i] * g.phi_weight * s2 * std::cos(phi) *
                  std::cos(phi);
    }
    CHECK(xx == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));
}

TEST_CASE("default orders") {
    qel::QuadratureOrders o;
    CHECK(o.radial == 64);
    CHECK(o.mu == 64);
    CHECK(o.phi == 128);
}
