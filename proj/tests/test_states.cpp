#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <qel/states.hpp>

using qel::BlochVector;
using qel::CMatrix;
using qel::cplx;

TEST_CASE("rho from bloch vector") {
    auto maximally_mixed = qel::rho_from_bloch({0, 0, 0});
    CHECK((maximally_mixed.matrix - 0.5 * CMatrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-15);

    auto up = qel::rho_from_bloch({0, 0, 1});
    CHECK(up.matrix(0, 0) == cplx(1, 0));
    CHECK(up.matrix(1, 1) == cplx(0, 0));

    auto tilted = qel::rho_from_bloch({0.3, -0.4, 0.5});
    CHECK(std::abs(tilted.matrix.trace() - cplx(1, 0)) < 1e-15);
    CHECK(qel::hermiticity_residual(tilted.matrix) == 0.0);
    auto eig = qel::herm_eig(tilted.matrix);
    double b = tilted.bloch.norm();
    CHECK(eig.eigenvalues(0) == doctest::Approx((1 - b) / 2).epsilon(1e-14));
    CHECK(eig.eigenvalues(1) == doctest::Approx((1 + b) / 2).epsilon(1e-14));
}

TEST_CASE("bloch norm validation") {
    CHECK_THROWS_AS(qel::rho_from_bloch({0, 0, 1.001}), qel::BlochNormExceeded);
    CHECK_NOTHROW(qel::rho_from_bloch({0, 0, 1.0 + 5e-13})); // tolerance band
}

TEST_CASE("n copies") {
    auto s = qel::rho_from_bloch({0.2, 0.1, -0.7});
    CMatrix one = qel::n_copies(s, 1);
    CHECK((one - s.matrix).cwiseAbs().maxCoeff() == 0.0);

    CMatrix three = qel::n_copies(s, 3);
    CHECK(three.rows() == 8);
    CHECK(std::abs(three.trace() - cplx(1, 0)) < 1e-13);

    auto up = qel::rho_from_bloch({0, 0, 1});
    CMatrix two = qel::n_copies(up, 2);
    CHECK(std::abs(two(0, 0) - cplx(1, 0)) < 1e-15);
    CHECK(two.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-14));

    CMatrix mixed4 = qel::n_copies(qel::rho_from_bloch({0, 0, 0}), 2);
    CHECK((mixed4 - 0.25 * CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-15);

    CHECK_THROWS_AS(qel::n_copies(s, 0), qel::CopyCountOutOfRange);
    CHECK_THROWS_AS(qel::n_copies(s, 9), qel::CopyCountOutOfRange);
}

TEST_CASE("fidelity special values") {
    auto a = qel::rho_from_bloch({0.1, 0.2, 0.3});
    CHECK(qel::fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    auto up = qel::rho_from_bloch({0, 0, 1});
    auto down = qel::rho_from_bloch({0, 0, -1});
    CHECK(std::abs(qel::fidelity(up, down)) < 1e-12);

    auto mixed = qel::rho_from_bloch({0, 0, 0});
    CHECK(qel::fidelity(up, mixed) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("matrix-root and closed-form paths agree") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        BlochVector v1{u(rng), u(rng), u(rng)}, v2{u(rng), u(rng), u(rng)};
        double n1 = v1.norm(), n2 = v2.norm();
        if (n1 > 1) { v1.x /= n1 * 1.01; v1.y /= n1 * 1.01; v1.z /= n1 * 1.01; }
        if (n2 > 1) { v2.x /= n2 * 1.01; v2.y /= n2 * 1.01; v2.z /= n2 * 1.01; }
        auto a = qel::rho_from_bloch(v1), b = qel::rho_from_bloch(v2);
        CHECK(std::abs(qel::fidelity(a, b) - qel::fidelity_closed(a, b)) <
              1e-10);
    }
}

TEST_CASE("general fidelity is symmetric and multiplicative") {
    auto a = qel::rho_from_bloch({0.5, 0, 0.2});
    auto b = qel::rho_from_bloch({-0.1, 0.3, 0.4});
    double f1 = qel::fidelity(a, b);
    CHECK(qel::fidelity_general(a.matrix, b.matrix) ==
          doctest::Approx(f1).epsilon(1e-12));
    CHECK(qel::fidelity_general(b.matrix, a.matrix) ==
          doctest::Approx(f1).epsilon(1e-12));
    double f2 = qel::fidelity_general(qel::n_copies(a, 2), qel::n_copies(b, 2));
    CHECK(f2 == doctest::Approx(f1 * f1).epsilon(1e-10));
}

TEST_CASE("wootters overlap bounds fidelity") {
    auto a = qel::rho_from_bloch({0.3, 0.1, 0.4});
    auto b = qel::rho_from_bloch({-0.2, 0.5, 0.1});
    auto vn = qel::von_neumann_z();
    double w = qel::wootters_overlap(a, b, vn);
    CHECK(w >= qel::fidelity(a, b) - 1e-12);
    CHECK(w <= 1.0 + 1e-12);

    // z-diagonal states saturate the bound under the z measurement
    auto p = qel::rho_from_bloch({0, 0, 0.6});
    auto q = qel::rho_from_bloch({0, 0, -0.3});
    CHECK(qel::wootters_overlap(p, q, vn) ==
          doctest::Approx(qel::fidelity(p, q)).epsilon(1e-10));

    CHECK_THROWS_AS(qel::wootters_overlap(a, b, qel::tetrahedron_povm()),
                    qel::DimensionMismatch);
}
