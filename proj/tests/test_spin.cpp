#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <qel/spin.hpp>
#include <qel/states.hpp>

using qel::CMatrix;
using qel::cplx;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("local spin commutation relations") {
    auto s = qel::local_spin(2, 1);
    CMatrix comm = s.sx * s.sy - s.sy * s.sx;
    CHECK(max_abs(comm - cplx(0, 1) * s.sz) < 1e-14);

    // operators on different sites commute
    auto t = qel::local_spin(2, 2);
    CHECK(max_abs(s.sx * t.sz - t.sz * s.sx) == 0.0);

    CHECK_THROWS_AS(qel::local_spin(2, 3), qel::SiteOutOfRange);
    CHECK_THROWS_AS(qel::local_spin(0, 1), qel::CopyCountOutOfRange);
}

TEST_CASE("partial casimir spectrum for two qubits") {
    CMatrix s2 = qel::partial_spin_sq(2, 2);
    auto eig = qel::herm_eig(s2);
    // singlet 0, triplet s(s+1) = 2 three-fold
    CHECK(eig.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i)
        CHECK(eig.eigenvalues(i) == doctest::Approx(2.0).epsilon(1e-12));

    // S^2_(1) = 3/4 I
    CMatrix s1 = qel::partial_spin_sq(2, 1);
    CHECK(max_abs(s1 - 0.75 * CMatrix::Identity(4, 4)) < 1e-14);
}

TEST_CASE("spin blocks for n = 1, 2, 3") {
    auto b1 = qel::spin_blocks(1);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0].dimension == 2);
    CHECK(b1[0].labels.empty());

    auto b2 = qel::spin_blocks(2);
    REQUIRE(b2.size() == 2);
    CHECK(b2[0].dimension == 3);
    CHECK(b2[0].labels == std::vector<double>{1.0});
    CHECK(b2[1].dimension == 1);
    CHECK(b2[1].labels == std::vector<double>{0.0});

    auto b3 = qel::spin_blocks(3);
    REQUIRE(b3.size() == 3);
    CHECK(b3[0].dimension == 4);
    CHECK(b3[0].labels == std::vector<double>{1.0, 1.5});
    CHECK(b3[1].dimension == 2);
    CHECK(b3[1].labels == std::vector<double>{1.0, 0.5});
    CHECK(b3[2].dimension == 2);
    CHECK(b3[2].labels == std::vector<double>{0.0, 0.5});

    CHECK_THROWS_AS(qel::spin_blocks(7), qel::CopyCountOutOfRange);
}

TEST_CASE("blocks resolve the identity and are idempotent") {
    for (int n = 2; n <= 4; ++n) {
        auto blocks = qel::spin_blocks(n);
        const int dim = 1 << n;
        CMatrix sum = CMatrix::Zero(dim, dim);
        int total_dim = 0;
        for (const auto& blk : blocks) {
            sum += blk.projector;
            total_dim += blk.dimension;
            CHECK(max_abs(blk.projector * blk.projector - blk.projector) <
                  1e-10);
            CHECK(qel::hermiticity_residual(blk.projector) < 1e-12);
            CHECK(std::abs(blk.projector.trace().real() - blk.dimension) <
                  1e-10);
        }
        CHECK(total_dim == dim);
        CHECK(max_abs(sum - CMatrix::Identity(dim, dim)) < 1e-10);
    }
}

TEST_CASE("blocks commute with n-copy states") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.57, 0.57);
    for (int n = 2; n <= 3; ++n) {
        auto blocks = qel::spin_blocks(n);
        for (int t = 0; t < 5; ++t) {
            auto rho = qel::n_copies(
                qel::rho_from_bloch({u(rng), u(rng), u(rng)}), n);
            for (const auto& blk : blocks)
                CHECK(max_abs(blk.projector * rho - rho * blk.projector) <
                      1e-12);
        }
    }
}

TEST_CASE("symmetric projector") {
    CHECK(max_abs(qel::symmetric_projector(1) - CMatrix::Identity(2, 2)) ==
          0.0);

    for (int n = 2; n <= 5; ++n) {
        CMatrix p = qel::symmetric_projector(n);
        CHECK(p.rows() == (1 << n));
        CHECK(max_abs(p * p - p) < 1e-12);
        CHECK(std::abs(p.trace().real() - (n + 1)) < 1e-12);
    }

    // matches the top spin block
    auto blocks = qel::spin_blocks(3);
    CHECK(max_abs(qel::symmetric_projector(3) - blocks[0].projector) < 1e-9);

    CHECK_THROWS_AS(qel::symmetric_projector(9), qel::CopyCountOutOfRange);
}
