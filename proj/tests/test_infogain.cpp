#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include <json.hpp>

#include <qel/infogain.hpp>

using qel::BlochVector;
using qel::CMatrix;
using qel::Povm;
using qel::QuadratureOrders;

namespace {

const double log2e = std::numbers::log2e;

} // namespace

TEST_CASE("outcome probabilities, one copy") {
    auto vn = qel::von_neumann_z();
    CHECK(qel::outcome_prob(vn.elements()[0], {0, 0, 0.4}, 1) ==
          doctest::Approx(0.7).epsilon(1e-14));
    CHECK(qel::outcome_prob(vn.elements()[1], {0, 0, 0.4}, 1) ==
          doctest::Approx(0.3).epsilon(1e-14));
    CHECK(qel::outcome_prob(vn.elements()[0], {0.8, 0, 0}, 1) ==
          doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(qel::outcome_prob(vn.elements()[0], {0, 0, 0.4}, 2),
                    qel::DimensionMismatch);
    CHECK_THROWS_AS(qel::outcome_prob(vn.elements()[0], {0, 0, 0.4}, 0),
                    qel::CopyCountOutOfRange);
}

TEST_CASE("outcome probabilities, tetrahedron") {
    auto tetra = qel::tetrahedron_povm();
    const double r = 1.0 / std::sqrt(3.0);
    const double verts[4][3] = {
        {r, r, r}, {r, -r, -r}, {-r, r, -r}, {-r, -r, r}};

    for (BlochVector b : {BlochVector{0.2, -0.5, 0.1},
                          BlochVector{0, 0, 0.9}, BlochVector{0, 0, 0}}) {
        double b2 = b.x * b.x + b.y * b.y + b.z * b.z;
        CHECK(std::abs(qel::outcome_prob(tetra.elements()[0], b, 2) -
                       (1 - b2) / 4) < 1e-14);
        double total = qel::outcome_prob(tetra.elements()[0], b, 2);
        for (int i = 0; i < 4; ++i) {
            double dot =
                b.x * verts[i][0] + b.y * verts[i][1] + b.z * verts[i][2];
            double expected = 3.0 / 16 * (1 + dot) * (1 + dot);
            double got = qel::outcome_prob(tetra.elements()[i + 1], b, 2);
            CHECK(std::abs(got - expected) < 1e-14);
            total += got;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("a-priori probabilities") {
    auto uniform = qel::prior_uniform_ball();
    auto ap_vn = qel::apriori_prob(qel::von_neumann_z(), uniform, 1);
    REQUIRE(ap_vn.size() == 2);
    CHECK(ap_vn[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(ap_vn[1] == doctest::Approx(0.5).epsilon(1e-13));

    // tetra under uniform: P(sigma) = I_1 = 1/10, vertices (1 - I_1)/4
    auto ap_tetra = qel::apriori_prob(qel::tetrahedron_povm(), uniform, 2);
    REQUIRE(ap_tetra.size() == 5);
    CHECK(ap_tetra[0] == doctest::Approx(0.1).epsilon(1e-9));
    for (int i = 1; i <= 4; ++i)
        CHECK(ap_tetra[i] == doctest::Approx(0.225).epsilon(1e-9));
}

TEST_CASE("von neumann on one pure copy matches the closed form") {
    auto report = qel::average_gain(qel::von_neumann_z(), qel::prior_pure(), 1,
                                    QuadratureOrders{64, 512, 32});
    CHECK(std::abs(report.average_gain - (1.0 - log2e / 2)) < 1e-9);
    CHECK_FALSE(report.entropy_difference.has_value()); // point-mass prior
    CHECK(report.outcomes[0].p_ap == doctest::Approx(0.5).epsilon(1e-13));
    // symmetric outcomes carry equal gains
    CHECK(std::abs(report.outcomes[0].k_bits - report.outcomes[1].k_bits) <
          1e-12);
}

TEST_CASE("entropy difference cross-checks the kullback average") {
    auto uniform = qel::prior_uniform_ball(32);
    auto report = qel::average_gain(qel::von_neumann_z(), uniform, 1,
                                    QuadratureOrders{32, 32, 64});
    REQUIRE(report.entropy_difference.has_value());
    CHECK(std::abs(report.average_gain - *report.entropy_difference) < 1e-10);
}

TEST_CASE("kullback outcome errors") {
    auto uniform = qel::prior_uniform_ball(16);
    QuadratureOrders small{16, 16, 32};
    CHECK_THROWS_AS(
        qel::kullback_outcome(qel::von_neumann_z(), 5, uniform, 1, small),
        qel::Error);

    // a zero element is a null outcome
    auto padded = Povm::unchecked({{"all", CMatrix::Identity(2, 2)},
                                   {"never", CMatrix::Zero(2, 2)}});
    CHECK_THROWS_AS(qel::kullback_outcome(padded, 1, uniform, 1, small),
                    qel::NullOutcome);

    auto report = qel::average_gain(padded, uniform, 1, small);
    CHECK(report.outcomes[1].null_outcome);
    CHECK(report.outcomes[1].k_bits == 0.0);
    CHECK_FALSE(report.outcomes[0].null_outcome);
    CHECK(std::abs(report.average_gain) < 1e-12); // tautological measurement
}

TEST_CASE("report serialization") {
    auto report = qel::average_gain(qel::von_neumann_z(),
                                    qel::IsotropicPrior::point_mass(0.5), 1,
                                    QuadratureOrders{16, 16, 32});
    std::string csv = report.to_csv();
    CHECK(csv.rfind("label,p_ap,k_bits\n", 0) == 0);
    CHECK(csv.find("\n+,") != std::string::npos);

    auto j = nlohmann::json::parse(report.to_json());
    CHECK(j["n_copies"] == 1);
    CHECK(j["orders"]["mu"] == 16);
    CHECK(j["outcomes"].size() == 2);
    CHECK(j["outcomes"][0]["label"] == "+");
    CHECK(j["entropy_difference"].is_null()); // point mass
    CHECK(std::abs(j["average_gain"].get<double>() - report.average_gain) <
          1e-15);

    // identical runs serialize identically
    auto report2 = qel::average_gain(qel::von_neumann_z(),
                                     qel::IsotropicPrior::point_mass(0.5), 1,
                                     QuadratureOrders{16, 16, 32});
    CHECK(report2.to_json() == report.to_json());
    CHECK(report2.to_csv() == report.to_csv());
}

TEST_CASE("dimension and copy validation") {
    auto uniform = qel::prior_uniform_ball(16);
    CHECK_THROWS_AS(
        qel::average_gain(qel::tetrahedron_povm(), uniform, 1,
                          QuadratureOrders{16, 16, 32}),
        qel::DimensionMismatch);
    CHECK_THROWS_AS(qel::apriori_prob(qel::von_neumann_z(), uniform, 0),
                    qel::CopyCountOutOfRange);
}
