#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <qel/povm.hpp>
#include <qel/spin.hpp>
#include <qel/states.hpp>

using qel::CMatrix;
using qel::cplx;
using qel::Povm;
using qel::PovmElement;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("built-in measurements validate") {
    auto vn = qel::von_neumann_z();
    REQUIRE(vn.size() == 2);
    CHECK(vn.dim() == 2);
    CHECK(vn.elements()[0].label == "+");
    CHECK(vn.elements()[1].label == "-");
    CHECK(qel::validate(vn).ok(1e-12));

    auto tetra = qel::tetrahedron_povm();
    REQUIRE(tetra.size() == 5);
    CHECK(tetra.dim() == 4);
    CHECK(tetra.elements()[0].label == "sigma");
    CHECK(tetra.elements()[4].label == "n4");
    auto report = qel::validate(tetra);
    CHECK(report.ok(1e-12));
    CHECK(report.completeness_residual < 1e-14);

    // singlet projector entries
    const CMatrix& s = tetra.elements()[0].op;
    CHECK(std::abs(s(1, 1) - cplx(0.5, 0)) < 1e-15);
    CHECK(std::abs(s(1, 2) - cplx(-0.5, 0)) < 1e-15);
    CHECK(std::abs(s(0, 0)) < 1e-15);

    // vertex elements have trace 3/4 and unit bloch directions
    for (int i = 1; i <= 4; ++i)
        CHECK(std::abs(tetra.elements()[i].op.trace().real() - 0.75) < 1e-14);
}

TEST_CASE("make validates inputs") {
    CMatrix i2 = CMatrix::Identity(2, 2);

    CHECK_THROWS_AS(Povm::make({}), qel::IncompletePovm);
    CHECK_THROWS_AS(Povm::make({{"half", 0.5 * i2}}), qel::IncompletePovm);

    CMatrix skew(2, 2);
    skew << 1, cplx(0, 0.2), 0, 1;
    CHECK_THROWS_AS(Povm::make({{"a", skew}, {"b", i2 - skew}}),
                    qel::NotHermitian);

    CMatrix neg(2, 2);
    neg << 1.2, 0, 0, -0.2;
    CHECK_THROWS_AS(Povm::make({{"a", neg}, {"b", i2 - neg}}),
                    qel::NonPositiveElement);

    CHECK_THROWS_AS(Povm::make({{"odd", CMatrix::Identity(3, 3)}}),
                    qel::DimensionMismatch);

    CMatrix a(2, 2), b(2, 2);
    a << 0.7, 0.1, 0.1, 0.4;
    b << 0.3, -0.1, -0.1, 0.6;
    auto m = Povm::make({{"a", a}, {"b", b}});
    CHECK(m.size() == 2);
}

TEST_CASE("rank one refinement") {
    // fuzzy two-outcome measurement splits into four rank-one pieces
    CMatrix a(2, 2), b(2, 2);
    a << 0.7, 0, 0, 0.2;
    b << 0.3, 0, 0, 0.8;
    auto fuzzy = Povm::make({{"f1", a}, {"f2", b}});
    auto refined = qel::rank_one_refinement(fuzzy);
    REQUIRE(refined.size() == 4);
    CHECK(refined.elements()[0].label == "f1#0");
    CHECK(refined.elements()[1].label == "f1#1");
    CHECK(refined.elements()[2].label == "f2#0");
    CHECK(qel::validate(refined).ok(1e-10));

    // spectral pieces of each parent sum back to the parent
    CMatrix back = refined.elements()[0].op + refined.elements()[1].op;
    CHECK(max_abs(back - a) < 1e-12);

    // already rank-one elements stay whole
    auto vn_ref = qel::rank_one_refinement(qel::von_neumann_z());
    CHECK(vn_ref.size() == 2);
}

TEST_CASE("spin block refinement") {
    // z-basis product measurement on two copies: |01>, |10> straddle the
    // triplet/singlet split, |00>, |11> sit inside the triplet
    std::vector<PovmElement> elems;
    for (int k = 0; k < 4; ++k) {
        CMatrix p = CMatrix::Zero(4, 4);
        p(k, k) = 1.0;
        std::string label = std::string(1, '0' + (k >> 1)) +
                            std::string(1, '0' + (k & 1));
        elems.push_back({label, p});
    }
    auto zz = Povm::make(std::move(elems));
    auto refined = qel::spin_block_refinement(zz, 2);
    REQUIRE(refined.size() == 6);
    CHECK(refined.elements()[0].label == "00|s=1");
    CHECK(refined.elements()[1].label == "01|s=1");
    CHECK(refined.elements()[2].label == "01|s=0");
    CHECK(std::abs(refined.elements()[1].op.trace().real() - 0.5) < 1e-12);
    CHECK(std::abs(refined.elements()[2].op.trace().real() - 0.5) < 1e-12);
    CHECK(qel::validate(refined).ok(1e-10));

    // tetrahedron elements live inside single blocks already
    auto tetra_ref = qel::spin_block_refinement(
        qel::rank_one_refinement(qel::tetrahedron_povm()), 2);
    CHECK(tetra_ref.size() == 5);
    CHECK(tetra_ref.elements()[0].label == "sigma#0|s=0");

    // rank > 1 elements are rejected
    CMatrix sym = qel::symmetric_projector(2);
    auto coarse = Povm::unchecked(
        {{"sym", sym}, {"rest", CMatrix::Identity(4, 4) - sym}});
    CHECK_THROWS_AS(qel::spin_block_refinement(coarse, 2), qel::RankNotOne);
}

TEST_CASE("refinement preserves outcome probabilities") {
    auto tetra = qel::tetrahedron_povm();
    auto refined = qel::spin_block_refinement(
        qel::rank_one_refinement(tetra), 2);
    auto rho = qel::n_copies(qel::rho_from_bloch({0.3, -0.2, 0.5}), 2);
    for (const auto& parent : tetra.elements()) {
        double p_parent = (parent.op * rho).trace().real();
        double p_pieces = 0.0;
        for (const auto& piece : refined.elements())
            if (piece.label.rfind(parent.label + "#", 0) == 0 ||
                piece.label.rfind(parent.label + "|", 0) == 0)
                p_pieces += (piece.op * rho).trace().real();
        CHECK(std::abs(p_parent - p_pieces) < 1e-12);
    }
}

TEST_CASE("rotation preserves validity") {
    CMatrix h(2, 2); // Hadamard
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    auto rotated = qel::rotate_povm(qel::tetrahedron_povm(), h, 2);
    CHECK(qel::validate(rotated).ok(1e-12));
    CHECK(rotated.elements()[0].label == "sigma");

    CHECK_THROWS_AS(qel::rotate_povm(qel::von_neumann_z(), h, 2),
                    qel::DimensionMismatch);
}

TEST_CASE("povm csv round trip") {
    auto tetra = qel::tetrahedron_povm();
    std::string path = "qel_test_povm_roundtrip.csv";
    {
        std::ofstream out(path, std::ios::trunc);
        out << "label,row,col,re,im\n";
        char buf[160];
        for (const auto& e : tetra.elements())
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) {
                    cplx v = e.op(r, c);
                    if (std::abs(v) == 0.0)
                        continue;
                    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.17g,%.17g\n",
                                  e.label.c_str(), r, c, v.real(), v.imag());
                    out << buf;
                }
    }
    auto loaded = qel::load_povm_csv(path);
    std::remove(path.c_str());
    REQUIRE(loaded.size() == tetra.size());
    for (std::size_t i = 0; i < tetra.size(); ++i) {
        CHECK(loaded.elements()[i].label == tetra.elements()[i].label);
        CHECK(max_abs(loaded.elements()[i].op - tetra.elements()[i].op) <
              1e-15);
    }

    CHECK_THROWS_AS(qel::load_povm_csv("missing_povm.csv"),
                    qel::FileFormatError);

    std::string bad = "qel_test_povm_bad.csv";
    {
        std::ofstream out(bad, std::ios::trunc);
        out << "label,row,col,re,im\nel,0,zero,1,0\n";
    }
    CHECK_THROWS_AS(qel::load_povm_csv(bad), qel::FileFormatError);
    std::remove(bad.c_str());
}
