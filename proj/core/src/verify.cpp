#include "qel/verify.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "qel/analytic.hpp"
#include "qel/infogain.hpp"
#include "qel/optimize.hpp"
#include "qel/povm.hpp"
#include "qel/priors.hpp"
#include "qel/qmat.hpp"
#include "qel/quadrature.hpp"
#include "qel/spin.hpp"
#include "qel/states.hpp"

namespace qel {

namespace {

const double log2e = std::numbers::log2e;

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Reporter {
    std::vector<CheckResult> results;

    // pass iff measured <= tol
    void bound(const std::string& name, double measured, double tol,
               const std::string& what)
    {
        results.push_back({name, measured <= tol,
                           what + " = " + num(measured) + " (tol " +
                               num(tol) + ")"});
    }

    void flag(const std::string& name, bool pass, const std::string& detail)
    {
        results.push_back({name, pass, detail});
    }
};

double max_abs(const CMatrix& a)
{
    return a.cwiseAbs().maxCoeff();
}

CMatrix random_gaussian(int dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a(i, j) = cplx(g(rng), g(rng));
    return a;
}

CMatrix random_hermitian(int dim, std::mt19937_64& rng)
{
    const CMatrix g = random_gaussian(dim, rng);
    return 0.5 * (g + g.adjoint());
}

BlochVector random_bloch(std::mt19937_64& rng, double max_norm = 0.999)
{
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    while (true) {
        const BlochVector b{uni(rng), uni(rng), uni(rng)};
        if (b.norm() <= max_norm)
            return b;
    }
}

CMatrix pauli_matrix(int which)
{
    CMatrix p(2, 2);
    switch (which) {
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: p << 1, 0, 0, -1; break;
    }
    return p;
}

// Two-outcome POVM {E, I-E} with E a random contraction.
Povm random_qubit_povm(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> uni(0.1, 1.0);
    const CMatrix g = random_gaussian(2, rng);
    const CMatrix gram = g.adjoint() * g;
    const double top = herm_eig(gram).eigenvalues.maxCoeff();
    const CMatrix e = gram / (top * (1.0 + uni(rng)));
    return Povm::make({{"e", e}, {"rest", CMatrix::Identity(2, 2) - e}});
}

// Rank-one POVM on dim 2^n from `count` random vectors v_i:
// M_i = G^{-1/2} |v_i><v_i| G^{-1/2} with G = sum |v_i><v_i|.
Povm random_rank_one_povm(int n, int count, std::mt19937_64& rng)
{
    const int dim = 1 << n;
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<CMatrix> vecs;
    CMatrix gram = CMatrix::Zero(dim, dim);
    for (int i = 0; i < count; ++i) {
        CMatrix v(dim, 1);
        for (int r = 0; r < dim; ++r)
            v(r, 0) = cplx(g(rng), g(rng));
        vecs.push_back(v);
        gram += v * v.adjoint();
    }
    const HermEig eig = herm_eig(gram);
    CMatrix inv_root = CMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k)
        inv_root += eig.eigenvectors.col(k) *
                    eig.eigenvectors.col(k).adjoint() /
                    std::sqrt(eig.eigenvalues(k));
    std::vector<PovmElement> elements;
    for (int i = 0; i < count; ++i) {
        const CMatrix w = inv_root * vecs[i];
        elements.push_back(
            {"v" + std::to_string(i + 1), w * w.adjoint()});
    }
    return Povm::make(std::move(elements));
}

// Product z-basis measurement on two copies; |01>, |10> straddle the
// triplet/singlet split, so spin-block refinement is nontrivial on it.
Povm zz_basis_povm()
{
    std::vector<PovmElement> elements;
    const char* names[4] = {"00", "01", "10", "11"};
    for (int k = 0; k < 4; ++k) {
        CMatrix m = CMatrix::Zero(4, 4);
        m(k, k) = 1.0;
        elements.push_back({names[k], std::move(m)});
    }
    return Povm::unchecked(std::move(elements));
}

double povm_validity_defect(const Povm& m)
{
    const ValidationReport r = validate(m);
    double worst = r.completeness_residual;
    for (const auto& [label, eig] : r.min_eigenvalues)
        worst = std::max(worst, -eig);
    return worst;
}

// ---- module suites -------------------------------------------------------

void check_qmat(Reporter& rep, std::mt19937_64& rng)
{
    CMatrix expect(4, 4);
    expect << 0, 0, 1, 0, //
        0, 0, 0, -1,      //
        1, 0, 0, 0,       //
        0, -1, 0, 0;
    rep.bound("qmat.kron_values",
              max_abs(kron(pauli_matrix(1), pauli_matrix(3)) - expect), 1e-15,
              "max|sx x sz - expected|");

    double assoc = 0.0;
    for (int t = 0; t < 5; ++t) {
        const CMatrix a = random_hermitian(2, rng);
        const CMatrix b = random_hermitian(2, rng);
        const CMatrix c = random_hermitian(2, rng);
        assoc = std::max(assoc,
                         max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))));
        assoc = std::max(assoc, std::abs(kron(a, b).trace().real() -
                                         a.trace().real() *
                                             b.trace().real()));
    }
    rep.bound("qmat.kron_associativity_and_trace", assoc, 1e-12,
              "associativity/trace-product defect, 5 random triples");

    double recon = 0.0;
    bool ascending = true;
    for (int dim : {2, 4, 8, 16})
        for (int t = 0; t < 50; ++t) {
            const CMatrix a = random_hermitian(dim, rng);
            const HermEig eig = herm_eig(a);
            recon = std::max(recon,
                             max_abs(eig.eigenvectors *
                                         eig.eigenvalues.asDiagonal() *
                                         eig.eigenvectors.adjoint() -
                                     a));
            recon = std::max(recon,
                             max_abs(eig.eigenvectors.adjoint() *
                                         eig.eigenvectors -
                                     CMatrix::Identity(dim, dim)));
            for (int i = 1; i < eig.eigenvalues.size(); ++i)
                ascending = ascending &&
                            eig.eigenvalues(i - 1) <= eig.eigenvalues(i);
        }
    rep.flag("qmat.herm_eig_reconstruction", recon <= 1e-10 && ascending,
             "reconstruction/orthonormality defect = " + num(recon) +
                 " over 200 matrices, dims 2..16 (tol 1e-10)");

    double sq = 0.0;
    for (int dim : {2, 4}) {
        const CMatrix h = random_gaussian(dim, rng);
        const CMatrix psd = h.adjoint() * h;
        const CMatrix root = psd_sqrt(psd);
        sq = std::max(sq, max_abs(root * root - psd) /
                              std::max(1.0, max_abs(psd)));
    }
    rep.bound("qmat.psd_sqrt_squares_back", sq, 1e-9,
              "relative max|sqrt(B)^2 - B|, dims 2 and 4");
}

void check_quadrature(Reporter& rep)
{
    const QuadRule rule = gauss_legendre(16);
    double worst = 0.0;
    for (int k = 0; k <= 31; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * std::pow(rule.nodes[i], k);
        const double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
        worst = std::max(worst, std::abs(sum - exact));
    }
    rep.bound("quadrature.gl_polynomial_exactness", worst, 1e-13,
              "max|int x^k - exact|, k<=31");

    double sym = 0.0;
    double wsum = 0.0;
    const std::size_t n = rule.nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        sym = std::max(sym, std::abs(rule.nodes[i] + rule.nodes[n - 1 - i]));
        sym = std::max(sym,
                       std::abs(rule.weights[i] - rule.weights[n - 1 - i]));
        wsum += rule.weights[i];
    }
    sym = std::max(sym, std::abs(wsum - 2.0));
    rep.bound("quadrature.gl_symmetry", sym, 1e-14,
              "node/weight symmetry and weight sum");
}

void check_states(Reporter& rep, std::mt19937_64& rng)
{
    const BlochVector b{0.3, -0.4, 0.5};
    const QubitState s = rho_from_bloch(b);
    double worst = std::abs(s.matrix.trace().real() - 1.0);
    worst = std::max(worst, hermiticity_residual(s.matrix));
    const double comps[3] = {b.x, b.y, b.z};
    for (int k = 0; k < 3; ++k)
        worst = std::max(
            worst, std::abs((s.matrix * pauli_matrix(k + 1)).trace().real() -
                            comps[k]));
    worst = std::max(worst, -herm_eig(s.matrix).eigenvalues.minCoeff());
    rep.bound("states.rho_from_bloch_properties", worst, 1e-14,
              "trace/hermiticity/moments/positivity defect");

    const CMatrix triple = n_copies(s, 3);
    double defect = std::abs(triple.trace().real() - 1.0);
    const CMatrix z1 = kron(kron(pauli_matrix(3), CMatrix::Identity(2, 2)),
                            CMatrix::Identity(2, 2));
    defect = std::max(defect,
                      std::abs((triple * z1).trace().real() - b.z));
    rep.flag("states.n_copy_structure",
             triple.rows() == 8 && defect <= 1e-13,
             "dim = 8, trace/local-moment defect = " + num(defect) +
                 " (tol 1e-13)");

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double prop = 0.0;  // properties 1, 3, 4, 6
    double cross = 0.0; // matrix-root path vs closed form
    for (int t = 0; t < 200; ++t) {
        const QubitState r1 = rho_from_bloch(random_bloch(rng));
        const QubitState r2 = rho_from_bloch(random_bloch(rng));
        const double f = fidelity(r1, r2);
        prop = std::max(prop, std::max(-f, f - 1.0));
        prop = std::max(prop, std::abs(f - fidelity(r2, r1)));
        cross = std::max(cross, std::abs(f - fidelity_closed(r1, r2)));

        const CMatrix u = random_unitary2(rng);
        const QubitState u1{r1.bloch, u * r1.matrix * u.adjoint()};
        const QubitState u2{r2.bloch, u * r2.matrix * u.adjoint()};
        prop = std::max(prop, std::abs(fidelity(u1, u2) - f));

        BlochVector pole = random_bloch(rng);
        const double nn = pole.norm();
        pole = {pole.x / nn, pole.y / nn, pole.z / nn};
        const QubitState psi = rho_from_bloch(pole);
        prop = std::max(prop,
                        std::abs(fidelity(psi, r1) -
                                 (psi.matrix * r1.matrix).trace().real()));

        const double p = unit(rng);
        const QubitState mix{
            {}, p * r1.matrix + (1.0 - p) * r2.matrix};
        const QubitState probe = rho_from_bloch(random_bloch(rng));
        prop = std::max(prop, p * fidelity(probe, r1) +
                                  (1.0 - p) * fidelity(probe, r2) -
                                  fidelity(probe, mix));
    }
    rep.bound("states.fidelity_properties", prop, 1e-9,
              "range/symmetry/unitary/pure/concavity defect, 200 pairs");
    rep.bound("states.fidelity_closed_form_cross_check", cross, 1e-10,
              "max|matrix root - closed form|, 200 pairs");

    double multi = 0.0;
    for (int t = 0; t < 20; ++t) {
        const QubitState r1 = rho_from_bloch(random_bloch(rng));
        const QubitState r2 = rho_from_bloch(random_bloch(rng));
        const double f = fidelity(r1, r2);
        for (int n = 2; n <= 3; ++n)
            multi = std::max(multi,
                             std::abs(fidelity_general(n_copies(r1, n),
                                                       n_copies(r2, n)) -
                                      std::pow(f, n)));
    }
    rep.bound("states.fidelity_multiplicativity", multi, 1e-9,
              "|F(rho^{xn}, rho'^{xn}) - F^n|, n = 2, 3");

    double overlap_defect = 0.0;
    for (int t = 0; t < 200; ++t) {
        const QubitState r1 = rho_from_bloch(random_bloch(rng));
        const QubitState r2 = rho_from_bloch(random_bloch(rng));
        const double f = fidelity(r1, r2);
        for (int k = 0; k < 50; ++k) {
            const double ov =
                wootters_overlap(r1, r2, random_qubit_povm(rng));
            overlap_defect = std::max(overlap_defect, f - ov);
            overlap_defect = std::max(overlap_defect, ov - 1.0);
        }
    }
    rep.bound("states.wootters_overlap_bound", overlap_defect, 1e-9,
              "max(F - overlap, overlap - 1), 200 pairs x 50 POVMs");
}

void check_spin(Reporter& rep, std::mt19937_64& rng)
{
    const auto blocks2 = spin_blocks(2);
    const auto blocks3 = spin_blocks(3);
    const auto blocks4 = spin_blocks(4);
    auto dims = [](const std::vector<SpinBlock>& blocks) {
        std::vector<int> d;
        for (const SpinBlock& b : blocks)
            d.push_back(b.dimension);
        return d;
    };
    const bool dims_ok =
        dims(blocks2) == std::vector<int>{3, 1} &&
        dims(blocks3) == std::vector<int>{4, 2, 2} &&
        dims(blocks4) == std::vector<int>{5, 3, 3, 1, 3, 1} &&
        blocks3[0].labels == std::vector<double>{1.0, 1.5} &&
        blocks3[1].labels == std::vector<double>{1.0, 0.5} &&
        blocks3[2].labels == std::vector<double>{0.0, 0.5};
    rep.flag("spin.block_dimensions", dims_ok,
             "n=2: 3+1, n=3: 4+2+2, n=4: 5+3+3+1+3+1 with descending labels");

    double worst = 0.0;
    CMatrix sum = CMatrix::Zero(8, 8);
    for (std::size_t i = 0; i < blocks3.size(); ++i) {
        const CMatrix& p = blocks3[i].projector;
        sum += p;
        worst = std::max(worst, max_abs(p * p - p));
        for (std::size_t j = i + 1; j < blocks3.size(); ++j)
            worst = std::max(worst, max_abs(p * blocks3[j].projector));
    }
    worst = std::max(worst, max_abs(sum - CMatrix::Identity(8, 8)));
    rep.bound("spin.block_projector_resolution", worst, 1e-10,
              "idempotence/orthogonality/completeness defect, n=3");

    double sym_worst = max_abs(symmetric_projector(2) - blocks2[0].projector);
    sym_worst = std::max(sym_worst, max_abs(symmetric_projector(3) -
                                            blocks3[0].projector));
    sym_worst = std::max(sym_worst, max_abs(symmetric_projector(4) -
                                            blocks4[0].projector));
    rep.bound("spin.symmetric_projector_top_block", sym_worst, 1e-9,
              "max|Dicke projector - top block|, n=2..4");

    double comm = 0.0;
    for (int n = 2; n <= 4; ++n) {
        std::vector<CMatrix> s2;
        for (int alpha = 2; alpha <= n; ++alpha)
            s2.push_back(partial_spin_sq(n, alpha));
        for (int t = 0; t < 50; ++t) {
            const CMatrix state = n_copies(rho_from_bloch(random_bloch(rng)), n);
            for (const CMatrix& op : s2)
                comm = std::max(comm, max_abs(op * state - state * op));
        }
        for (std::size_t i = 0; i < s2.size(); ++i)
            for (std::size_t j = i + 1; j < s2.size(); ++j)
                comm = std::max(comm,
                                max_abs(s2[i] * s2[j] - s2[j] * s2[i]));
    }
    rep.bound("spin.partial_spin_commutation", comm, 1e-10,
              "[S^2_(a), rho^{xn}] and [S^2_(a), S^2_(b)], n = 2..4");

    const CMatrix s2 = partial_spin_sq(3, 3);
    double casimir = 0.0;
    for (const SpinBlock& blk : blocks3) {
        const double s = blk.labels.back();
        casimir = std::max(casimir, max_abs(s2 * blk.projector -
                                            s * (s + 1.0) * blk.projector));
    }
    rep.bound("spin.casimir_on_blocks", casimir, 1e-8,
              "max|S^2 P - s(s+1) P|, n=3");
}

void check_priors(Reporter& rep, std::mt19937_64& rng)
{
    auto weight_sum = [](const IsotropicPrior& p) {
        double sum = 0.0;
        for (const RadialNode& node : p.radial_nodes())
            sum += node.weight;
        return std::abs(sum - 1.0);
    };
    const IsotropicPrior uniform = prior_uniform_ball();
    double worst = weight_sum(uniform);
    worst = std::max(worst, weight_sum(prior_pure()));
    rep.bound("priors.radial_normalization", worst, 1e-13,
              "|sum nu_i - 1|");

    double moment_defect =
        std::abs(uniform.moment(0.5) - 3.0 * std::numbers::pi / 32.0);
    moment_defect =
        std::max(moment_defect, std::abs(uniform.moment(1.0) - 0.1));
    moment_defect = std::max(
        moment_defect,
        std::abs(uniform.moment(1.5) - 3.0 * std::numbers::pi / 256.0));
    rep.bound("priors.uniform_moment_closed_forms", moment_defect, 1e-9,
              "I_{1/2}, I_1, I_{3/2} vs closed forms");

    std::uniform_real_distribution<double> pos(0.1, 1.1);
    std::vector<IsotropicPrior> ladder_priors = {
        uniform, prior_pure(), IsotropicPrior::point_mass(0.37)};
    for (int t = 0; t < 3; ++t) {
        std::vector<std::pair<double, double>> rows;
        for (int i = 0; i <= 20; ++i)
            rows.push_back({i / 20.0, pos(rng)});
        ladder_priors.push_back(prior_from_table(rows, 64));
    }
    double ladder = 0.0;
    for (const IsotropicPrior& p : ladder_priors) {
        ladder = std::max(ladder, std::abs(p.moment(0.0) - 1.0));
        for (double alpha : {0.0, 0.5, 1.0, 1.5})
            ladder = std::max(ladder, 4.0 * p.moment(alpha + 1.0) -
                                          p.moment(alpha));
    }
    rep.bound("priors.moment_ladder", ladder, 1e-12,
              "max(|I_0 - 1|, 4 I_{a+1} - I_a), 6 priors");

    std::vector<std::pair<double, double>> rows;
    for (int i = 0; i <= 50; ++i) {
        const double b = i / 50.0;
        rows.push_back({b, b});
    }
    const IsotropicPrior linear = prior_from_table(rows, 64);
    rep.bound("priors.table_linear_density",
              std::abs(linear.moment(1.0) - 1.0 / 12.0), 1e-12,
              "|I_1 - 1/12| for f(b) ~ b");

    const IsotropicPrior point = IsotropicPrior::point_mass(0.6);
    double pm_defect = std::abs(point.moment(0.5) - std::sqrt(0.16));
    pm_defect = std::max(pm_defect, std::abs(point.moment(1.0) - 0.16));
    bool throws = false;
    try {
        IsotropicPrior::point_mass(1.5);
    } catch (const BlochNormExceeded&) {
        throws = true;
    }
    rep.flag("priors.point_mass_moments", pm_defect <= 1e-15 && throws,
             "I_alpha exact at b0 = 0.6, b0 > 1 rejected");
}

void check_povm(Reporter& rep, std::mt19937_64& rng)
{
    const Povm vn = von_neumann_z();
    const Povm tetra = tetrahedron_povm();
    rep.bound("povm.builtin_validity",
              std::max(povm_validity_defect(vn), povm_validity_defect(tetra)),
              1e-12, "completeness/positivity defect, both builtins");

    const std::vector<double> p_ap =
        apriori_prob(tetra, prior_uniform_ball(), 2);
    double ap_defect = std::abs(p_ap[0] - 0.1);
    for (int i = 1; i < 5; ++i)
        ap_defect = std::max(ap_defect, std::abs(p_ap[i] - 0.225));
    rep.bound("povm.tetra_apriori_under_uniform", ap_defect, 1e-9,
              "P(singlet) = I_1, P(vertex) = (1 - I_1)/4");

    CMatrix f1(2, 2), f2(2, 2);
    f1 << 0.7, 0, 0, 0.2;
    f2 << 0.3, 0, 0, 0.8;
    const Povm fuzzy = Povm::make({{"f1", f1}, {"f2", f2}});
    const Povm refined = rank_one_refinement(fuzzy);
    bool rank_ok = refined.size() == 4;
    for (const PovmElement& e : refined.elements()) {
        const auto eig = herm_eig(e.op).eigenvalues;
        rank_ok = rank_ok && eig(0) <= 1e-12; // only one nonzero eigenvalue
    }
    rep.flag("povm.rank_one_refinement_valid",
             rank_ok && povm_validity_defect(refined) <= 1e-12 &&
                 refined.elements()[0].label == "f1#0",
             "4 rank-one pieces, complete, labels <parent>#k");

    const Povm zz = zz_basis_povm();
    const Povm split = spin_block_refinement(zz, 2);
    bool split_ok = split.size() == 6 && povm_validity_defect(split) <= 1e-10;
    double tr_defect = 1.0;
    if (split_ok) {
        split_ok = split.elements()[1].label == "01|s=1" &&
                   split.elements()[2].label == "01|s=0";
        tr_defect =
            std::abs(split.elements()[1].op.trace().real() - 0.5) +
            std::abs(split.elements()[2].op.trace().real() - 0.5);
    }
    bool rank_guard = false;
    try {
        CMatrix odd = CMatrix::Zero(4, 4), rest = CMatrix::Identity(4, 4);
        odd(1, 1) = odd(2, 2) = 1.0;
        rest -= odd;
        spin_block_refinement(Povm::make({{"odd", odd}, {"rest", rest}}), 2);
    } catch (const RankNotOne&) {
        rank_guard = true;
    }
    rep.flag("povm.spin_block_refinement_splits",
             split_ok && tr_defect <= 1e-10 && rank_guard,
             "zz basis -> 6 pieces, |01> halves across s = 1, 0; rank > 1 "
             "rejected");

    double prob_sum = 0.0;
    for (int t = 0; t < 20; ++t) {
        const BlochVector b = random_bloch(rng);
        const QubitState state = rho_from_bloch(b);
        for (std::size_t i = 0; i < fuzzy.size(); ++i) {
            double pieces = 0.0;
            for (const PovmElement& e : refined.elements())
                if (e.label.rfind(fuzzy.elements()[i].label + "#", 0) == 0)
                    pieces += outcome_prob(e, b, 1);
            prob_sum = std::max(
                prob_sum,
                std::abs(pieces - outcome_prob(fuzzy.elements()[i], b, 1)));
        }
        for (std::size_t i = 0; i < zz.size(); ++i) {
            double pieces = 0.0;
            for (const PovmElement& e : split.elements())
                if (e.label.rfind(zz.elements()[i].label + "|", 0) == 0)
                    pieces += outcome_prob(e, b, 2);
            prob_sum = std::max(
                prob_sum,
                std::abs(pieces - outcome_prob(zz.elements()[i], b, 2)));
        }
    }
    rep.bound("povm.refinement_probability_sum_rule", prob_sum, 1e-10,
              "per-parent probability defect, 20 random states");

    const auto path = std::filesystem::temp_directory_path() /
                      "qel_verify_povm_roundtrip.csv";
    {
        std::ofstream out(path);
        out << "label,row,col,re,im\n";
        char buf[128];
        for (const PovmElement& e : tetra.elements())
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) {
                    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.17g,%.17g\n",
                                  e.label.c_str(), r, c, e.op(r, c).real(),
                                  e.op(r, c).imag());
                    out << buf;
                }
    }
    const Povm loaded = load_povm_csv(path.string());
    double rt_defect = 0.0;
    bool rt_ok = loaded.size() == tetra.size() && loaded.dim() == 4;
    if (rt_ok)
        for (std::size_t i = 0; i < loaded.size(); ++i) {
            rt_ok = rt_ok &&
                    loaded.elements()[i].label == tetra.elements()[i].label;
            rt_defect = std::max(rt_defect,
                                 max_abs(loaded.elements()[i].op -
                                         tetra.elements()[i].op));
        }
    std::filesystem::remove(path);
    rep.flag("povm.csv_roundtrip", rt_ok && rt_defect <= 1e-12,
             "tetra -> csv -> load, max diff = " + num(rt_defect));

    const CMatrix u = random_unitary2(rng);
    rep.bound("povm.rotation_preserves_validity",
              povm_validity_defect(rotate_povm(tetra, u, 2)), 1e-10,
              "validity defect after random U^{x2}");
}

void check_infogain(Reporter& rep, std::mt19937_64& rng, std::uint64_t seed)
{
    const IsotropicPrior pure = prior_pure();
    const IsotropicPrior uniform = prior_uniform_ball();
    const Povm vn = von_neumann_z();
    const Povm tetra = tetrahedron_povm();

    const double k1 = average_gain(vn, pure, 1, {64, 512, 32}).average_gain;
    rep.bound("infogain.vn_pure_closed_form",
              std::abs(k1 - (1.0 - log2e / 2.0)), 1e-9,
              "|K - (1 - log2(e)/2)|, mu order 512");

    const double k2 = average_gain(tetra, pure, 2).average_gain;
    rep.bound("infogain.tetra_pure_closed_form",
              std::abs(k2 - (std::log2(3.0) - 2.0 * log2e / 3.0)), 1e-9,
              "|K - (log2 3 - (2/3) log2 e)|");

    const GainReport vn_u = average_gain(vn, uniform, 1);
    const GainReport tetra_u = average_gain(tetra, uniform, 2);
    const double cf = std::max(
        std::abs(vn_u.average_gain - delta_i1(uniform)),
        std::abs(tetra_u.average_gain - delta_i2(uniform)));
    rep.bound("infogain.uniform_closed_form_match", cf, 1e-6,
              "max closed-form mismatch, n = 1 and n = 2");

    const double ent = std::max(
        std::abs(vn_u.average_gain - *vn_u.entropy_difference),
        std::abs(tetra_u.average_gain - *tetra_u.entropy_difference));
    rep.bound("infogain.entropy_identity", ent, 1e-12,
              "|K - (H[f] - mean posterior H)| on shared grid");

    std::uniform_real_distribution<double> unit(1e-6, 1.0);
    double scalar = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const double x1 = unit(rng), x2 = unit(rng);
        const double y1 = unit(rng), y2 = unit(rng);
        scalar = std::max(scalar,
                          (x1 + x2) * std::log((x1 + x2) / (y1 + y2)) -
                              x1 * std::log(x1 / y1) -
                              x2 * std::log(x2 / y2));
    }
    rep.bound("infogain.scalar_splitting_inequality", scalar, 1e-12,
              "max violation over 1e4 random quadruples");

    const Povm frame = random_rank_one_povm(2, 6, rng);
    std::vector<PovmElement> split_elems;
    std::uniform_real_distribution<double> frac(0.2, 0.8);
    for (const PovmElement& e : frame.elements()) {
        const double t = frac(rng);
        split_elems.push_back({e.label + "#0", t * e.op});
        split_elems.push_back({e.label + "#1", (1.0 - t) * e.op});
    }
    const Povm frame_split = Povm::unchecked(std::move(split_elems));
    const GainReport frame_rep = average_gain(frame, uniform, 2);
    const GainReport split_rep = average_gain(frame_split, uniform, 2);
    double theorem = 0.0;
    for (std::size_t i = 0; i < frame.size(); ++i) {
        const double parent = frame_rep.outcomes[i].p_ap *
                              frame_rep.outcomes[i].k_bits;
        const double pieces =
            split_rep.outcomes[2 * i].p_ap * split_rep.outcomes[2 * i].k_bits +
            split_rep.outcomes[2 * i + 1].p_ap *
                split_rep.outcomes[2 * i + 1].k_bits;
        theorem = std::max(theorem, parent - pieces);
    }
    rep.bound("infogain.theorem_splitting_monotonicity", theorem, 1e-9,
              "max(P_ap K - sum of split pieces), random rank-one POVM");

    const IsotropicPrior half = IsotropicPrior::point_mass(0.5);
    const QuadratureOrders dbl{128, 128, 256};
    double stab = 0.0;
    stab = std::max(stab, std::abs(average_gain(vn, uniform, 1, dbl)
                                       .average_gain -
                                   vn_u.average_gain));
    stab = std::max(stab, std::abs(average_gain(tetra, uniform, 2, dbl)
                                       .average_gain -
                                   tetra_u.average_gain));
    stab = std::max(
        stab, std::abs(average_gain(vn, half, 1, dbl).average_gain -
                       average_gain(vn, half, 1).average_gain));
    stab = std::max(
        stab, std::abs(average_gain(tetra, half, 2, dbl).average_gain -
                       average_gain(tetra, half, 2).average_gain));
    const QuadratureOrders pbase{64, 256, 256};
    const QuadratureOrders pdbl{128, 512, 512};
    stab = std::max(
        stab, std::abs(average_gain(vn, pure, 1, pdbl).average_gain -
                       average_gain(vn, pure, 1, pbase).average_gain));
    stab = std::max(
        stab, std::abs(average_gain(tetra, pure, 2, pdbl).average_gain -
                       average_gain(tetra, pure, 2, pbase).average_gain));
    rep.bound("infogain.order_doubling_stability", stab, 1e-8,
              "max|K(doubled orders) - K(base)|, 6 combinations");

    const Povm with_null = Povm::unchecked(
        {{"all", CMatrix::Identity(2, 2)}, {"nothing", CMatrix::Zero(2, 2)}});
    const GainReport null_rep = average_gain(with_null, uniform, 1);
    bool null_ok = null_rep.outcomes[1].null_outcome &&
                   null_rep.outcomes[1].k_bits == 0.0 &&
                   std::abs(null_rep.average_gain) <= 1e-12;
    try {
        kullback_outcome(with_null, 1, uniform, 1);
        null_ok = false;
    } catch (const NullOutcome&) {
    }
    rep.flag("infogain.null_outcome_flagging", null_ok,
             "zero element flagged, K = 0, kullback_outcome throws");

    CMatrix f1(2, 2), f2(2, 2);
    f1 << 0.7, 0, 0, 0.2;
    f2 << 0.3, 0, 0, 0.8;
    const Povm fuzzy = Povm::make({{"f1", f1}, {"f2", f2}});
    const double k_fuzzy = average_gain(fuzzy, uniform, 1).average_gain;
    const double k_refined =
        average_gain(rank_one_refinement(fuzzy), uniform, 1).average_gain;
    const Povm zz = zz_basis_povm();
    const double k_zz = average_gain(zz, uniform, 2).average_gain;
    const double k_split =
        average_gain(spin_block_refinement(zz, 2), uniform, 2).average_gain;
    rep.flag("infogain.refinement_monotonicity",
             k_refined >= k_fuzzy - 1e-9 && k_split >= k_zz - 1e-9,
             "rank-one: " + num(k_fuzzy) + " -> " + num(k_refined) +
                 "; spin: " + num(k_zz) + " -> " + num(k_split));

    std::vector<PovmElement> merged_elems;
    merged_elems.push_back({"sigma+n1", tetra.elements()[0].op +
                                            tetra.elements()[1].op});
    for (std::size_t i = 2; i < tetra.size(); ++i)
        merged_elems.push_back(tetra.elements()[i]);
    const Povm merged = Povm::make(merged_elems);
    const double k_merged = average_gain(merged, uniform, 2).average_gain;
    rep.flag("infogain.merge_decreases_gain",
             k_merged <= tetra_u.average_gain + 1e-12,
             "merged " + num(k_merged) + " <= " +
                 num(tetra_u.average_gain));

    const double iso = std::max(
        rotation_invariance_check(vn, uniform, 1, 3, seed),
        rotation_invariance_check(tetra, uniform, 2, 3, seed + 1));
    rep.bound("infogain.rotation_isotropy", iso, 1e-8,
              "max|K(U POVM U+) - K|, 3 random U per builtin");
}

void check_analytic(Reporter& rep)
{
    const IsotropicPrior top = IsotropicPrior::point_mass(1.0);
    const IsotropicPrior bottom = IsotropicPrior::point_mass(0.0);
    double endpoint = std::abs(delta_i1(top) - (1.0 - log2e / 2.0));
    endpoint = std::max(endpoint,
                        std::abs(delta_i2(top) - (std::log2(3.0) -
                                                  2.0 * log2e / 3.0)));
    endpoint = std::max(endpoint, std::abs(delta_f1(top) - 1.0 / 6.0));
    endpoint = std::max(endpoint, std::abs(delta_f2(top) - 0.25));
    endpoint = std::max(endpoint, std::abs(delta_i1(bottom)));
    endpoint = std::max(endpoint, std::abs(delta_i2(bottom)));
    endpoint = std::max(endpoint, std::abs(delta_f1(bottom)));
    endpoint = std::max(endpoint, std::abs(delta_f2(bottom)));
    rep.bound("analytic.endpoint_values", endpoint, 1e-13,
              "gains at b0 = 1 and b0 = 0 vs closed forms");

    const IsotropicPrior uniform = prior_uniform_ball();
    double ref = std::abs(delta_i1(uniform) - 0.158427892815);
    ref = std::max(ref, std::abs(delta_i2(uniform) - 0.428721886001));
    ref = std::max(ref, std::abs(f_ap(uniform) -
                                 (0.5 + 3.0 * std::numbers::pi / 32.0)));
    rep.bound("analytic.uniform_reference_values", ref, 1e-9,
              "di1/di2/f_ap vs frozen references");

    const IsotropicPrior pure = prior_pure();
    double paths = 0.0;
    for (double p : {0.0, 0.3, 1.0})
        paths = std::max(
            paths,
            std::abs(schmidt_gain(p, uniform, {}, SchmidtPath::post_phi) -
                     schmidt_gain(p, uniform, {}, SchmidtPath::pre_phi)));
    paths = std::max(
        paths, std::abs(schmidt_gain(1.0, pure, {}, SchmidtPath::post_phi) -
                        schmidt_gain(1.0, pure, {}, SchmidtPath::pre_phi)));
    const double analytic_pure =
        2.0 / 3.0 * std::log2(3.0) + 4.0 / 3.0 - 4.0 / 9.0 * log2e;
    const double anchor =
        std::abs(schmidt_gain(1.0, pure) - analytic_pure);
    rep.flag("analytic.schmidt_paths_agree",
             paths <= 1e-6 && anchor <= 1e-8,
             "two-path diff = " + num(paths) + ", pure p=1 anchor = " +
                 num(anchor));

    const auto rows = capacity_table(1000);
    double cap = std::abs(rows[0].gain_bits - delta_i1(top));
    cap = std::max(cap,
                   std::abs(rows[2].gain_bits - (2.0 - 0.75 * log2e)));
    cap = std::max(cap, std::abs(rows[2].bits_per_compressed_qubit -
                                 rows[2].gain_bits / 2.0));
    rep.bound("analytic.capacity_low_n_values", cap, 1e-14,
              "n = 1, 3 rows vs closed forms");

    bool monotone = true;
    bool below_one = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0)
            monotone = monotone && rows[i].bits_per_compressed_qubit >=
                                       rows[i - 1].bits_per_compressed_qubit;
        below_one = below_one && rows[i].bits_per_compressed_qubit < 1.0;
    }
    rep.flag("analytic.capacity_compressed_monotone", monotone && below_one,
             "bits/compressed qubit nondecreasing and < 1, reaches " +
                 num(rows.back().bits_per_compressed_qubit) + " at n=1000");

    // The per-raw-qubit rate approaches log2(n)/n only like 1/ln(n); at
    // n = 1000 the measured gap is ~14.5% against the 10% target here (the
    // gap first drops below 10% near n ~ 2.2e4). Kept honest and red rather
    // than loosened.
    const double target = std::log2(1000.0) / 1000.0;
    const double gap =
        std::abs(rows.back().bits_per_raw_qubit / target - 1.0);
    rep.bound("analytic.capacity_raw_rate_asymptote", gap, 0.10,
              "|rate/(log2(n)/n) - 1| at n=1000");
}

void check_optimize(Reporter& rep, std::uint64_t seed)
{
    const IsotropicPrior uniform = prior_uniform_ball();
    const SweepResult sweep = schmidt_sweep(uniform, 101);
    bool argmax_ok = sweep.argmax_indices == std::vector<int>{0, 100};
    double sym = 0.0;
    for (int k = 0; k <= 100; ++k)
        sym = std::max(sym,
                       std::abs(sweep.values[k] - sweep.values[100 - k]));
    const double gap = sweep.values[0] - sweep.values[50];
    rep.flag("optimize.schmidt_sweep_product_argmax",
             argmax_ok && sym <= 1e-9 && gap > 0.2,
             "argmax at p = 0, 1; symmetry defect " + num(sym) +
                 "; edge-center gap " + num(gap));

    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i)
        grid.push_back(i / 20.0);
    bool monotone = true;
    bool ends = true;
    for (GainFn fn : {GainFn::di1, GainFn::di2, GainFn::df1, GainFn::df2}) {
        const SweepResult scan = purity_scan(fn, grid);
        for (std::size_t i = 1; i < scan.values.size(); ++i)
            monotone = monotone &&
                       scan.values[i] >= scan.values[i - 1] - 1e-12;
        ends = ends && !scan.argmax_indices.empty() &&
               scan.argmax_indices.back() == 20;
    }
    rep.flag("optimize.purity_scan_monotone", monotone && ends,
             "di1/di2/df1/df2 nondecreasing in b0, max at b0 = 1");

    const QuadratureOrders small{32, 32, 64};
    const double iso1 = rotation_invariance_check(
        von_neumann_z(), uniform, 1, 2, seed, small);
    const double iso2 = rotation_invariance_check(
        von_neumann_z(), uniform, 1, 2, seed, small);
    const SweepResult s1 = schmidt_sweep(uniform, 5, small);
    const SweepResult s2 = schmidt_sweep(uniform, 5, small);
    rep.flag("optimize.seeded_determinism",
             iso1 == iso2 && s1.values == s2.values,
             "repeat runs with one seed reproduce bit-identical results");
}

} // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed)
{
    Reporter rep;
    std::mt19937_64 rng(seed);
    check_qmat(rep, rng);
    check_quadrature(rep);
    check_states(rep, rng);
    check_spin(rep, rng);
    check_priors(rep, rng);
    check_povm(rep, rng);
    check_infogain(rep, rng, seed);
    check_analytic(rep);
    check_optimize(rep, seed);
    return rep.results;
}

bool all_passed(const std::vector<CheckResult>& results)
{
    for (const CheckResult& r : results)
        if (!r.pass)
            return false;
    return true;
}

std::string verification_table(const std::vector<CheckResult>& results)
{
    std::size_t width = 0;
    for (const CheckResult& r : results)
        width = std::max(width, r.name.size());
    std::string out;
    std::size_t passed = 0;
    for (const CheckResult& r : results) {
        out += r.pass ? "PASS  " : "FAIL  ";
        out += r.name;
        out.append(width - r.name.size() + 2, ' ');
        out += r.detail;
        out += '\n';
        if (r.pass)
            ++passed;
    }
    out += std::to_string(passed) + "/" + std::to_string(results.size()) +
           " checks passed\n";
    return out;
}

} // namespace qel
