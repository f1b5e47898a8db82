#include "qel/states.hpp"

#include <algorithm>
#include <cmath>

namespace qel {

QubitState rho_from_bloch(const BlochVector& b)
{
    if (b.norm() > 1.0 + 1e-12)
        throw BlochNormExceeded("rho_from_bloch: |b| exceeds 1");
    CMatrix m(2, 2);
    m << cplx((1.0 + b.z) / 2.0, 0.0), cplx(b.x / 2.0, -b.y / 2.0), //
        cplx(b.x / 2.0, b.y / 2.0), cplx((1.0 - b.z) / 2.0, 0.0);
    return {b, std::move(m)};
}

CMatrix n_copies(const QubitState& s, int n)
{
    if (n < 1 || n > 8)
        throw CopyCountOutOfRange("n_copies: n must be in 1..8");
    CMatrix out = s.matrix;
    for (int k = 1; k < n; ++k)
        out = kron(out, s.matrix);
    return out;
}

double fidelity(const QubitState& a, const QubitState& b)
{
    return fidelity_general(a.matrix, b.matrix);
}

double fidelity_closed(const QubitState& a, const QubitState& b)
{
    const double cross = (a.matrix * b.matrix).trace().real();
    const double det_a = std::max(a.matrix.determinant().real(), 0.0);
    const double det_b = std::max(b.matrix.determinant().real(), 0.0);
    return cross + 2.0 * std::sqrt(det_a * det_b);
}

namespace {

// Spectral square root with a relative eigenvalue floor: entries below
// dim * 1e-14 * lambda_max are representation noise whose square root would
// otherwise pollute the fidelity at the 1e-8 level, so they are treated as
// exact zeros. Genuinely negative spectra still throw.
CMatrix state_sqrt(const CMatrix& a)
{
    const HermEig eig = herm_eig(a);
    const double lam_max = std::max(eig.eigenvalues.maxCoeff(), 0.0);
    const double floor = static_cast<double>(a.rows()) * 1e-14 * lam_max;
    CMatrix d = CMatrix::Zero(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double lam = eig.eigenvalues[i];
        if (lam < -1e-10)
            throw NotPsd("fidelity: state has a negative eigenvalue");
        d(i, i) = lam > floor ? std::sqrt(lam) : 0.0;
    }
    return eig.eigenvectors * d * eig.eigenvectors.adjoint();
}

} // namespace

double fidelity_general(const CMatrix& a, const CMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("fidelity_general: dimension mismatch");
    // Tr sqrt(sqrt(a) b sqrt(a)) equals the nuclear norm of sqrt(a) sqrt(b);
    // summing singular values avoids taking square roots of the O(eps) noise
    // eigenvalues a spectral root of the triple product would see.
    const CMatrix cross = state_sqrt(a) * state_sqrt(b);
    const Eigen::BDCSVD<CMatrix> svd(cross);
    const double trace = svd.singularValues().sum();
    return trace * trace;
}

double wootters_overlap(const QubitState& a, const QubitState& b,
                        const Povm& m)
{
    if (m.dim() != 2)
        throw DimensionMismatch("wootters_overlap: POVM must act on dim 2");
    double sum = 0.0;
    for (const PovmElement& e : m.elements()) {
        const double pa = std::max((e.op * a.matrix).trace().real(), 0.0);
        const double pb = std::max((e.op * b.matrix).trace().real(), 0.0);
        sum += std::sqrt(pa * pb);
    }
    return sum * sum;
}

} // namespace qel
