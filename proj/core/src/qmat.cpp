#include "qel/qmat.hpp"

#include <Eigen/Eigenvalues>

namespace qel {

double hermiticity_residual(const CMatrix& a)
{
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix kron(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

HermEig herm_eig(const CMatrix& a, double herm_tol)
{
    if (a.rows() != a.cols())
        throw DimensionMismatch("herm_eig: matrix is not square");
    if (hermiticity_residual(a) > herm_tol)
        throw NotHermitian("herm_eig: matrix is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
    if (solver.info() != Eigen::Success)
        throw Error("herm_eig: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

bool is_psd(const CMatrix& a, double tol)
{
    const HermEig e = herm_eig(a);
    return e.eigenvalues.minCoeff() >= -tol;
}

CMatrix psd_sqrt(const CMatrix& a)
{
    HermEig e = herm_eig(a);
    if (e.eigenvalues.minCoeff() < -1e-10)
        throw NotPsd("psd_sqrt: matrix has eigenvalue below -1e-10");
    Eigen::VectorXd root = e.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    return e.eigenvectors * root.asDiagonal() * e.eigenvectors.adjoint();
}

} // namespace qel
