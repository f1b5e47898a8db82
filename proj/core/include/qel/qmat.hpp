#ifndef QEL_QMAT_HPP
#define QEL_QMAT_HPP

#include <complex>

#include <Eigen/Dense>

#include "qel/errors.hpp"

namespace qel {

// Dense complex matrix; all operators (states, POVM elements, spin
// projectors) are concrete values of this type. Supported envelope is
// dim <= 2^8 = 256.
using CMatrix = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// max_ij |A - A^dagger|
double hermiticity_residual(const CMatrix& a);

// Tensor (Kronecker) product: row index i*b.rows()+k, column j*b.cols()+l
// holds a(i,j)*b(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

struct HermEig {
    Eigen::VectorXd eigenvalues; // ascending
    CMatrix eigenvectors;        // orthonormal columns, same order
};

// Eigendecomposition of a Hermitian matrix. Throws NotHermitian if
// hermiticity_residual(a) > herm_tol.
HermEig herm_eig(const CMatrix& a, double herm_tol = 1e-12);

// True iff the minimum eigenvalue is >= -tol. Throws NotHermitian.
bool is_psd(const CMatrix& a, double tol);

// Principal square root of a PSD matrix; eigenvalues in [-1e-10, 0) are
// clamped to zero before the root. Throws NotPsd below -1e-10.
CMatrix psd_sqrt(const CMatrix& a);

} // namespace qel

#endif
