#ifndef QEL_STATES_HPP
#define QEL_STATES_HPP

#include <cmath>

#include "qel/povm.hpp"
#include "qel/qmat.hpp"

namespace qel {

struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// rho(b) = (I + x sx + y sy + z sz)/2 together with its Bloch vector.
struct QubitState {
    BlochVector bloch;
    CMatrix matrix;
};

// Throws BlochNormExceeded if |b| > 1 + 1e-12.
QubitState rho_from_bloch(const BlochVector& b);

// rho^{x n} on dim 2^n, 1 <= n <= 8. Throws CopyCountOutOfRange.
CMatrix n_copies(const QubitState& s, int n);

// Qubit fidelity, computed by the general matrix-root formula on the 2x2
// matrices.
double fidelity(const QubitState& a, const QubitState& b);

// Closed form Tr(rho rho') + 2 sqrt(det rho det rho'), kept as a permanent
// cross-check of the matrix-root path (determinants clamped at 0 to absorb
// roundoff).
double fidelity_closed(const QubitState& a, const QubitState& b);

// General fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2 for density matrices of any
// (equal) dimension; the route to n-copy fidelities.
double fidelity_general(const CMatrix& a, const CMatrix& b);

// Measurement overlap (sum_j sqrt(Tr[rho M_j] Tr[rho' M_j]))^2; its minimum
// over POVMs is the fidelity, so it never drops below fidelity(a, b).
// Throws DimensionMismatch unless m acts on dim 2.
double wootters_overlap(const QubitState& a, const QubitState& b,
                        const Povm& m);

} // namespace qel

#endif
