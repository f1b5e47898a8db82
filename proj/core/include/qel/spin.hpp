#ifndef QEL_SPIN_HPP
#define QEL_SPIN_HPP

#include <vector>

#include "qel/qmat.hpp"

namespace qel {

struct LocalSpin {
    CMatrix sx, sy, sz;
};

// Spin-1/2 operators (sigma/2) acting on `site` (1-based) of an n-qubit
// register, identity elsewhere.
LocalSpin local_spin(int n, int site);

// S^2 of the partial sum S_(upto) = S_1 + ... + S_upto on n qubits.
// Eigenvalues have the form s(s+1).
CMatrix partial_spin_sq(int n, int upto);

// Simultaneous eigenspace of all partial Casimirs S^2_(2..n), labeled by the
// chain of partial spins (s_2, ..., s_n).
struct SpinBlock {
    std::vector<double> labels; // s values, in refinement order
    CMatrix projector;          // Hermitian idempotent on dim 2^n
    int dimension = 0;
};

// Common eigenblocks of S^2_(2), ..., S^2_(n), built by sequential eigenspace
// refinement; blocks are emitted in descending order of each refined
// eigenvalue. n <= 6.
std::vector<SpinBlock> spin_blocks(int n);

// Projector onto the fully symmetric subspace of n qubits (rank n+1). n <= 8.
CMatrix symmetric_projector(int n);

} // namespace qel

#endif
