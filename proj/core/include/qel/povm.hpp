#ifndef QEL_POVM_HPP
#define QEL_POVM_HPP

#include <string>
#include <vector>

#include "qel/qmat.hpp"

namespace qel {

struct PovmElement {
    std::string label;
    CMatrix op; // Hermitian, PSD
};

struct ValidationReport {
    // (label, min eigenvalue) per element
    std::vector<std::pair<std::string, double>> min_eigenvalues;
    // max entry of |sum_i M_i - I|
    double completeness_residual = 0.0;

    bool ok(double tol) const;
};

// Ordered, labeled resolution of the identity.
class Povm {
  public:
    // Validates (Hermiticity 1e-12, positivity/completeness against `tol`).
    // Throws NonPositiveElement / IncompletePovm / NotHermitian /
    // DimensionMismatch.
    static Povm make(std::vector<PovmElement> elements, double tol = 1e-10);
    // No validation; for internal construction of already-proven sets.
    static Povm unchecked(std::vector<PovmElement> elements);

    int dim() const { return dim_; }
    const std::vector<PovmElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

  private:
    Povm() = default;
    int dim_ = 0;
    std::vector<PovmElement> elements_;
};

ValidationReport validate(const Povm& m);

// Projective sigma_z measurement {|0><0|, |1><1|} on one qubit.
Povm von_neumann_z();

// Five-outcome measurement on two qubits: singlet projector plus
// (3/4)(|n_i><n_i|)^{x2} over the four tetrahedron directions
// (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1) / sqrt(3).
Povm tetrahedron_povm();

// Each element replaced by its spectral pieces lambda_k |v_k><v_k| with
// lambda_k > 1e-12; labels "<parent>#k".
Povm rank_one_refinement(const Povm& m);

// Each rank-one element |i><i| replaced by its projections onto the spin
// blocks of n qubits, dropping pieces with trace < 1e-12; labels
// "<parent>|s=...". Throws RankNotOne if an input element has rank > 1.
Povm spin_block_refinement(const Povm& m, int n);

// Conjugate every element by u^{x n} for a 2x2 unitary u (a global rotation
// of the measurement).
Povm rotate_povm(const Povm& m, const CMatrix& u, int n);

// CSV rows "label,row,col,re,im" (optional header line); entries not listed
// are zero; element order follows first appearance of each label.
Povm load_povm_csv(const std::string& path);

} // namespace qel

#endif
