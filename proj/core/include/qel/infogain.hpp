#ifndef QEL_INFOGAIN_HPP
#define QEL_INFOGAIN_HPP

#include <optional>
#include <string>
#include <vector>

#include "qel/povm.hpp"
#include "qel/priors.hpp"
#include "qel/quadrature.hpp"
#include "qel/states.hpp"

namespace qel {

struct OutcomeGain {
    std::string label;
    double p_ap = 0.0;   // a-priori outcome probability
    double k_bits = 0.0; // Kullback gain of the posterior, bits
    bool null_outcome = false;
};

struct GainReport {
    std::vector<OutcomeGain> outcomes;
    double average_gain = 0.0; // sum_i p_ap(i) k_i, bits
    // Independent evaluation as difference of prior and mean posterior
    // differential entropies; absent for point-mass priors where the
    // differential entropies diverge but the Kullback stays finite.
    std::optional<double> entropy_difference;
    int n_copies = 1;
    QuadratureOrders orders;

    std::string to_csv() const;  // header "label,p_ap,k_bits"
    std::string to_json() const; // mirrors the field names above
};

// Tr[M rho(b)^{x n}], clamped to [0, 1]. Throws DimensionMismatch unless the
// element dimension is 2^n.
double outcome_prob(const PovmElement& element, const BlochVector& b, int n);

// P_ap(i) = int d^3b f(b) P_i(b) over the radial x angular grid.
std::vector<double> apriori_prob(const Povm& m, const IsotropicPrior& prior,
                                 int n, const QuadratureOrders& orders = {});

// K_i = int d^3b f(b) (P_i/P_ap) log2(P_i/P_ap) in bits, the prior-measure
// form (exact for point masses; x log x = 0 at x = 0). Throws NullOutcome if
// P_ap(i) <= 1e-14.
double kullback_outcome(const Povm& m, int i, const IsotropicPrior& prior,
                        int n, const QuadratureOrders& orders = {});

// Full report: per-outcome probabilities and gains, their average, and (for
// densities) the entropy-difference cross-check on the same grid.
GainReport average_gain(const Povm& m, const IsotropicPrior& prior, int n,
                        const QuadratureOrders& orders = {});

} // namespace qel

#endif
