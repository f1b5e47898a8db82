#ifndef QEL_ANALYTIC_HPP
#define QEL_ANALYTIC_HPP

#include <string>
#include <vector>

#include "qel/priors.hpp"
#include "qel/quadrature.hpp"

namespace qel {

// Closed-form average information gain (bits) of a projective measurement on
// one copy, as a radial integral over the prior (exact for point masses).
double delta_i1(const IsotropicPrior& prior);

// Closed-form average information gain (bits) of the five-outcome optimal
// measurement on two copies.
double delta_i2(const IsotropicPrior& prior);

// Mean guess fidelity with no measurement: 1/2 + I_{1/2}.
double f_ap(const IsotropicPrior& prior);

// Closed-form fidelity gains for the optimal one- and two-copy measurements.
double delta_f1(const IsotropicPrior& prior);
double delta_f2(const IsotropicPrior& prior);

enum class SchmidtPath {
    post_phi, // production: phi integrated out analytically
    pre_phi   // brute force: full radial x mu x phi grid
};

// Information-gain objective of the covariant symmetric measurement seeded by
// the Schmidt state sqrt(p)|++> + sqrt(1-p)|-->; maximal at the product
// states p = 0, 1. Both paths must agree; keeping the brute-force path
// permanently guards the transcription of the integrated form.
double schmidt_gain(double p, const IsotropicPrior& prior,
                    const QuadratureOrders& orders = {},
                    SchmidtPath path = SchmidtPath::post_phi);

struct CapacityRow {
    long n = 0;
    double gain_bits = 0.0;           // log2(n+1) - (n/(n+1)) log2 e
    double compressed_qubits = 0.0;   // log2(n+1)
    double bits_per_raw_qubit = 0.0;  // gain_bits / n
    double bits_per_compressed_qubit = 0.0; // gain_bits / log2(n+1)
};

// Closed-form capacity of the isotropic pure-state channel for n = 1..n_max
// (n_max <= 1e6), with symmetric-subspace compression accounting.
std::vector<CapacityRow> capacity_table(long n_max);

// CSV with header n,gain_bits,compressed_qubits,bits_per_raw_qubit,
// bits_per_compressed_qubit.
std::string capacity_csv(const std::vector<CapacityRow>& rows);
std::string capacity_json(const std::vector<CapacityRow>& rows);

} // namespace qel

#endif
