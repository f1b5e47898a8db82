#ifndef QEL_OPTIMIZE_HPP
#define QEL_OPTIMIZE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qel/analytic.hpp"
#include "qel/infogain.hpp"
#include "qel/povm.hpp"
#include "qel/priors.hpp"

namespace qel {

struct SweepResult {
    std::vector<double> abscissae;
    std::vector<double> values; // bits
    std::vector<int> argmax_indices; // within tie tolerance 1e-9

    // header "<xname>,<vname>"
    std::string to_csv(const std::string& xname = "x",
                       const std::string& vname = "value") const;
    std::string to_json(const std::string& xname = "x",
                        const std::string& vname = "value") const;
};

// schmidt_gain over a uniform p grid on [0,1]; points must be odd and >= 3 so
// p = 1/2 is sampled.
SweepResult schmidt_sweep(const IsotropicPrior& prior, int points,
                          const QuadratureOrders& orders = {});

enum class GainFn { di1, di2, df1, df2 };

// Chosen closed-form gain over point-mass priors at the given b0 grid.
SweepResult purity_scan(GainFn fn, const std::vector<double>& grid);

// Max |K(rotated m) - K(m)| over `trials` random qubit unitaries applied as
// U^{x n}; isotropy of the prior makes the expected deviation quadrature
// noise only.
double rotation_invariance_check(const Povm& m, const IsotropicPrior& prior,
                                 int n, int trials, std::uint64_t seed,
                                 const QuadratureOrders& orders = {});

// Random 2x2 unitary from orthonormalized complex Gaussians.
CMatrix random_unitary2(std::mt19937_64& rng);

} // namespace qel

#endif
