#ifndef QEL_PRIORS_HPP
#define QEL_PRIORS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qel/errors.hpp"
#include "qel/quadrature.hpp"

namespace qel {

// One node of the radial measure: integral of d^3b f(b) g(b) over the Bloch
// ball becomes sum_i weight_i * mean-over-angles(g). Weights sum to 1.
// density is the (rescaled) radial density f_r(b) at the node; it is 0/unused
// for point masses.
struct RadialNode {
    double b;
    double weight;
    double density;
};

// Isotropic distribution f(b) over the Bloch ball: either a point mass at
// radius b0 (delta shell) or a radial density f_r on [0,1]. Densities are
// realized on a radial Gauss-Legendre rule in the arcsin variable
// (b = sin psi), which integrates the sqrt(1-b^2)-type moments the formulas
// need to machine precision; the density is rescaled on that rule so the
// zeroth moment is exactly 1.
class IsotropicPrior {
  public:
    static IsotropicPrior point_mass(double b0);
    static IsotropicPrior density(std::function<double(double)> f_r,
                                  int radial_nodes = 64);
    static IsotropicPrior from_table(
        const std::vector<std::pair<double, double>>& rows,
        int radial_nodes = 64);

    bool is_point_mass() const { return point_; }
    double point_b0() const { return b0_; }
    int radial_order() const { return order_; }
    // Factor the raw density was multiplied by to normalize I_0 to 1.
    double rescale_factor() const { return rescale_; }

    const std::vector<RadialNode>& radial_nodes() const { return nodes_; }

    // I_alpha = 4*pi * int db b^2 f_r(b) ((1-b^2)/4)^alpha; exact for point
    // masses.
    double moment(double alpha) const;

    // Same distribution realized on a different radial order (identity for
    // point masses). Used by convergence checks.
    IsotropicPrior with_radial_order(int radial_nodes) const;

  private:
    IsotropicPrior() = default;

    bool point_ = false;
    double b0_ = 0.0;
    int order_ = 0;
    double rescale_ = 1.0;
    std::function<double(double)> f_r_; // raw (pre-rescale) density
    std::vector<RadialNode> nodes_;
};

// Delta shell at b = 1 (isotropic pure states).
IsotropicPrior prior_pure();

// Uniform density over the ball, f_r = 3/(4*pi).
IsotropicPrior prior_uniform_ball(int radial_nodes = 64);

// Linear interpolation through (b, f_r) rows; b strictly increasing within
// [0,1], f_r >= 0, at least two rows. Rescaled so I_0 = 1.
IsotropicPrior prior_from_table(
    const std::vector<std::pair<double, double>>& rows, int radial_nodes = 64);

// CSV file with header "b,f".
IsotropicPrior load_prior_table(const std::string& path,
                                int radial_nodes = 64);

} // namespace qel

#endif
