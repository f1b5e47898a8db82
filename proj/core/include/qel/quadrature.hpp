#ifndef QEL_QUADRATURE_HPP
#define QEL_QUADRATURE_HPP

#include <vector>

namespace qel {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1], nodes ascending. Deterministic (Newton on
// the Legendre recurrence, fixed iteration policy).
QuadRule gauss_legendre(int order);

// Quadrature orders used by the gain engine: radial Gauss-Legendre order,
// mu = cos(theta) Gauss-Legendre order, and the uniform phi grid size.
struct QuadratureOrders {
    int radial = 64;
    int mu = 64;
    int phi = 128;
};

// Angular grid over the unit sphere: Gauss-Legendre in mu, uniform in phi
// with equal weights 2*pi/count. Combined weights sum to 4*pi.
struct AngularGrid {
    QuadRule mu;
    std::vector<double> phi;
    double phi_weight;

    explicit AngularGrid(int mu_order = 64, int phi_count = 128);
};

} // namespace qel

#endif
