#include "qel/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qel {

QuadRule gauss_legendre(int order)
{
    if (order < 1)
        throw std::invalid_argument("gauss_legendre: order must be >= 1");

    QuadRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);

    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess for the i-th root (descending).
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence: p1 = P_order(x), pp = P'_order(x).
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        // store ascending; the i-th guess is the i-th largest root
        rule.nodes[order - 1 - i] = x;
        rule.weights[order - 1 - i] = w;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
    }
    if (order % 2 == 1) { // center the middle node exactly
        rule.nodes[order / 2] = 0.0;
    }
    return rule;
}

AngularGrid::AngularGrid(int mu_order, int phi_count)
    : mu(gauss_legendre(mu_order))
{
    if (phi_count < 1)
        throw std::invalid_argument("AngularGrid: phi_count must be >= 1");
    phi.resize(phi_count);
    for (int k = 0; k < phi_count; ++k)
        phi[k] = 2.0 * std::numbers::pi * k / phi_count;
    phi_weight = 2.0 * std::numbers::pi / phi_count;
}

} // namespace qel
