#include "qel/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

namespace qel {

namespace {

const double log2e = std::numbers::log2e;

double xlog2(double x)
{
    return x > 1e-300 ? std::log2(x) : 0.0;
}

double log2_1p(double x)
{
    return std::log1p(x) * log2e;
}

// [(1+b)^2 log2(1+b) - (1-b)^2 log2(1-b)] / b, continued to b = 0, 1.
double bracket1(double b)
{
    if (b < 1e-4)
        return log2e * (2.0 + (2.0 / 3.0) * b * b);
    if (b >= 1.0 - 1e-14)
        return 4.0;
    const double p = 1.0 + b;
    const double q = 1.0 - b;
    return (p * p * log2_1p(b) - q * q * log2_1p(-b)) / b;
}

// [(1+b)^3 log2(1+b) - (1-b)^3 log2(1-b)] / b + (1-b^2) log2(1-b^2),
// continued to b = 0, 1.
double bracket2(double b)
{
    if (b < 1e-4)
        return log2e * (2.0 + (8.0 / 3.0) * b * b);
    if (b >= 1.0 - 1e-14)
        return 8.0;
    const double p = 1.0 + b;
    const double q = 1.0 - b;
    const double s = 1.0 - b * b;
    return (p * p * p * log2_1p(b) - q * q * q * log2_1p(-b)) / b +
           s * log2_1p(-b * b);
}

// Radial average of a function of b against the prior measure 4 pi b^2 f db.
template <typename Fn>
double radial_mean(const IsotropicPrior& prior, Fn&& fn)
{
    double sum = 0.0;
    for (const RadialNode& node : prior.radial_nodes())
        sum += node.weight * fn(node.b);
    return sum;
}

std::string fmt_g15(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

} // namespace

double delta_i1(const IsotropicPrior& prior)
{
    return radial_mean(prior, bracket1) / 4.0 - log2e / 2.0;
}

double delta_i2(const IsotropicPrior& prior)
{
    const double i1 = prior.moment(1.0);
    const double mean = radial_mean(prior, bracket2) / 4.0;
    const double r = 1.0 - i1;
    return mean - r * (2.0 * log2e / 3.0) - r * xlog2(r / 3.0) -
           i1 * xlog2(i1) - 2.0;
}

double f_ap(const IsotropicPrior& prior)
{
    return 0.5 + prior.moment(0.5);
}

double delta_f1(const IsotropicPrior& prior)
{
    const double i1 = prior.moment(1.0);
    const double ih = prior.moment(0.5);
    const double t = (1.0 - 4.0 * i1) / 6.0;
    return std::sqrt(ih * ih + t * t) - ih;
}

double delta_f2(const IsotropicPrior& prior)
{
    const double i1 = prior.moment(1.0);
    const double ih = prior.moment(0.5);
    const double i32 = prior.moment(1.5);
    const double d = ih - i32;
    const double t = (1.0 - 4.0 * i1) / 4.0;
    return std::sqrt(d * d + t * t) + i32 - ih;
}

double schmidt_gain(double p, const IsotropicPrior& prior,
                    const QuadratureOrders& orders, SchmidtPath path)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw SchmidtParamOutOfRange("schmidt_gain: p must be in [0,1]");

    const IsotropicPrior pr =
        prior.is_point_mass() || prior.radial_order() == orders.radial
            ? prior
            : prior.with_radial_order(orders.radial);
    const double i1 = pr.moment(1.0);
    const double two_p_m1 = 2.0 * p - 1.0;
    const double ell_coeff = 2.0 * std::sqrt(std::max(p * (1.0 - p), 0.0));
    const QuadRule mu_rule = gauss_legendre(orders.mu);

    if (path == SchmidtPath::pre_phi) {
        // Direct grid evaluation of the defining integral, kept as a
        // transcription guard for the integrated form below.
        const AngularGrid ang(orders.mu, orders.phi);
        double sum = 0.0;
        for (const RadialNode& node : pr.radial_nodes()) {
            const double b = node.b;
            double inner = 0.0;
            for (std::size_t j = 0; j < ang.mu.nodes.size(); ++j) {
                const double mu = ang.mu.nodes[j];
                const double k = 1.0 + b * b * mu * mu + two_p_m1 * 2.0 * b * mu;
                const double l = ell_coeff * b * b * (1.0 - mu * mu);
                double phi_sum = 0.0;
                for (double phi : ang.phi) {
                    const double h =
                        std::max(k + l * std::cos(2.0 * phi), 0.0);
                    phi_sum += h * xlog2(3.0 * h / (1.0 - i1));
                }
                inner += ang.mu.weights[j] * ang.phi_weight * phi_sum;
            }
            sum += node.weight * inner;
        }
        return sum / (8.0 * std::numbers::pi);
    }

    // phi integrated out in closed form:
    //   int_0^{2pi} ln(k + l cos u) du       = 2 pi ln((k + sqrt(k^2-l^2))/2)
    //   int_0^{2pi} cos u ln(k + l cos u) du = 2 pi (k - sqrt(k^2-l^2))/l
    const double c = std::log2(3.0) + log2e - 1.0 - xlog2(1.0 - i1);
    double sum = 0.0;
    for (const RadialNode& node : pr.radial_nodes()) {
        const double b = node.b;
        double inner = 0.0;
        for (std::size_t j = 0; j < mu_rule.nodes.size(); ++j) {
            const double mu = mu_rule.nodes[j];
            const double k = 1.0 + b * b * mu * mu + two_p_m1 * 2.0 * b * mu;
            const double l = ell_coeff * b * b * (1.0 - mu * mu);
            const double s = std::sqrt(std::max(k * k - l * l, 0.0));
            inner += mu_rule.weights[j] *
                     ((1.0 + b * b * mu * mu) * c + k * xlog2(k + s) -
                      s * log2e);
        }
        sum += node.weight * inner;
    }
    return sum / 4.0;
}

std::vector<CapacityRow> capacity_table(long n_max)
{
    if (n_max < 1 || n_max > 1000000)
        throw Error("capacity_table: n_max must be in 1..1e6");
    std::vector<CapacityRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) {
        CapacityRow row;
        row.n = n;
        const double nn = static_cast<double>(n);
        row.compressed_qubits = std::log2(nn + 1.0);
        row.gain_bits = row.compressed_qubits - nn / (nn + 1.0) * log2e;
        row.bits_per_raw_qubit = row.gain_bits / nn;
        row.bits_per_compressed_qubit = row.gain_bits / row.compressed_qubits;
        rows.push_back(row);
    }
    return rows;
}

std::string capacity_csv(const std::vector<CapacityRow>& rows)
{
    std::string out = "n,gain_bits,compressed_qubits,bits_per_raw_qubit,"
                      "bits_per_compressed_qubit\n";
    for (const CapacityRow& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += fmt_g15(r.gain_bits);
        out += ',';
        out += fmt_g15(r.compressed_qubits);
        out += ',';
        out += fmt_g15(r.bits_per_raw_qubit);
        out += ',';
        out += fmt_g15(r.bits_per_compressed_qubit);
        out += '\n';
    }
    return out;
}

std::string capacity_json(const std::vector<CapacityRow>& rows)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const CapacityRow& r : rows) {
        j.push_back({{"n", r.n},
                     {"gain_bits", r.gain_bits},
                     {"compressed_qubits", r.compressed_qubits},
                     {"bits_per_raw_qubit", r.bits_per_raw_qubit},
                     {"bits_per_compressed_qubit", r.bits_per_compressed_qubit}});
    }
    return j.dump(2) + "\n";
}

} // namespace qel
