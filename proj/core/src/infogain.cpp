#include "qel/infogain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

namespace qel {

namespace {

constexpr double kNullThreshold = 1e-14;

// Neumaier compensated accumulator: deterministic and immune to the mild
// cancellation of ~1e6-term quadrature sums.
struct Accum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v)
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

double xlog2(double x)
{
    return x > 1e-300 ? std::log2(x) : 0.0;
}

// Coefficients of Tr[M rho(b)^{x n}] in the Pauli-string basis:
// Tr[M rho^{x n}] = sum_s c[s] * prod_j v[digit_j(s)], v = (1, bx, by, bz),
// with site 1 the most significant base-4 digit. Pauli strings have exactly
// one nonzero per row, so each trace costs 2^n operations.
std::vector<double> pauli_coefficients(const CMatrix& m, int n)
{
    const int dim = 1 << n;
    const std::size_t strings = std::size_t(1) << (2 * n);
    std::vector<double> coeff(strings);
    for (std::size_t s = 0; s < strings; ++s) {
        cplx trace = 0.0;
        for (int row = 0; row < dim; ++row) {
            int col = 0;
            cplx factor = 1.0;
            for (int site = 0; site < n; ++site) {
                const int d =
                    static_cast<int>((s >> (2 * (n - 1 - site))) & 3u);
                const int rbit = (row >> (n - 1 - site)) & 1;
                int cbit = rbit;
                switch (d) {
                case 1: cbit = 1 - rbit; break;                          // sx
                case 2: cbit = 1 - rbit;                                 // sy
                    factor *= rbit == 0 ? cplx(0, -1) : cplx(0, 1);
                    break;
                case 3:                                                  // sz
                    if (rbit == 1)
                        factor = -factor;
                    break;
                default: break;                                          // I
                }
                col = (col << 1) | cbit;
            }
            trace += m(col, row) * factor;
        }
        coeff[s] = trace.real() / static_cast<double>(dim);
    }
    return coeff;
}

// v = (1, bx, by, bz) monomials for all 4^n strings, same digit convention.
void build_monomials(const double v[4], int n, std::vector<double>& mono)
{
    mono[0] = 1.0;
    std::size_t len = 1;
    for (int site = 0; site < n; ++site) {
        for (std::size_t idx = len; idx-- > 0;) {
            const double base = mono[idx];
            for (int d = 3; d >= 0; --d)
                mono[idx * 4 + d] = base * v[d];
        }
        len *= 4;
    }
}

struct EngineSetup {
    IsotropicPrior prior;
    AngularGrid angular;
    std::vector<std::vector<double>> coeffs;
    int n;

    EngineSetup(const Povm& m, const IsotropicPrior& pr, int n_copies,
                const QuadratureOrders& orders)
        : prior(pr.is_point_mass() ||
                        pr.radial_order() == orders.radial
                    ? pr
                    : pr.with_radial_order(orders.radial)),
          angular(orders.mu, orders.phi),
          n(n_copies)
    {
        if (n_copies < 1 || n_copies > 8)
            throw CopyCountOutOfRange("gain: n must be in 1..8");
        if (m.dim() != (1 << n_copies))
            throw DimensionMismatch("gain: POVM dimension != 2^n");
        coeffs.reserve(m.size());
        for (const PovmElement& e : m.elements())
            coeffs.push_back(pauli_coefficients(e.op, n_copies));
    }

    // Calls fn(node_weight, radial_index, probabilities) at every node in a
    // fixed order; prob[e] is clamped at 0.
    template <typename Fn> void for_each_node(Fn&& fn) const
    {
        const std::size_t n_elems = coeffs.size();
        const std::size_t n_strings = std::size_t(1) << (2 * n);
        std::vector<double> mono(n_strings);
        std::vector<double> prob(n_elems);
        const double angular_norm = 1.0 / (4.0 * std::numbers::pi);

        const auto& radial = prior.radial_nodes();
        for (std::size_t ri = 0; ri < radial.size(); ++ri) {
            const double b = radial[ri].b;
            const double wr = radial[ri].weight;
            if (wr == 0.0)
                continue;
            for (std::size_t mi = 0; mi < angular.mu.nodes.size(); ++mi) {
                const double mu = angular.mu.nodes[mi];
                const double wmu = angular.mu.weights[mi];
                const double sin_theta = std::sqrt(std::max(1.0 - mu * mu, 0.0));
                for (std::size_t pi = 0; pi < angular.phi.size(); ++pi) {
                    const double phi = angular.phi[pi];
                    const double v[4] = {1.0, b * sin_theta * std::cos(phi),
                                         b * sin_theta * std::sin(phi), b * mu};
                    build_monomials(v, n, mono);
                    for (std::size_t e = 0; e < n_elems; ++e) {
                        double p = 0.0;
                        const double* c = coeffs[e].data();
                        for (std::size_t s = 0; s < n_strings; ++s)
                            p += c[s] * mono[s];
                        prob[e] = p > 0.0 ? p : 0.0;
                    }
                    const double w =
                        wr * wmu * angular.phi_weight * angular_norm;
                    fn(w, ri, prob);
                }
            }
        }
    }
};

std::vector<double> compute_apriori(const EngineSetup& setup)
{
    std::vector<Accum> acc(setup.coeffs.size());
    setup.for_each_node(
        [&](double w, std::size_t, const std::vector<double>& prob) {
            for (std::size_t e = 0; e < prob.size(); ++e)
                acc[e].add(w * prob[e]);
        });
    std::vector<double> p_ap(acc.size());
    for (std::size_t e = 0; e < acc.size(); ++e)
        p_ap[e] = acc[e].get();
    return p_ap;
}

std::string fmt_g15(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

} // namespace

double outcome_prob(const PovmElement& element, const BlochVector& b, int n)
{
    if (n < 1 || n > 8)
        throw CopyCountOutOfRange("outcome_prob: n must be in 1..8");
    if (element.op.rows() != (1 << n))
        throw DimensionMismatch("outcome_prob: element dimension != 2^n");
    const CMatrix state = n_copies(rho_from_bloch(b), n);
    const double p = (element.op * state).trace().real();
    return std::clamp(p, 0.0, 1.0);
}

std::vector<double> apriori_prob(const Povm& m, const IsotropicPrior& prior,
                                 int n, const QuadratureOrders& orders)
{
    return compute_apriori(EngineSetup(m, prior, n, orders));
}

double kullback_outcome(const Povm& m, int i, const IsotropicPrior& prior,
                        int n, const QuadratureOrders& orders)
{
    if (i < 0 || static_cast<std::size_t>(i) >= m.size())
        throw Error("kullback_outcome: outcome index out of range");
    const GainReport report = average_gain(m, prior, n, orders);
    if (report.outcomes[i].null_outcome)
        throw NullOutcome("kullback_outcome: outcome '" +
                          report.outcomes[i].label +
                          "' has zero a-priori probability");
    return report.outcomes[i].k_bits;
}

GainReport average_gain(const Povm& m, const IsotropicPrior& prior, int n,
                        const QuadratureOrders& orders)
{
    const EngineSetup setup(m, prior, n, orders);
    const std::vector<double> p_ap = compute_apriori(setup);
    const std::size_t n_elems = p_ap.size();

    // Second pass: Kullback terms in the prior-measure form, and (for
    // densities) the posterior-entropy pieces of the identity check.
    const bool density = !setup.prior.is_point_mass();
    std::vector<Accum> k_acc(n_elems);
    std::vector<Accum> hc_acc(density ? n_elems : 0);
    const auto& radial = setup.prior.radial_nodes();

    setup.for_each_node(
        [&](double w, std::size_t ri, const std::vector<double>& prob) {
            for (std::size_t e = 0; e < n_elems; ++e) {
                if (p_ap[e] <= kNullThreshold)
                    continue;
                const double ratio = prob[e] / p_ap[e];
                if (ratio > 0.0)
                    k_acc[e].add(w * ratio * xlog2(ratio));
                if (density && prob[e] > 0.0) {
                    const double fc = radial[ri].density * ratio;
                    hc_acc[e].add(w * prob[e] * xlog2(fc));
                }
            }
        });

    GainReport report;
    report.n_copies = n;
    report.orders = orders;
    report.outcomes.resize(n_elems);

    Accum average;
    for (std::size_t e = 0; e < n_elems; ++e) {
        OutcomeGain& out = report.outcomes[e];
        out.label = m.elements()[e].label;
        out.p_ap = p_ap[e];
        out.null_outcome = p_ap[e] <= kNullThreshold;
        out.k_bits = out.null_outcome ? 0.0 : k_acc[e].get();
        average.add(out.p_ap * out.k_bits);
    }
    report.average_gain = average.get();

    if (density) {
        // H[f] - mean posterior entropy, both over d^3b on the same grid.
        Accum h_prior;
        for (const RadialNode& node : radial)
            if (node.weight > 0.0)
                h_prior.add(-node.weight * xlog2(node.density));
        Accum h_post;
        for (std::size_t e = 0; e < n_elems; ++e)
            if (p_ap[e] > kNullThreshold)
                h_post.add(-hc_acc[e].get());
        report.entropy_difference = h_prior.get() - h_post.get();
    }
    return report;
}

std::string GainReport::to_csv() const
{
    std::string out = "label,p_ap,k_bits\n";
    for (const OutcomeGain& o : outcomes) {
        out += o.label;
        out += ',';
        out += fmt_g15(o.p_ap);
        out += ',';
        out += fmt_g15(o.k_bits);
        out += '\n';
    }
    return out;
}

std::string GainReport::to_json() const
{
    nlohmann::ordered_json j;
    j["n_copies"] = n_copies;
    j["orders"] = {{"radial", orders.radial},
                   {"mu", orders.mu},
                   {"phi", orders.phi}};
    j["outcomes"] = nlohmann::ordered_json::array();
    for (const OutcomeGain& o : outcomes) {
        j["outcomes"].push_back({{"label", o.label},
                                 {"p_ap", o.p_ap},
                                 {"k_bits", o.k_bits},
                                 {"null_outcome", o.null_outcome}});
    }
    j["average_gain"] = average_gain;
    if (entropy_difference)
        j["entropy_difference"] = *entropy_difference;
    else
        j["entropy_difference"] = nullptr;
    return j.dump(2) + "\n";
}

} // namespace qel
