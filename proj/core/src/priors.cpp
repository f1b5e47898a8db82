#include "qel/priors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qel {

namespace {

// Radial rule for int_0^1 db g(b): Gauss-Legendre in psi with b = sin(psi),
// psi in [0, pi/2]. The cos(psi) Jacobian turns the sqrt(1-b^2) endpoint
// behavior of the moment integrands into smooth trigonometric polynomials.
void radial_rule(int order, std::vector<double>& b, std::vector<double>& w)
{
    const QuadRule gl = gauss_legendre(order);
    b.resize(order);
    w.resize(order);
    const double quarter_pi = std::numbers::pi / 4.0;
    for (int i = 0; i < order; ++i) {
        const double psi = quarter_pi * (gl.nodes[i] + 1.0);
        b[i] = std::sin(psi);
        w[i] = quarter_pi * gl.weights[i] * std::cos(psi);
    }
}

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

IsotropicPrior IsotropicPrior::point_mass(double b0)
{
    if (b0 < 0.0 || b0 > 1.0 + 1e-12)
        throw BlochNormExceeded("point_mass: b0 outside [0, 1]");
    IsotropicPrior p;
    p.point_ = true;
    p.b0_ = std::min(b0, 1.0);
    p.nodes_.push_back({p.b0_, 1.0, 0.0});
    return p;
}

IsotropicPrior IsotropicPrior::density(std::function<double(double)> f_r,
                                       int radial_nodes)
{
    if (radial_nodes < 2)
        throw Error("density: radial_nodes must be >= 2");
    IsotropicPrior p;
    p.order_ = radial_nodes;
    p.f_r_ = std::move(f_r);

    std::vector<double> b, w;
    radial_rule(radial_nodes, b, w);

    double i0 = 0.0;
    std::vector<double> raw(radial_nodes);
    for (int i = 0; i < radial_nodes; ++i) {
        raw[i] = p.f_r_(b[i]);
        if (raw[i] < 0.0)
            throw NegativeDensity("density: f_r negative at a quadrature node");
        i0 += 4.0 * std::numbers::pi * b[i] * b[i] * raw[i] * w[i];
    }
    if (!(i0 > 0.0))
        throw NormalizationImpossible("density: zeroth moment is not positive");

    p.rescale_ = 1.0 / i0;
    p.nodes_.resize(radial_nodes);
    for (int i = 0; i < radial_nodes; ++i) {
        const double f = raw[i] * p.rescale_;
        p.nodes_[i] = {b[i], 4.0 * std::numbers::pi * b[i] * b[i] * f * w[i], f};
    }
    return p;
}

IsotropicPrior IsotropicPrior::from_table(
    const std::vector<std::pair<double, double>>& rows, int radial_nodes)
{
    if (rows.size() < 2)
        throw EmptyTable("from_table: need at least two rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first < -1e-12 || rows[i].first > 1.0 + 1e-12)
            throw NonMonotonicAbscissa("from_table: b outside [0, 1]");
        if (i > 0 && rows[i].first <= rows[i - 1].first)
            throw NonMonotonicAbscissa("from_table: b not strictly increasing");
        if (rows[i].second < 0.0)
            throw NegativeDensity("from_table: negative density value");
    }
    auto table = rows; // owned by the interpolant
    auto interp = [table](double b) {
        if (b <= table.front().first)
            return table.front().second;
        if (b >= table.back().first)
            return table.back().second;
        auto hi = std::upper_bound(
            table.begin(), table.end(), b,
            [](double v, const auto& row) { return v < row.first; });
        auto lo = hi - 1;
        const double t = (b - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    };
    return density(interp, radial_nodes);
}

double IsotropicPrior::moment(double alpha) const
{
    if (point_)
        return std::pow((1.0 - b0_ * b0_) / 4.0, alpha);
    double out = 0.0;
    for (const RadialNode& n : nodes_)
        out += n.weight * std::pow((1.0 - n.b * n.b) / 4.0, alpha);
    return out;
}

IsotropicPrior IsotropicPrior::with_radial_order(int radial_nodes) const
{
    if (point_)
        return *this;
    return density(f_r_, radial_nodes);
}

IsotropicPrior prior_pure()
{
    return IsotropicPrior::point_mass(1.0);
}

IsotropicPrior prior_uniform_ball(int radial_nodes)
{
    const double c = 3.0 / (4.0 * std::numbers::pi);
    return IsotropicPrior::density([c](double) { return c; }, radial_nodes);
}

IsotropicPrior prior_from_table(
    const std::vector<std::pair<double, double>>& rows, int radial_nodes)
{
    return IsotropicPrior::from_table(rows, radial_nodes);
}

IsotropicPrior load_prior_table(const std::string& path, int radial_nodes)
{
    std::ifstream in(path);
    if (!in)
        throw FileFormatError("cannot open prior table: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw EmptyTable("prior table is empty: " + path);
    {
        std::string header = trim(line);
        header.erase(std::remove_if(header.begin(), header.end(),
                                    [](char c) { return c == ' '; }),
                     header.end());
        if (header != "b,f")
            throw FileFormatError("prior table must start with header 'b,f': " +
                                  path);
    }

    std::vector<std::pair<double, double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty())
            continue;
        std::istringstream ss(t);
        double b = 0.0, f = 0.0;
        char comma = 0;
        if (!(ss >> b >> comma >> f) || comma != ',')
            throw FileFormatError("prior table: bad row at line " +
                                  std::to_string(lineno));
        rows.emplace_back(b, f);
    }
    return IsotropicPrior::from_table(rows, radial_nodes);
}

} // namespace qel
