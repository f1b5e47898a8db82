#include "qel/optimize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace qel {

namespace {

constexpr double kTieTol = 1e-9;

std::string fmt_g15(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::vector<int> argmax_within_tol(const std::vector<double>& values)
{
    double best = -std::numeric_limits<double>::infinity();
    for (double v : values)
        best = std::max(best, v);
    std::vector<int> idx;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] >= best - kTieTol)
            idx.push_back(static_cast<int>(i));
    return idx;
}

} // namespace

std::string SweepResult::to_csv(const std::string& xname,
                                const std::string& vname) const
{
    std::string out = xname + "," + vname + "\n";
    for (std::size_t i = 0; i < abscissae.size(); ++i) {
        out += fmt_g15(abscissae[i]);
        out += ',';
        out += fmt_g15(values[i]);
        out += '\n';
    }
    return out;
}

std::string SweepResult::to_json(const std::string& xname,
                                 const std::string& vname) const
{
    nlohmann::ordered_json j;
    j[xname] = abscissae;
    j[vname] = values;
    j["argmax_indices"] = argmax_indices;
    return j.dump(2) + "\n";
}

SweepResult schmidt_sweep(const IsotropicPrior& prior, int points,
                          const QuadratureOrders& orders)
{
    if (points < 3 || points % 2 == 0)
        throw Error("schmidt_sweep: points must be odd and >= 3");
    SweepResult res;
    res.abscissae.reserve(points);
    res.values.reserve(points);
    for (int k = 0; k < points; ++k) {
        const double p = static_cast<double>(k) / (points - 1);
        res.abscissae.push_back(p);
        res.values.push_back(schmidt_gain(p, prior, orders));
    }
    res.argmax_indices = argmax_within_tol(res.values);
    return res;
}

SweepResult purity_scan(GainFn fn, const std::vector<double>& grid)
{
    if (grid.empty())
        throw Error("purity_scan: empty grid");
    SweepResult res;
    res.abscissae = grid;
    res.values.reserve(grid.size());
    for (double b0 : grid) {
        const IsotropicPrior p = IsotropicPrior::point_mass(b0);
        double v = 0.0;
        switch (fn) {
        case GainFn::di1: v = delta_i1(p); break;
        case GainFn::di2: v = delta_i2(p); break;
        case GainFn::df1: v = delta_f1(p); break;
        case GainFn::df2: v = delta_f2(p); break;
        }
        res.values.push_back(v);
    }
    res.argmax_indices = argmax_within_tol(res.values);
    return res;
}

double rotation_invariance_check(const Povm& m, const IsotropicPrior& prior,
                                 int n, int trials, std::uint64_t seed,
                                 const QuadratureOrders& orders)
{
    const double base = average_gain(m, prior, n, orders).average_gain;
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const CMatrix u = random_unitary2(rng);
        const Povm rotated = rotate_povm(m, u, n);
        const double k = average_gain(rotated, prior, n, orders).average_gain;
        worst = std::max(worst, std::abs(k - base));
    }
    return worst;
}

CMatrix random_unitary2(std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector2cd a, b;
    for (int i = 0; i < 2; ++i) {
        a(i) = cplx(gauss(rng), gauss(rng));
        b(i) = cplx(gauss(rng), gauss(rng));
    }
    a /= a.norm();
    b -= a * a.dot(b);
    b /= b.norm();
    CMatrix u(2, 2);
    u.col(0) = a;
    u.col(1) = b;
    return u;
}

} // namespace qel
