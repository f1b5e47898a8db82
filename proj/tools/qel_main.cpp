#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qel/qel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyFailed = 3;

struct RunConfig {
    std::string prior_spec = "uniform";
    std::string povm_spec;
    int n = 1;
    long n_max = 10;
    int points = 101;
    int scan_points = 11;
    std::string gain_fn = "di1";
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 12345;
    std::string orders_flag;
};

bool parse_orders(const std::string& text, qel::QuadratureOrders& orders)
{
    int r = 0, mu = 0, phi = 0;
    char tail = 0;
    const int got =
        std::sscanf(text.c_str(), "%d,%d,%d%c", &r, &mu, &phi, &tail);
    if (got != 3 || r < 2 || mu < 2 || phi < 2)
        return false;
    orders = {r, mu, phi};
    return true;
}

// Precedence: --orders flag, then QEL_QUAD_ORDERS, then defaults.
qel::QuadratureOrders resolve_orders(const RunConfig& cfg)
{
    qel::QuadratureOrders orders;
    if (!cfg.orders_flag.empty()) {
        if (!parse_orders(cfg.orders_flag, orders))
            throw qel::Error("bad --orders '" + cfg.orders_flag +
                             "' (expected r,mu,phi)");
        return orders;
    }
    if (const char* env = std::getenv("QEL_QUAD_ORDERS")) {
        if (!parse_orders(env, orders))
            throw qel::Error(std::string("bad QEL_QUAD_ORDERS '") + env +
                             "' (expected r,mu,phi)");
        return orders;
    }
    return orders;
}

qel::IsotropicPrior make_prior(const std::string& spec, int radial_order)
{
    if (spec == "pure")
        return qel::prior_pure();
    if (spec == "uniform")
        return qel::prior_uniform_ball(radial_order);
    if (spec.rfind("point:", 0) == 0) {
        const std::string arg = spec.substr(6);
        std::size_t used = 0;
        double b0 = 0.0;
        try {
            b0 = std::stod(arg, &used);
        } catch (const std::exception&) {
            throw qel::Error("bad prior spec '" + spec + "'");
        }
        if (used != arg.size())
            throw qel::Error("bad prior spec '" + spec + "'");
        return qel::IsotropicPrior::point_mass(b0);
    }
    if (spec.rfind("table:", 0) == 0)
        return qel::load_prior_table(spec.substr(6), radial_order);
    throw qel::Error("unknown prior spec '" + spec +
                     "' (pure | uniform | point:<b0> | table:<path>)");
}

qel::Povm make_povm(const std::string& spec)
{
    if (spec == "vonneumann")
        return qel::von_neumann_z();
    if (spec == "tetra")
        return qel::tetrahedron_povm();
    if (spec.rfind("file:", 0) == 0)
        return qel::load_povm_csv(spec.substr(5));
    throw qel::Error("unknown povm spec '" + spec +
                     "' (vonneumann | tetra | file:<path>)");
}

// Reports are composed fully in memory and written in one shot so a failed
// run never leaves a partial file behind.
int emit(const std::string& path, const std::string& content)
{
    if (path.empty()) {
        std::cout << content;
        return kExitOk;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return kExitUsage;
    }
    out << content;
    out.flush();
    if (!out) {
        out.close();
        std::filesystem::remove(path);
        std::cerr << "error: write to '" << path << "' failed\n";
        return kExitUsage;
    }
    return kExitOk;
}

int run_gain(const RunConfig& cfg)
{
    const qel::QuadratureOrders orders = resolve_orders(cfg);
    const qel::IsotropicPrior prior = make_prior(cfg.prior_spec, orders.radial);
    const qel::Povm povm = make_povm(cfg.povm_spec);
    if (povm.dim() != (1 << cfg.n))
        throw qel::Error("POVM dimension " + std::to_string(povm.dim()) +
                         " does not match n=" + std::to_string(cfg.n) +
                         " copies (need dim 2^n)");
    const qel::GainReport report =
        qel::average_gain(povm, prior, cfg.n, orders);
    std::fprintf(stderr,
                 "gain: %s / %s, n=%d, orders %d,%d,%d -> %.9g bits over %zu "
                 "outcomes\n",
                 cfg.povm_spec.c_str(), cfg.prior_spec.c_str(), cfg.n,
                 orders.radial, orders.mu, orders.phi, report.average_gain,
                 report.outcomes.size());
    return emit(cfg.out_path,
                cfg.format == "json" ? report.to_json() : report.to_csv());
}

int run_moments(const RunConfig& cfg)
{
    const qel::QuadratureOrders orders = resolve_orders(cfg);
    const qel::IsotropicPrior prior = make_prior(cfg.prior_spec, orders.radial);
    const double alphas[5] = {0.0, 0.5, 1.0, 1.5, 2.0};
    std::string content;
    if (cfg.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (double a : alphas)
            j.push_back({{"alpha", a}, {"i_alpha", prior.moment(a)}});
        content = j.dump(2) + "\n";
    } else {
        content = "alpha,i_alpha\n";
        char buf[80];
        for (double a : alphas) {
            std::snprintf(buf, sizeof buf, "%.15g,%.15g\n", a,
                          prior.moment(a));
            content += buf;
        }
    }
    std::fprintf(stderr, "moments: %s, I_1 = %.9g, F_ap = %.9g\n",
                 cfg.prior_spec.c_str(), prior.moment(1.0),
                 qel::f_ap(prior));
    return emit(cfg.out_path, content);
}

int run_schmidt_sweep(const RunConfig& cfg)
{
    const qel::QuadratureOrders orders = resolve_orders(cfg);
    const qel::IsotropicPrior prior = make_prior(cfg.prior_spec, orders.radial);
    const qel::SweepResult sweep =
        qel::schmidt_sweep(prior, cfg.points, orders);
    std::string argmax;
    for (int i : sweep.argmax_indices)
        argmax += (argmax.empty() ? "" : ", ") +
                  std::to_string(sweep.abscissae[i]);
    std::fprintf(stderr, "schmidt-sweep: %s, %d points, argmax p = {%s}\n",
                 cfg.prior_spec.c_str(), cfg.points, argmax.c_str());
    return emit(cfg.out_path, cfg.format == "json"
                                  ? sweep.to_json("p", "gain_bits")
                                  : sweep.to_csv("p", "gain_bits"));
}

int run_capacity(const RunConfig& cfg)
{
    const auto rows = qel::capacity_table(cfg.n_max);
    std::fprintf(stderr,
                 "capacity: n_max=%ld, gain(n_max) = %.9g bits, "
                 "bits/compressed qubit = %.9g\n",
                 cfg.n_max, rows.back().gain_bits,
                 rows.back().bits_per_compressed_qubit);
    return emit(cfg.out_path, cfg.format == "json"
                                  ? qel::capacity_json(rows)
                                  : qel::capacity_csv(rows));
}

int run_purity_scan(const RunConfig& cfg)
{
    qel::GainFn fn;
    if (cfg.gain_fn == "di1")
        fn = qel::GainFn::di1;
    else if (cfg.gain_fn == "di2")
        fn = qel::GainFn::di2;
    else if (cfg.gain_fn == "df1")
        fn = qel::GainFn::df1;
    else if (cfg.gain_fn == "df2")
        fn = qel::GainFn::df2;
    else
        throw qel::Error("unknown --gain '" + cfg.gain_fn +
                         "' (di1 | di2 | df1 | df2)");
    if (cfg.scan_points < 2)
        throw qel::Error("--points must be >= 2");
    std::vector<double> grid;
    for (int i = 0; i < cfg.scan_points; ++i)
        grid.push_back(static_cast<double>(i) / (cfg.scan_points - 1));
    const qel::SweepResult scan = qel::purity_scan(fn, grid);
    std::fprintf(stderr, "purity-scan: %s over %d points, max = %.9g at b0 "
                         "= %.3g\n",
                 cfg.gain_fn.c_str(), cfg.scan_points, scan.values.back(),
                 grid[scan.argmax_indices.back()]);
    return emit(cfg.out_path, cfg.format == "json" ? scan.to_json()
                                                   : scan.to_csv());
}

int run_verify(const RunConfig& cfg)
{
    const auto results = qel::run_verification(cfg.seed);
    const std::string table = qel::verification_table(results);
    std::cout << table;
    if (!cfg.out_path.empty()) {
        const int rc = emit(cfg.out_path, table);
        if (rc != kExitOk)
            return rc;
    }
    return qel::all_passed(results) ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Information and fidelity gain of quantum measurements on "
                 "identical qubit copies"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&cfg](CLI::App* sub, bool with_prior) {
        if (with_prior)
            sub->add_option("--prior", cfg.prior_spec,
                            "pure | uniform | point:<b0> | table:<path>");
        sub->add_option("--out", cfg.out_path,
                        "output file (stdout if omitted)");
        sub->add_option("--format", cfg.format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--orders", cfg.orders_flag,
                        "quadrature orders r,mu,phi (default 64,64,128; env "
                        "QEL_QUAD_ORDERS)");
    };

    CLI::App* gain = app.add_subcommand(
        "gain", "average Kullback gain of a POVM on n copies");
    add_common(gain, true);
    gain->add_option("--povm", cfg.povm_spec,
                     "vonneumann | tetra | file:<path>")
        ->required();
    gain->add_option("--n", cfg.n, "number of copies")
        ->required()
        ->check(CLI::Range(1, 8));

    CLI::App* moments = app.add_subcommand(
        "moments", "prior moments I_alpha = <((1-b^2)/4)^alpha>");
    add_common(moments, true);

    CLI::App* sweep = app.add_subcommand(
        "schmidt-sweep", "gain of the Schmidt-seeded covariant measurement "
                         "over p in [0,1]");
    add_common(sweep, true);
    sweep->add_option("--points", cfg.points, "grid size (odd, >= 3)")
        ->check(CLI::Range(3, 100001));

    CLI::App* capacity = app.add_subcommand(
        "capacity", "channel capacity table with compression accounting");
    add_common(capacity, false);
    capacity->add_option("--n-max", cfg.n_max, "largest copy count")
        ->required()
        ->check(CLI::Range(1L, 1000000L));

    CLI::App* scan = app.add_subcommand(
        "purity-scan", "closed-form gain over point-mass priors b0 in [0,1]");
    add_common(scan, false);
    scan->add_option("--gain", cfg.gain_fn, "di1 | di2 | df1 | df2")
        ->required();
    scan->add_option("--points", cfg.scan_points, "grid size (default 11)")
        ->check(CLI::Range(2, 100001));

    CLI::App* verify = app.add_subcommand(
        "verify", "run every module's invariant suite");
    verify->add_option("--seed", cfg.seed, "seed for randomized checks");
    verify->add_option("--out", cfg.out_path,
                       "also write the table to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(gain))
            return run_gain(cfg);
        if (app.got_subcommand(moments))
            return run_moments(cfg);
        if (app.got_subcommand(sweep))
            return run_schmidt_sweep(cfg);
        if (app.got_subcommand(capacity))
            return run_capacity(cfg);
        if (app.got_subcommand(scan))
            return run_purity_scan(cfg);
        if (app.got_subcommand(verify))
            return run_verify(cfg);
    } catch (const qel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
