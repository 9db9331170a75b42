#include "mpt/cli.hpp"

#include <charconv>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mpt/oracle.hpp"
#include "mpt/precond.hpp"

namespace mpt {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_value(const std::string& token, const std::string& context) {
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw UsageError("malformed number '" + token + "' in " + context);
    }
    return v;
}

std::size_t parse_index(const std::string& token, const std::string& context) {
    std::size_t v = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw UsageError("malformed network index in '" + context + "'");
    }
    return v;
}

}  // namespace

std::vector<std::vector<double>> parse_k_list(const std::string& text, std::size_t j_count) {
    const auto entries = split(text, ',');
    if (entries.size() != j_count) {
        throw UsageError("--K needs " + std::to_string(j_count) + " entries, got " + std::to_string(entries.size()) +
                         " in '" + text + "'");
    }
    std::vector<std::vector<double>> out;
    for (const auto& e : entries) {
        std::vector<double> values;
        for (const auto& tok : split(e, '/')) {
            const double v = parse_value(tok, "--K entry '" + e + "'");
            if (!(v > 0.0)) throw UsageError("--K value '" + tok + "' must be positive");
            values.push_back(v);
        }
        if (values.empty()) throw UsageError("empty --K entry in '" + text + "'");
        out.push_back(std::move(values));
    }
    return out;
}

std::vector<XiPairValues> parse_xi_list(const std::string& text, std::size_t j_count) {
    std::vector<XiPairValues> out;
    if (text.empty()) return out;
    for (const auto& tok : split(text, ',')) {
        const auto eq = tok.find('=');
        const auto dash = tok.find('-');
        if (eq == std::string::npos || dash == std::string::npos || dash > eq) {
            throw UsageError("malformed --xi token '" + tok + "' (expected i-j=value)");
        }
        std::size_t a = parse_index(tok.substr(0, dash), tok);
        std::size_t b = parse_index(tok.substr(dash + 1, eq - dash - 1), tok);
        if (a == 0 || b == 0 || a > j_count || b > j_count || a == b) {
            throw UsageError("invalid network pair in --xi token '" + tok + "'");
        }
        if (a > b) std::swap(a, b);
        XiPairValues p{a - 1, b - 1, {}};
        for (const auto& v : split(tok.substr(eq + 1), '/')) {
            const double x = parse_value(v, "--xi token '" + tok + "'");
            if (!(x >= 0.0)) throw UsageError("negative exchange in --xi token '" + tok + "'");
            p.values.push_back(x);
        }
        if (p.values.empty()) throw UsageError("missing value in --xi token '" + tok + "'");
        for (const auto& q : out) {
            if (q.i == p.i && q.j == p.j) throw UsageError("duplicate pair in --xi token '" + tok + "'");
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& tok : split(text, ',')) {
        int v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size() || v < 2) {
            throw UsageError("malformed --N entry '" + tok + "' (integers >= 2)");
        }
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("--N needs at least one resolution");
    return out;
}

namespace {

struct CommonOptions {
    std::size_t networks = 2;
    std::string k = "1,1";
    std::string xi;
    std::string n = "8";
    std::string formulation = "standard";
    double tol = 1e-9;
    std::size_t max_iters = 3000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--networks", o.networks, "Number of networks J")->check(CLI::PositiveNumber);
    cmd->add_option("--K", o.k, "Permeabilities, one per network; '/' separates swept values");
    cmd->add_option("--xi", o.xi, "Exchange pairs i-j=value, comma separated; '/' separates swept values");
    cmd->add_option("--N", o.n, "Mesh resolutions, comma separated");
    cmd->add_option("--formulation", o.formulation, "standard | transformed")
        ->check(CLI::IsMember({"standard", "transformed"}));
    cmd->add_option("--tol", o.tol, "Relative preconditioned residual tolerance");
    cmd->add_option("--max-iters", o.max_iters, "Iteration cap");
    cmd->add_option("--seed", o.seed, "Base seed of the random initial guesses");
    cmd->add_option("--threads", o.threads, "Worker threads for sweeps");
    cmd->add_option("--out", o.out, "Output path (stdout when omitted)");
}

SweepConfig to_config(const CommonOptions& o) {
    SweepConfig c;
    c.j_count = o.networks;
    c.k_values = parse_k_list(o.k, o.networks);
    c.xi_values = parse_xi_list(o.xi, o.networks);
    c.n_values = parse_n_list(o.n);
    c.formulation = parse_formulation(o.formulation);
    c.tolerance = o.tol;
    c.max_iterations = o.max_iters;
    c.seed = o.seed;
    c.threads = std::max(1u, o.threads);
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return c;
}

void write_records(const CommonOptions& o, const std::vector<RunRecord>& records, std::size_t j_count,
                   std::ostream& out) {
    if (o.out.empty()) {
        write_csv(out, records, j_count);
    } else {
        emit_csv(records, o.out, j_count);
    }
}

int run_oracle(const CommonOptions& o, std::ostream& out) {
    const auto config = to_config(o);
    for (int n : config.n_values) {
        if (n > 8) throw UsageError("oracle is limited to N <= 8, got " + std::to_string(n));
    }
    out.precision(10);
    for (const auto& pt : expand_sweep(config)) {
        const auto disc = make_discretization(pt.n);
        const double c_omega = discrete_poincare_constant(*disc.stiffness, *disc.mass);
        DenseMatrix a, b;
        if (config.formulation == Formulation::standard) {
            a = materialize_dense(assemble_standard(pt.params, disc.stiffness, disc.mass));
            b = materialize_dense(build_standard_precond(pt.params, disc.stiffness, disc.mass));
        } else {
            const auto ct = diagonalize_by_congruence(pt.params);
            a = materialize_dense(assemble_transformed(ct, disc.stiffness, disc.mass));
            b = materialize_dense(build_transformed_precond(ct, disc.stiffness, disc.mass));
        }
        const auto spec = exact_preconditioned_condition(a, b);
        const auto bounds = theoretical_bounds(pt.params, c_omega);
        out << "N = " << pt.n << "\nformulation = " << to_string(config.formulation) << "\nK =";
        for (double k : pt.params.k) out << ' ' << format_number(k);
        out << "\nxi =";
        for (std::size_t i = 0; i < pt.params.j_count; ++i)
            for (std::size_t j = i + 1; j < pt.params.j_count; ++j)
                out << ' ' << i + 1 << '-' << j + 1 << '=' << format_number(pt.params.xi(i, j));
        out << "\nc_omega = " << c_omega << "\nlambda_min = " << spec.lambda_min
            << "\nlambda_max = " << spec.lambda_max << "\ncond = " << spec.cond << "\nalpha = " << bounds.alpha
            << "\nbeta = " << bounds.beta << "\ncond_bound = " << bounds.cond_bound << "\n\n";
    }
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-network Darcy preconditioning benchmark"};
    app.require_subcommand(1);

    CommonOptions solve_opts, sweep_opts, oracle_opts;
    auto* solve = app.add_subcommand("solve", "Run one configuration and print its record");
    add_common(solve, solve_opts);
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
    add_common(sweep, sweep_opts);
    auto* oracle = app.add_subcommand("oracle", "Exact condition numbers and theory bounds (N <= 8)");
    add_common(oracle, oracle_opts);

    std::string plot_in, plot_out, plot_x = "xi_k_ratio", plot_y = "cond_est", plot_color = "xi_sum";
    auto* plot = app.add_subcommand("plot", "Scatter plot of a sweep CSV as SVG");
    plot->add_option("--in", plot_in, "Sweep CSV")->required();
    plot->add_option("--out", plot_out, "SVG path")->required();
    plot->add_option("--x", plot_x, "Field on the x axis");
    plot->add_option("--y", plot_y, "Field on the y axis");
    plot->add_option("--color", plot_color, "Field mapped to color");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("mpt_bench");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (*solve) {
            const auto config = to_config(solve_opts);
            if (config.size() != 1) throw UsageError("solve takes a single configuration; use sweep for lists");
            const auto records = run_sweep(config);
            write_records(solve_opts, records, config.j_count, out);
        } else if (*sweep) {
            const auto config = to_config(sweep_opts);
            const auto records = run_sweep(config);
            write_records(sweep_opts, records, config.j_count, out);
        } else if (*oracle) {
            return run_oracle(oracle_opts, out);
        } else if (*plot) {
            const auto records = read_csv(plot_in);
            if (records.empty()) throw UsageError("'" + plot_in + "' has no records to plot");
            emit_scatter_svg(records, plot_x, plot_y, plot_color, plot_out);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace mpt
