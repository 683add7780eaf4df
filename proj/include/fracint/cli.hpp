#pragma once

/**
 * @file cli.hpp
 * @brief The `fracint` command line: eval, integrate, flip, plot, verify.
 *
 * Exit codes: 0 ok, 1 usage or other failure, 2 invalid config,
 * 3 domain error, 4 verification failure.
 */

#include <fracint/config.hpp>
#include <fracint/error.hpp>
#include <fracint/eval.hpp>
#include <fracint/flip.hpp>
#include <fracint/integral.hpp>
#include <fracint/plot.hpp>
#include <fracint/quadrature.hpp>
#include <fracint/verify.hpp>

#include <CLI11.hpp>

#include <cstddef>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracint::cli {

enum exit_code : int {
    ok = 0,
    usage = 1,
    invalid_config = 2,
    domain_error = 3,
    verification_failure = 4,
};

inline constexpr double check_tolerance = 1e-3;

namespace detail {

inline std::string full(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string sci(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

inline bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline int runtime_failure(const error& e, std::ostream& err)
{
    err << "error: " << e.what() << '\n';
    if (e.code() == errc::out_of_domain || e.code() == errc::domain) return domain_error;
    return usage;
}

} // namespace detail

/// Runs the CLI on `args` (excluding the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Alpha-fractal interpolation functions: evaluation, closed-form integrals and flips",
                 "fracint"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    double x = 0.0;
    double tol = 1e-8;
    std::size_t samples = 2048;
    std::size_t grid = 16385;
    bool check = false;
    bool overlay = false;
    std::string title;

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate f^alpha at x with a certified error bound");
    eval_cmd->add_option("config", config_path, "Instance JSON")->required();
    eval_cmd->add_option("x", x, "Abscissa in [x0, xN]")->required();
    eval_cmd->add_option("--tol", tol, "Certified truncation tolerance")->capture_default_str();

    auto* integrate_cmd = app.add_subcommand("integrate", "Closed-form integral of f^alpha over I");
    integrate_cmd->add_option("config", config_path, "Instance JSON")->required();
    integrate_cmd->add_flag("--check", check, "Also integrate the fixed-point grid by trapezoid");
    integrate_cmd->add_option("--grid", grid, "Grid size for --check")->capture_default_str();
    integrate_cmd->add_option("--tol", tol, "Grid iteration tolerance for --check")->capture_default_str();

    auto* flip_cmd = app.add_subcommand("flip", "Write the config of the flipped instance");
    flip_cmd->add_option("config", config_path, "Instance JSON")->required();
    flip_cmd->add_option("out", out_path, "Output JSON path")->required();

    auto* plot_cmd = app.add_subcommand("plot", "Sample f and f^alpha to CSV or SVG");
    plot_cmd->add_option("config", config_path, "Instance JSON")->required();
    plot_cmd->add_option("--out", out_path, "Output path ending in .csv or .svg")->required();
    plot_cmd->add_option("--samples", samples, "Number of samples")->capture_default_str();
    plot_cmd->add_option("--tol", tol, "Certified truncation tolerance")->capture_default_str();
    plot_cmd->add_flag("--overlay-germ", overlay, "Draw f under f^alpha (SVG)");
    plot_cmd->add_option("--title", title, "SVG title");

    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite on an instance");
    verify_cmd->add_option("config", config_path, "Instance JSON")->required();
    verify_cmd->add_option("--grid", grid, "Grid size for the fixed-point iteration")->capture_default_str();
    verify_cmd->add_option("--tol", tol, "Evaluation tolerance")->capture_default_str();

    std::vector<std::string> argv_store{"fracint"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ok : usage;
    }

    SpecConfig config;
    std::optional<AlphaFractalSpec> spec;
    try {
        config = load_config(config_path);
        spec.emplace(to_spec(config));
    } catch (const error& e) {
        err << "invalid config '" << config_path << "': " << e.what() << '\n';
        return invalid_config;
    }

    try {
        if (eval_cmd->parsed()) {
            const EvalReport r = eval_certified(*spec, x, tol);
            out << "value: " << detail::full(r.value) << '\n'
                << "depth: " << r.depth_used << '\n'
                << "error_bound: " << detail::sci(r.error_bound) << '\n';
            return ok;
        }

        if (integrate_cmd->parsed()) {
            const IntegralResult r = integrate_closed_form(*spec);
            out << "integral: " << detail::full(r.value) << '\n'
                << "lambda: " << detail::full(r.lambda) << '\n'
                << "integral_f: " << detail::full(r.integral_f) << '\n'
                << "integral_b: " << detail::full(r.integral_b) << '\n';
            if (check) {
                const double brute = trapezoid_grid(eval_grid(*spec, grid, tol));
                const double diff = std::abs(brute - r.value);
                out << "brute_force: " << detail::full(brute) << '\n'
                    << "difference: " << detail::sci(diff) << '\n';
                if (!(diff <= check_tolerance)) {
                    err << "closed form and brute force differ by more than " << check_tolerance << '\n';
                    return verification_failure;
                }
            }
            return ok;
        }

        if (flip_cmd->parsed()) {
            SpecConfig flipped;
            try {
                flipped = flip_config(config);
                to_spec(flipped);
            } catch (const error& e) {
                err << "invalid config '" << config_path << "': " << e.what() << '\n';
                return invalid_config;
            }
            save_config(out_path, flipped);
            out << "wrote " << out_path << '\n';
            return ok;
        }

        if (plot_cmd->parsed()) {
            const bool csv = detail::ends_with(out_path, ".csv");
            if (!csv && !detail::ends_with(out_path, ".svg")) {
                err << "--out must end in .csv or .svg\n";
                return usage;
            }
            if (samples < 2) {
                err << "--samples must be at least 2\n";
                return usage;
            }
            const PlotSeries series = sample_plot(*spec, samples, tol);
            std::ofstream file(out_path);
            if (!file) {
                err << "cannot write '" << out_path << "'\n";
                return usage;
            }
            if (csv) {
                write_csv(file, series);
            } else {
                write_svg(file, series, {overlay, title.empty() ? config_path : title});
            }
            out << "wrote " << series.x.size() << " samples to " << out_path << '\n';
            return ok;
        }

        if (verify_cmd->parsed()) {
            VerifyOptions opt;
            opt.grid_size = grid;
            opt.tol = tol;
            bool all = true;
            for (const auto& c : run_verification(*spec, opt)) {
                const char* status = c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL");
                char line[96];
                std::snprintf(line, sizeof line, "%-30s %-5s ", c.name.c_str(), status);
                out << line << c.detail << '\n';
                all = all && c.passed;
            }
            return all ? ok : verification_failure;
        }
    } catch (const error& e) {
        return detail::runtime_failure(e, err);
    } catch (const std::logic_error& e) {
        err << "identity check failed: " << e.what() << '\n';
        return verification_failure;
    }
    return usage;
}

} // namespace fracint::cli
