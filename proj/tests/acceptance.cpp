// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <fracint/cli.hpp>
#include <fracint/config.hpp>
#include <fracint/eval.hpp>
#include <fracint/flip.hpp>
#include <fracint/integral.hpp>
#include <fracint/quadrature.hpp>

#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace fracint;
namespace ft = fracint::fixtures;

namespace {

// Pinned tolerances.
constexpr double golden_tol = 1e-12;
constexpr double brute_force_tol = 1e-3;
constexpr std::size_t brute_force_grid = (1u << 14) + 1;
constexpr double depth_tol = 1e-8;
constexpr double residual_tol = 1e-4;
constexpr std::size_t perturbation_points = 10000;
constexpr std::size_t mirror_points = 100;
constexpr double flip_integral_tol = 1e-12;
constexpr double algebra_tol = 1e-10;
constexpr std::size_t algebra_instances = 100;
constexpr double algebra_alpha_bound = 0.6;
constexpr std::size_t plot_samples = 2048;

struct named_spec {
    std::string name;
    AlphaFractalSpec spec;
};

std::vector<named_spec> golden_specs()
{
    std::vector<named_spec> out;
    for (const char* name : {"cubic_linear", "log2", "cubic_square", "neg_cubic_square", "square_mirror", "sqrt"}) {
        out.push_back({name, load_spec(ft::config_path(name))});
    }
    return out;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

class criterion {
public:
    explicit criterion(std::string label) : label_(std::move(label)) {}

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            passed_ = false;
            failures_.push_back(what);
        }
    }

    void note(const std::string& text) { notes_.push_back(text); }

    bool report(double seconds) const
    {
        std::printf("%s %s (%.2fs)\n", passed_ ? "PASS" : "FAIL", label_.c_str(), seconds);
        for (const auto& n : notes_) std::printf("       %s\n", n.c_str());
        for (const auto& f : failures_) std::printf("     ! %s\n", f.c_str());
        return passed_;
    }

private:
    std::string label_;
    bool passed_ = true;
    std::vector<std::string> notes_;
    std::vector<std::string> failures_;
};

void golden_integrals(criterion& c)
{
    struct golden {
        const char* name;
        double want;
    };
    const golden cases[] = {
        {"cubic_linear", 53.0 / 78.0},   {"log2", std::log(2.0)},         {"cubic_square", 13.0 / 54.0},
        {"neg_cubic_square", -13.0 / 54.0}, {"square_mirror", 19.0 / 63.0},
    };
    for (const auto& g : cases) {
        const double got = integrate_closed_form(load_spec(ft::config_path(g.name))).value;
        const double err = std::abs(got - g.want);
        c.require(err <= golden_tol, std::string(g.name) + " off by " + sci(err));
        c.note(std::string(g.name) + ": |error| " + sci(err));
    }
    const auto cubic = load_spec(ft::config_path("cubic_square"));
    const double negated = integrate_closed_form(combine_linear(cubic, cubic, -1, 0)).value;
    c.require(std::abs(negated + 13.0 / 54.0) <= golden_tol, "negated combination off");
}

void brute_force_and_residual(criterion& brute, criterion& residual)
{
    for (const auto& [name, spec] : golden_specs()) {
        const auto t0 = std::chrono::steady_clock::now();
        const GridSolve solved = solve_grid(spec, brute_force_grid, depth_tol);
        const double trap = trapezoid_grid(solved.grid);
        const double diff = std::abs(trap - integrate_closed_form(spec).value);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        brute.require(diff <= brute_force_tol, name + " differs by " + sci(diff));
        brute.note(name + ": |trapezoid - closed form| " + sci(diff) + " in " + std::to_string(secs) + "s");

        const double r = fixed_point_residual(spec, solved.grid);
        residual.require(r <= residual_tol, name + " residual " + sci(r));
        residual.note(name + ": sup|g - Tg| " + sci(r) + " after " + std::to_string(solved.iterations) +
                      " sweeps");
    }
}

void interpolation(criterion& c)
{
    for (const auto& [name, spec] : golden_specs()) {
        const std::size_t d = depth_for_tolerance(spec, depth_tol);
        double worst = 0.0;
        double eb = 0.0;
        for (std::size_t k = 0; k < spec.data().size(); ++k) {
            const auto r = eval_point(spec, spec.partition().knot(k), d);
            worst = std::max(worst, std::abs(r.value - spec.data()[k]));
            eb = r.error_bound;
        }
        c.require(worst <= eb, name + " knot error " + sci(worst) + " > " + sci(eb));
        c.note(name + ": max knot error " + sci(worst) + " <= " + sci(eb));
    }
}

void perturbation(criterion& c)
{
    for (const auto& [name, spec] : golden_specs()) {
        const std::size_t d = depth_for_tolerance(spec, depth_tol);
        const double s = spec.alpha().sup_norm();
        const double bound = s / (1 - s) * spec.fb_sup_estimate() + truncation_bound(spec, d);
        double worst = 0.0;
        for (double x : linspace(spec.partition().front(), spec.partition().back(), perturbation_points)) {
            worst = std::max(worst, std::abs(eval_point(spec, x, d).value - spec.f()(x)));
        }
        c.require(worst <= bound, name + " deviation " + sci(worst) + " > " + sci(bound));
        c.note(name + ": sup|f^a - f| " + sci(worst) + " <= " + sci(bound));
    }
}

void flip_suite(criterion& c)
{
    std::mt19937_64 rng(4242);
    for (const auto& [name, spec] : golden_specs()) {
        const FlippedSpec fl = flip_spec(spec);
        c.require(lambda(fl.spec) == lambda(spec), name + ": lambda_F != lambda");
        const AlphaFractalSpec back = flip_spec(fl.spec).spec;
        c.require(back.partition() == spec.partition() && back.alpha() == spec.alpha() &&
                      back.f() == spec.f() && back.b() == spec.b() && back.maps() == spec.maps(),
                  name + ": double flip differs");

        const std::size_t d = depth_for_tolerance(spec, depth_tol);
        const double eb = truncation_bound(spec, d);
        std::uniform_real_distribution<double> u(spec.partition().front(), spec.partition().back());
        double worst = 0.0;
        for (std::size_t k = 0; k < mirror_points; ++k) {
            const double x = u(rng);
            worst = std::max(worst, std::abs(eval_flipped(fl, -x, d).value - eval_point(spec, x, d).value));
        }
        c.require(worst <= 2 * eb, name + ": mirror error " + sci(worst));

        const double gap = std::abs(flip_integral(spec) - integrate_closed_form(spec).value);
        c.require(gap <= flip_integral_tol, name + ": flipped integral differs by " + sci(gap));
        c.note(name + ": mirror " + sci(worst) + " <= " + sci(2 * eb) + ", integral gap " + sci(gap));
    }
    for (const char* name : {"sqrt", "square"}) {
        const auto spec = load_spec(ft::config_path(name));
        const double gap = std::abs(flip_integral(spec) - integrate_closed_form(spec).value);
        c.require(gap <= flip_integral_tol, std::string(name) + ": flipped integral differs");
    }
    const double square = flip_integral(load_spec(ft::config_path("square")));
    c.require(std::abs(square - 19.0 / 63.0) <= flip_integral_tol, "flipped square integral is not 19/63");
}

void algebra_suite(criterion& c)
{
    ft::instance_generator gen(20240917);
    std::size_t worst_case = 0;
    double sum_zero = 0, equal_sums = 0, linear = 0, affine = 0;
    bool monotone = true;
    for (std::size_t k = 0; k < algebra_instances; ++k) {
        auto a = gen.alphas(5, algebra_alpha_bound);
        const auto spec = gen.instance(a);
        const double base = integrate_closed_form(spec).value;

        auto zero = gen.alphas(5, algebra_alpha_bound / 2);
        const double mean = std::accumulate(zero.begin(), zero.end(), 0.0) / 5.0;
        for (auto& v : zero) v -= mean;
        auto zero_draft = spec.draft();
        zero_draft.alphas = zero;
        const auto zspec = validate(zero_draft);
        const auto shortcut = sum_zero_shortcut(zspec);
        c.require(shortcut.has_value(), "zero-sum hypothesis not recognised");
        if (shortcut) sum_zero = std::max(sum_zero, std::abs(*shortcut - integrate_closed_form(zspec).value));

        auto shuffled = spec.draft();
        std::shuffle(shuffled.alphas.begin(), shuffled.alphas.end(), gen.engine());
        const auto sspec = validate(shuffled);
        c.require(scale_vectors_equivalent(spec, sspec), "equal sums not recognised");
        equal_sums = std::max(equal_sums, std::abs(integrate_closed_form(sspec).value - base));

        const auto other = gen.instance(a);
        const double gamma = gen.uniform(-3, 3);
        const double delta = gen.uniform(-3, 3);
        const double combo = integrate_closed_form(combine_linear(spec, other, gamma, delta)).value;
        linear = std::max(linear, std::abs(combo - (gamma * base + delta * integrate_closed_form(other).value)));

        const double p = gen.uniform(-3, 3);
        const double q = gen.uniform(-3, 3);
        const double composed = integrate_closed_form(compose_affine(spec, p, q)).value;
        affine = std::max(affine, std::abs(composed - (p * base + q * spec.partition().length())));

        const LimitReport lim = integral_limit_check(spec, 5);
        if (!lim.monotone || lim.zero_value != lim.integral_f) {
            monotone = false;
            worst_case = k;
        }
    }
    c.require(sum_zero <= algebra_tol, "zero-sum shortcut off by " + sci(sum_zero));
    c.require(equal_sums <= algebra_tol, "equal-sum integrals differ by " + sci(equal_sums));
    c.require(linear <= algebra_tol, "linearity off by " + sci(linear));
    c.require(affine <= algebra_tol, "affine composition off by " + sci(affine));
    c.require(monotone, "limit sequence not monotone on instance " + std::to_string(worst_case));
    c.note("zero-sum " + sci(sum_zero) + ", equal sums " + sci(equal_sums) + ", linearity " + sci(linear) +
           ", affine " + sci(affine) + ", limit monotone on all " + std::to_string(algebra_instances));
}

std::vector<std::vector<double>> read_csv(const std::string& path, std::string& header)
{
    std::ifstream in(path);
    std::getline(in, header);
    std::vector<std::vector<double>> rows;
    for (std::string line; std::getline(in, line);) {
        std::vector<double> row;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

int quiet_cli(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    if (code != 0) std::printf("       cli %s: %s", args.front().c_str(), err.str().c_str());
    return code;
}

void plots(criterion& c)
{
    const auto dir = std::filesystem::temp_directory_path() / "fracint_acceptance";
    std::filesystem::create_directories(dir);
    auto file = [&](const std::string& name) { return (dir / name).string(); };

    const std::string flipped_cfg = file("sqrt_flipped.json");
    c.require(quiet_cli({"flip", ft::config_path("sqrt"), flipped_cfg}) == 0, "flip command failed");

    struct plot_case {
        std::string name;
        std::string config;
    };
    const plot_case cases[] = {
        {"cubic_linear", ft::config_path("cubic_linear")},
        {"sqrt", ft::config_path("sqrt")},
        {"sqrt_flipped", flipped_cfg},
    };

    // Default sample count, CSV and SVG.
    for (const auto& pc : cases) {
        const auto csv = file(pc.name + ".csv");
        const auto svg = file(pc.name + ".svg");
        c.require(quiet_cli({"plot", pc.config, "--out", csv}) == 0, pc.name + ": csv plot failed");
        c.require(quiet_cli({"plot", pc.config, "--out", svg, "--overlay-germ"}) == 0,
                  pc.name + ": svg plot failed");
        std::string header;
        const auto rows = read_csv(csv, header);
        c.require(header == "x,f,f_alpha", pc.name + ": bad CSV header");
        c.require(rows.size() == plot_samples, pc.name + ": " + std::to_string(rows.size()) + " samples");
        std::ifstream in(svg);
        const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        c.require(text.rfind("<svg", 0) == 0 && text.find("</svg>") != std::string::npos &&
                      text.find("<polyline") != std::string::npos,
                  pc.name + ": SVG is not well formed");
    }

    // A sample count with every knot on the sampling grid.
    const std::size_t knot_samples = 5 * 410 + 1;
    std::vector<std::vector<double>> sampled[3];
    for (std::size_t k = 0; k < 3; ++k) {
        const auto csv = file(cases[k].name + "_knots.csv");
        c.require(quiet_cli({"plot", cases[k].config, "--out", csv, "--samples", std::to_string(knot_samples)}) == 0,
                  cases[k].name + ": knot plot failed");
        std::string header;
        sampled[k] = read_csv(csv, header);
        c.require(sampled[k].size() == knot_samples, cases[k].name + ": wrong knot-grid sample count");

        const auto spec = load_spec(cases[k].config);
        const double eb = truncation_bound(spec, depth_for_tolerance(spec, depth_tol));
        std::size_t hits = 0;
        for (const auto& row : sampled[k]) {
            for (std::size_t j = 0; j < spec.data().size(); ++j) {
                if (row[0] == spec.partition().knot(j)) {
                    ++hits;
                    c.require(std::abs(row[2] - spec.data()[j]) <= eb, cases[k].name + ": knot value off curve");
                }
            }
        }
        c.require(hits == spec.data().size(), cases[k].name + ": knots missing from the sampled grid");
    }

    // Mirror symmetry between the square-root plot and its flip.
    const auto spec = load_spec(ft::config_path("sqrt"));
    const double eb = truncation_bound(spec, depth_for_tolerance(spec, depth_tol));
    const auto& orig = sampled[1];
    const auto& flip = sampled[2];
    double worst = 0.0;
    bool mirrored = orig.size() == flip.size();
    for (std::size_t k = 0; mirrored && k < orig.size(); ++k) {
        const auto& o = orig[k];
        const auto& m = flip[flip.size() - 1 - k];
        mirrored = m[0] == -o[0];
        worst = std::max(worst, std::abs(m[2] - o[2]));
    }
    c.require(mirrored, "flipped sampling grid is not the mirror image");
    c.require(worst <= 2 * eb, "mirror symmetry error " + sci(worst));
    c.note("csv/svg for 3 plots, " + std::to_string(plot_samples) + " samples; mirror error " + sci(worst) +
           " <= " + sci(2 * eb));
    std::filesystem::remove_all(dir);
}

bool timed(criterion& c, const std::function<void(criterion&)>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    return c.report(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

} // namespace

int main()
{
    bool ok = true;
    criterion ac1("AC1 golden integrals within 1e-12");
    ok &= timed(ac1, golden_integrals);

    criterion ac2("AC2 closed form vs trapezoid on 2^14+1 grid within 1e-3");
    criterion ac3("AC3 fixed-point residual <= 1e-4");
    const auto t0 = std::chrono::steady_clock::now();
    try {
        brute_force_and_residual(ac2, ac3);
    } catch (const std::exception& e) {
        ac2.require(false, std::string("exception: ") + e.what());
        ac3.require(false, std::string("exception: ") + e.what());
    }
    const double shared = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok &= ac2.report(shared);
    ok &= ac3.report(shared);

    criterion ac4("AC4 interpolation at knots within the certified bound");
    ok &= timed(ac4, interpolation);
    criterion ac5("AC5 perturbation bound at 10^4 points");
    ok &= timed(ac5, perturbation);
    criterion ac6("AC6 flip suite");
    ok &= timed(ac6, flip_suite);
    criterion ac7("AC7 algebra suite on 100 random instances");
    ok &= timed(ac7, algebra_suite);
    criterion ac8("AC8 plot output (structural)");
    ok &= timed(ac8, plots);

    std::printf("%s\n", ok ? "ALL PASS" : "SOME CRITERIA FAILED");
    return ok ? 0 : 1;
}
