#pragma once

/**
 * @file verify.hpp
 * @brief Invariant checks for one instance, shared by the `verify` command.
 */

#include <fracint/core.hpp>
#include <fracint/eval.hpp>
#include <fracint/flip.hpp>
#include <fracint/integral.hpp>
#include <fracint/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace fracint {

struct VerifyOptions {
    std::size_t grid_size = 16385;
    double tol = 1e-8;
    std::size_t random_points = 100;
    std::size_t perturbation_points = 10000;
    std::uint64_t seed = 20240917;
};

struct VerifyCheck {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
};

namespace detail {

inline std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline VerifyCheck bounded(std::string name, double measured, double limit)
{
    return {std::move(name), measured <= limit, false, sci(measured) + " <= " + sci(limit)};
}

} // namespace detail

inline std::vector<VerifyCheck> run_verification(const AlphaFractalSpec& spec, const VerifyOptions& opt = {})
{
    using detail::bounded;
    std::vector<VerifyCheck> out;
    auto guarded = [&out](const std::string& name, const std::function<VerifyCheck()>& body) {
        try {
            out.push_back(body());
        } catch (const std::exception& e) {
            out.push_back({name, false, false, e.what()});
        }
    };

    const auto& p = spec.partition();
    const std::size_t depth = depth_for_tolerance(spec, opt.tol);
    const double eb = truncation_bound(spec, depth);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> in_interval(p.front(), p.back());
    std::vector<double> probes(opt.random_points);
    for (auto& x : probes) x = in_interval(rng);

    guarded("interpolation at knots", [&] {
        double worst = 0.0;
        for (std::size_t k = 0; k < p.knots().size(); ++k) {
            worst = std::max(worst, std::abs(eval_point(spec, p.knot(k), depth).value - spec.data()[k]));
        }
        return bounded("interpolation at knots", worst, eb);
    });

    GridSolve solved;
    guarded("fixed-point residual", [&] {
        solved = solve_grid(spec, opt.grid_size, opt.tol);
        return bounded("fixed-point residual", fixed_point_residual(spec, solved.grid), 1e-4);
    });

    guarded("perturbation bound", [&] {
        double worst = 0.0;
        for (double x : linspace(p.front(), p.back(), opt.perturbation_points)) {
            worst = std::max(worst, std::abs(eval_point(spec, x, depth).value - spec.f()(x)));
        }
        return bounded("perturbation bound", worst, perturbation_bound(spec) + eb);
    });

    guarded("closed form vs brute force", [&] {
        if (solved.grid.xs.empty()) solved = solve_grid(spec, opt.grid_size, opt.tol);
        const double brute = trapezoid_grid(solved.grid);
        return bounded("closed form vs brute force", std::abs(brute - integrate_closed_form(spec).value),
                       1e-3);
    });

    guarded("flip: lambda and involution", [&] {
        const FlippedSpec fl = flip_spec(spec);
        const AlphaFractalSpec back = flip_spec(fl.spec).spec;
        const bool same = lambda(fl.spec) == lambda(spec) && back.partition() == p &&
                          back.alpha() == spec.alpha() && back.f() == spec.f() && back.b() == spec.b() &&
                          back.maps() == spec.maps();
        return VerifyCheck{"flip: lambda and involution", same, false,
                           same ? "exact" : "flipped instance does not round-trip"};
    });

    guarded("flip: pointwise mirror", [&] {
        const FlippedSpec fl = flip_spec(spec);
        double worst = 0.0;
        for (double x : probes) {
            worst = std::max(worst, std::abs(eval_flipped(fl, -x, depth).value - eval_point(spec, x, depth).value));
        }
        return bounded("flip: pointwise mirror", worst, 2.0 * eb);
    });

    guarded("flip: integral", [&] {
        return bounded("flip: integral", std::abs(flip_integral(spec) - integrate_closed_form(spec).value),
                       1e-12);
    });

    guarded("linearity", [&] {
        const double gamma = 2.0;
        const double delta = 3.0;
        const AlphaFractalSpec combo = combine_linear(spec, spec, gamma, delta);
        double worst = 0.0;
        for (double x : probes) {
            const double base = eval_point(spec, x, depth).value;
            worst = std::max(worst, std::abs(eval_point(combo, x, depth).value - (gamma + delta) * base));
        }
        return bounded("linearity", worst, truncation_bound(combo, depth) + (gamma + delta) * eb);
    });

    guarded("affine composition", [&] {
        const double slope = 2.0;
        const AlphaFractalSpec scaled = compose_affine(spec, slope, 0.0);
        compose_affine(spec, slope, 1.0);
        double worst = 0.0;
        for (double x : probes) {
            worst = std::max(worst, std::abs(eval_point(scaled, x, depth).value -
                                             slope * eval_point(spec, x, depth).value));
        }
        return bounded("affine composition", worst, slope * eb);
    });

    guarded("equal scale sums", [&] {
        if (!p.is_uniform()) return VerifyCheck{"equal scale sums", true, true, "partition not uniform"};
        auto draft = spec.draft();
        std::reverse(draft.alphas.begin(), draft.alphas.end());
        const bool eq = scale_vectors_equivalent(spec, validate(draft));
        return VerifyCheck{"equal scale sums", eq, false, eq ? "integrals agree" : "sums differ"};
    });

    guarded("zero-sum shortcut", [&] {
        const auto v = sum_zero_shortcut(spec);
        if (!v) return VerifyCheck{"zero-sum shortcut", true, true, "hypothesis does not hold"};
        return bounded("zero-sum shortcut", std::abs(*v - integrate_closed_form(spec).value), 1e-10);
    });

    guarded("alpha -> 0 limit", [&] {
        const LimitReport r = integral_limit_check(spec);
        const bool ok = r.monotone && r.matches_prediction && r.zero_value == r.integral_f;
        return VerifyCheck{"alpha -> 0 limit", ok, false,
                           "last deviation " + detail::sci(r.steps.back().deviation)};
    });

    return out;
}

} // namespace fracint
