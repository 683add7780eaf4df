#pragma once

/**
 * @file eval.hpp
 * @brief Two independent evaluators of the alpha-fractal function f^alpha.
 *
 * f^alpha is the fixed point of the RB operator
 *
 *     (T g)(x) = f(x) + alpha_i (g - b)(L_i^{-1}(x)),   x in I_i,
 *
 * a contraction with factor |alpha|_inf.
 *
 * eval_point unrolls d applications of T starting from g_0 = f at a single
 * abscissa and carries the a-priori certificate
 *
 *     |T^d f - f^alpha| <= |alpha|_inf^{d+1} / (1 - |alpha|_inf) * ||f - b||_inf.
 *
 * eval_grid iterates T on a sampled grid using piecewise-linear
 * interpolation between samples. It has no certificate (the interpolation
 * error depends on the unknown modulus of continuity of f^alpha) and serves
 * as a cross-check of eval_point.
 */

#include <fracint/core.hpp>
#include <fracint/error.hpp>
#include <fracint/grid.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace fracint {

struct EvalReport {
    double value = 0.0;
    std::size_t depth_used = 0;
    /// Certified bound on |value - f^alpha(x)|.
    double error_bound = 0.0;
};

/// Truncation certificate for depth d given |alpha|_inf and a bound on ||f - b||.
inline double truncation_bound(double sup_alpha, double fb_bound, std::size_t depth)
{
    if (sup_alpha == 0.0 || fb_bound == 0.0) return 0.0;
    return std::pow(sup_alpha, static_cast<double>(depth) + 1.0) / (1.0 - sup_alpha) * fb_bound;
}

inline double truncation_bound(const AlphaFractalSpec& spec, std::size_t depth)
{
    return truncation_bound(spec.alpha().sup_norm(), spec.fb_sup_estimate(), depth);
}

/// Smallest d with truncation_bound(sup_alpha, fb_bound, d) <= tol.
inline std::size_t depth_for_tolerance(double sup_alpha, double fb_bound, double tol)
{
    if (!(tol > 0.0)) throw error(errc::invalid_argument, "tolerance must be positive");
    if (sup_alpha == 0.0 || fb_bound == 0.0) return 0;
    const double guess = std::log(tol * (1.0 - sup_alpha) / fb_bound) / std::log(sup_alpha) - 1.0;
    std::size_t d = guess > 0.0 ? static_cast<std::size_t>(std::floor(guess)) : 0;
    while (truncation_bound(sup_alpha, fb_bound, d) > tol) ++d;
    while (d > 0 && truncation_bound(sup_alpha, fb_bound, d - 1) <= tol) --d;
    return d;
}

inline std::size_t depth_for_tolerance(const AlphaFractalSpec& spec, double tol)
{
    return depth_for_tolerance(spec.alpha().sup_norm(), spec.fb_sup_estimate(), tol);
}

/// Depth-d unrolling of the self-referential equation at x:
///
///     v_0(x) = f(x)
///     v_k(x) = f(x) + alpha_i (v_{k-1} - b)(L_i^{-1}(x)),   i = locate_interval(x)
///
/// evaluated iteratively as f(u_0) + sum_{k=1..d} c_k (f - b)(u_k) with
/// u_{k} = L^{-1}(u_{k-1}) and c_k the running product of scale factors.
inline EvalReport eval_point(const AlphaFractalSpec& spec, double x, std::size_t depth)
{
    const auto& p = spec.partition();
    const auto& maps = spec.maps();
    if (!p.contains(x)) {
        throw error(errc::out_of_domain, "x=" + format_real(x) + " outside [" + format_real(p.front()) +
                                             ", " + format_real(p.back()) + "]");
    }
    double value = spec.f()(x);
    double coef = 1.0;
    double u = x;
    for (std::size_t k = 1; k <= depth; ++k) {
        const std::size_t i = locate_interval(p, u);
        coef *= maps.row(i).alpha;
        if (coef == 0.0) break;
        u = maps.inverse(i, u);
        value += coef * (spec.f()(u) - spec.b()(u));
    }
    return {value, depth, truncation_bound(spec, depth)};
}

/// eval_point at the certified depth for `tol`.
inline EvalReport eval_certified(const AlphaFractalSpec& spec, double x, double tol)
{
    return eval_point(spec, x, depth_for_tolerance(spec, tol));
}

namespace detail {

/// Everything in one RB sweep that does not depend on the iterate g.
struct rb_plan {
    std::vector<double> f_at_x;
    std::vector<double> alpha_at_x;
    std::vector<double> b_at_u;
    std::vector<std::size_t> segment;
    std::vector<double> weight;

    rb_plan(const AlphaFractalSpec& spec, const GridFunction& shape)
    {
        const auto& p = spec.partition();
        const auto& maps = spec.maps();
        const std::size_t n = shape.xs.size();
        f_at_x.resize(n);
        alpha_at_x.resize(n);
        b_at_u.resize(n);
        segment.resize(n);
        weight.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double x = shape.xs[j];
            const std::size_t i = locate_interval(p, x);
            const double u = maps.inverse(i, x);
            const std::size_t k = shape.segment(u);
            f_at_x[j] = spec.f()(x);
            alpha_at_x[j] = maps.row(i).alpha;
            b_at_u[j] = spec.b()(u);
            segment[j] = k;
            weight[j] = std::clamp((u - shape.xs[k]) / (shape.xs[k + 1] - shape.xs[k]), 0.0, 1.0);
        }
    }

    /// out = T(g); returns max |out - g|.
    double apply(const std::vector<double>& g, std::vector<double>& out) const
    {
        double diff = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const std::size_t k = segment[j];
            const double gu = g[k] + weight[j] * (g[k + 1] - g[k]);
            out[j] = f_at_x[j] + alpha_at_x[j] * (gu - b_at_u[j]);
            diff = std::max(diff, std::abs(out[j] - g[j]));
        }
        return diff;
    }
};

inline void check_covers(const AlphaFractalSpec& spec, const GridFunction& g)
{
    g.check();
    if (g.xs.front() != spec.partition().front() || g.xs.back() != spec.partition().back()) {
        throw error(errc::invalid_argument, "grid must start at x_0 and end at x_N");
    }
}

} // namespace detail

/// One application of the RB operator to the piecewise-linear interpolant of
/// g, sampled back on g's abscissae.
inline GridFunction rb_apply(const AlphaFractalSpec& spec, const GridFunction& g)
{
    detail::check_covers(spec, g);
    detail::rb_plan plan(spec, g);
    GridFunction out{g.xs, std::vector<double>(g.size())};
    plan.apply(g.ys, out.ys);
    return out;
}

struct GridSolve {
    GridFunction grid;
    std::size_t iterations = 0;
    /// sup |g_k - g_{k-1}| of the final iteration.
    double last_step = 0.0;
};

/// Fixed-point iteration of rb_apply on n equally spaced points from g_0 = f
/// until sup |g_k - g_{k-1}| <= tol (1 - |alpha|_inf). Throws
/// errc::no_convergence after 10 * depth_for_tolerance(spec, tol) + 50 sweeps.
inline GridSolve solve_grid(const AlphaFractalSpec& spec, std::size_t n, double tol)
{
    const auto& p = spec.partition();
    if (n < p.intervals() + 1) {
        throw error(errc::invalid_argument, "grid size must be at least N+1 = " +
                                                std::to_string(p.intervals() + 1));
    }
    if (!(tol > 0.0)) throw error(errc::invalid_argument, "tolerance must be positive");

    GridFunction g{linspace(p.front(), p.back(), n), {}};
    g.ys.reserve(n);
    for (double x : g.xs) g.ys.push_back(spec.f()(x));

    const detail::rb_plan plan(spec, g);
    const double stop = tol * (1.0 - spec.alpha().sup_norm());
    const std::size_t cap = 10 * depth_for_tolerance(spec, tol) + 50;
    std::vector<double> next(n);
    for (std::size_t it = 1; it <= cap; ++it) {
        const double step = plan.apply(g.ys, next);
        g.ys.swap(next);
        if (step <= stop) return {std::move(g), it, step};
    }
    throw error(errc::no_convergence,
                "grid iteration did not reach tol=" + format_real(tol) + " within " +
                    std::to_string(cap) + " sweeps; try a larger grid size n");
}

inline GridFunction eval_grid(const AlphaFractalSpec& spec, std::size_t n, double tol)
{
    return solve_grid(spec, n, tol).grid;
}

/// sup |g - T g| on g's grid.
inline double fixed_point_residual(const AlphaFractalSpec& spec, const GridFunction& g)
{
    const GridFunction tg = rb_apply(spec, g);
    double r = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) r = std::max(r, std::abs(tg.ys[j] - g.ys[j]));
    return r;
}

} // namespace fracint
