#pragma once

/**
 * @file quadrature.hpp
 * @brief Integration oracles.
 *
 * adaptive_simpson is for smooth expressions (germ and base functions);
 * trapezoid_grid is for sampled fractal functions, which are continuous but
 * typically nowhere differentiable, so higher-order rules buy nothing there.
 */

#include <fracint/error.hpp>
#include <fracint/grid.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace fracint {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
    /// Some panel hit the recursion limit; `value` is the best estimate.
    bool depth_limited = false;
};

/// Neumaier-compensated running sum. Order of `add` calls fixes the result.
class compensated_sum {
public:
    void add(double v) noexcept
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

namespace detail {

template <class Fn>
struct simpson_state {
    Fn& fn;
    std::size_t max_depth;
    QuadratureResult result{};
    compensated_sum error{};

    double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                   std::size_t depth)
    {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = fn(lm);
        const double frm = fn(rm);
        result.evaluations += 2;
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        const bool exhausted = depth >= max_depth || lm <= a || rm >= b;
        if (std::abs(delta) <= 15.0 * tol || exhausted) {
            if (exhausted && std::abs(delta) > 15.0 * tol) result.depth_limited = true;
            error.add(std::abs(delta) / 15.0);
            return left + right + delta / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

} // namespace detail

/// Adaptive Simpson with Richardson correction. A panel is accepted when
/// |S_left + S_right - S_whole| <= 15 * tol_local; tol_local halves per level.
template <class Fn>
QuadratureResult adaptive_simpson(Fn&& fn, double a, double b, double tol,
                                  std::size_t max_depth = 60)
{
    if (!(a < b)) throw error(errc::invalid_argument, "adaptive_simpson requires a < b");
    if (!(tol > 0.0)) throw error(errc::invalid_argument, "adaptive_simpson requires tol > 0");
    detail::simpson_state<std::remove_reference_t<Fn>> state{fn, max_depth};
    const double fa = fn(a);
    const double fm = fn(0.5 * (a + b));
    const double fb = fn(b);
    state.result.evaluations = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    state.result.value = state.recurse(a, b, fa, fm, fb, whole, tol, 0);
    state.result.abs_error_estimate = state.error.value();
    return state.result;
}

/// Composite trapezoid rule over a (possibly non-uniform) grid, summed left
/// to right with compensation.
inline double trapezoid_grid(const GridFunction& g)
{
    if (g.xs.size() < 2 || g.xs.size() != g.ys.size()) {
        throw error(errc::invalid_argument, "trapezoid_grid needs >= 2 matched samples");
    }
    compensated_sum acc;
    for (std::size_t k = 0; k + 1 < g.xs.size(); ++k) {
        acc.add(0.5 * (g.xs[k + 1] - g.xs[k]) * (g.ys[k] + g.ys[k + 1]));
    }
    return acc.value();
}

inline constexpr std::size_t sup_norm_samples = 16385;
inline constexpr double sup_norm_safety_factor = 1.25;

/// max |fn1 - fn2| over m equally spaced samples of [a, b], without any
/// safety factor.
template <class Fn1, class Fn2>
double sampled_max_abs_diff(Fn1&& fn1, Fn2&& fn2, double a, double b, std::size_t m)
{
    if (m < 2) throw error(errc::invalid_argument, "need at least 2 samples");
    double best = 0.0;
    for (double x : linspace(a, b, m)) best = std::max(best, std::abs(fn1(x) - fn2(x)));
    return best;
}

/// Sampled sup-norm estimate of fn1 - fn2, inflated by sup_norm_safety_factor.
template <class Fn1, class Fn2>
double sup_norm_diff(Fn1&& fn1, Fn2&& fn2, double a, double b, std::size_t m = sup_norm_samples)
{
    return sup_norm_safety_factor * sampled_max_abs_diff(fn1, fn2, a, b, m);
}

} // namespace fracint
