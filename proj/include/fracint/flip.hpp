#pragma once

/**
 * @file flip.hpp
 * @brief Mirror image of an alpha-fractal function about the y-axis.
 *
 * For I = [x_0, x_N] the flipped instance lives on I_F = [-x_N, -x_0] with
 * knots -x_N < ... < -x_0, scale vector (alpha_N, ..., alpha_1), germ
 * f_F(x) = f(-x) and base b_F(x) = b(-x). Its map coefficients are
 * a_Fi = a_{N+1-i}, e_Fi = -e_{N+1-i}, so lambda_F = lambda, and its fractal
 * function satisfies f_F^{alpha_F}(-x) = f^alpha(x).
 */

#include <fracint/core.hpp>
#include <fracint/eval.hpp>
#include <fracint/integral.hpp>

#include <algorithm>
#include <cstddef>
#include <vector>

namespace fracint {

/// A flipped instance. `spec` is an ordinary AlphaFractalSpec on I_F, so
/// every other operation accepts it unchanged.
struct FlippedSpec {
    AlphaFractalSpec spec;

    const Partition& partition() const noexcept { return spec.partition(); }
    const ScaleVector& alpha() const noexcept { return spec.alpha(); }
    const Expr& f() const noexcept { return spec.f(); }
    const Expr& b() const noexcept { return spec.b(); }
};

/// Negated, reversed knots; -0 is normalised to +0 so a double flip is exact.
inline std::vector<double> flipped_knots(std::span<const double> knots)
{
    std::vector<double> out(knots.rbegin(), knots.rend());
    for (double& x : out) x = -x + 0.0;
    return out;
}

inline SpecDraft flip_draft(const SpecDraft& d)
{
    return {flipped_knots(d.knots), {d.alphas.rbegin(), d.alphas.rend()}, d.f.negate_argument(),
            d.b.negate_argument()};
}

inline FlippedSpec flip_spec(const AlphaFractalSpec& spec)
{
    return {validate(flip_draft(spec.draft()))};
}

inline EvalReport eval_flipped(const FlippedSpec& flipped, double x, std::size_t depth)
{
    return eval_point(flipped.spec, x, depth);
}

/// int over I_F of f_F^{alpha_F}, from the closed form applied to the
/// flipped instance itself.
inline double flip_integral(const AlphaFractalSpec& spec)
{
    return integrate_closed_form(flip_spec(spec).spec).value;
}

} // namespace fracint
