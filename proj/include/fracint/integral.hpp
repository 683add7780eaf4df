#pragma once

/**
 * @file integral.hpp
 * @brief Closed-form definite integrals of alpha-fractal functions.
 *
 * Integrating the self-referential equation over each I_i and substituting
 * z = L_i^{-1}(x) gives
 *
 *     int f^alpha = int f + lambda int (f^alpha - b),   lambda = sum a_i alpha_i
 *
 * hence int f^alpha = (int f - lambda int b) / (1 - lambda). Everything
 * else in this file is algebra on top of that identity: the zero-sum
 * shortcut, scale-vector equivalence, linearity, and affine composition.
 */

#include <fracint/core.hpp>
#include <fracint/error.hpp>
#include <fracint/eval.hpp>
#include <fracint/expr.hpp>
#include <fracint/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracint {

inline constexpr double expr_quadrature_tol = 1e-12;
inline constexpr double algebra_tolerance = 1e-10;

/// Definite integral of an expression over [a, b]: exact for polynomial
/// trees, adaptive Simpson to 1e-12 otherwise.
inline double integrate_expr(const Expr& e, double a, double b)
{
    if (auto coeffs = e.as_polynomial()) return integrate_polynomial(*coeffs, a, b);
    const auto q = adaptive_simpson(e, a, b, expr_quadrature_tol);
    if (!std::isfinite(q.value) || q.abs_error_estimate > expr_quadrature_tol) {
        throw error(errc::quadrature_non_convergence,
                    "integral of '" + e.str() + "' over [" + format_real(a) + ", " + format_real(b) +
                        "] did not converge (error estimate " + format_real(q.abs_error_estimate) + ")");
    }
    return q.value;
}

struct IntegralResult {
    double value = 0.0;
    double lambda = 0.0;
    double integral_f = 0.0;
    double integral_b = 0.0;
};

inline IntegralResult integrate_closed_form(const AlphaFractalSpec& spec)
{
    const auto& p = spec.partition();
    IntegralResult r;
    r.lambda = lambda(spec);
    r.integral_f = integrate_expr(spec.f(), p.front(), p.back());
    r.integral_b = integrate_expr(spec.b(), p.front(), p.back());
    r.value = (r.integral_f - r.lambda * r.integral_b) / (1.0 - r.lambda);
    return r;
}

namespace detail {

[[noreturn]] inline void identity_violated(const std::string& what, double got, double want)
{
    throw std::logic_error(what + ": got " + format_real(got) + ", expected " + format_real(want));
}

inline void require_close(const std::string& what, double got, double want, double tol)
{
    if (!(std::abs(got - want) <= tol)) identity_violated(what, got, want);
}

} // namespace detail

/// int f when the partition is uniform and the scale factors sum to zero
/// (then lambda = 0 for every base b); nullopt otherwise.
inline std::optional<double> sum_zero_shortcut(const AlphaFractalSpec& spec)
{
    const auto& p = spec.partition();
    if (!p.is_uniform() || std::abs(spec.alpha().sum()) > 1e-12) return std::nullopt;
    const double value = integrate_expr(spec.f(), p.front(), p.back());
    detail::require_close("zero-sum shortcut", value, integrate_closed_form(spec).value,
                          algebra_tolerance);
    return value;
}

/// On a uniform partition, two scale vectors with equal sums give equal
/// lambda and therefore equal integrals (the functions themselves differ).
/// Throws errc::spec_mismatch unless partition, f and b are identical.
inline bool scale_vectors_equivalent(const AlphaFractalSpec& lhs, const AlphaFractalSpec& rhs)
{
    if (!(lhs.partition() == rhs.partition()) || !(lhs.f() == rhs.f()) || !(lhs.b() == rhs.b())) {
        throw error(errc::spec_mismatch, "scale vectors can only be compared on a shared partition, f and b");
    }
    if (!lhs.partition().is_uniform()) return false;
    if (std::abs(lhs.alpha().sum() - rhs.alpha().sum()) > 1e-12) return false;
    detail::require_close("equal scale sums", integrate_closed_form(lhs).value,
                          integrate_closed_form(rhs).value, algebra_tolerance);
    return true;
}

/// The instance of gamma f + delta g with base gamma b + delta b~, whose
/// fractal function is gamma f^alpha_b + delta g^alpha_b~. Both inputs must
/// share partition and scale vector (errc::spec_mismatch otherwise).
inline AlphaFractalSpec combine_linear(const AlphaFractalSpec& sf, const AlphaFractalSpec& sg,
                                       double gamma, double delta)
{
    if (!(sf.partition() == sg.partition()) || !(sf.alpha() == sg.alpha())) {
        throw error(errc::spec_mismatch, "linear combination needs identical partition and scale vector");
    }
    const Expr cg = Expr::number(gamma);
    const Expr cd = Expr::number(delta);
    SpecDraft draft = sf.draft();
    draft.f = cg * sf.f() + cd * sg.f();
    draft.b = cg * sf.b() + cd * sg.b();
    AlphaFractalSpec out = validate(draft);
    detail::require_close("linear combination integral", integrate_closed_form(out).value,
                          gamma * integrate_closed_form(sf).value + delta * integrate_closed_form(sg).value,
                          algebra_tolerance);
    return out;
}

/// The instance of g o f with base g o b for g(x) = p x + q, whose fractal
/// function is g o f^alpha.
inline AlphaFractalSpec compose_affine(const AlphaFractalSpec& spec, double p, double q)
{
    if (!std::isfinite(p) || !std::isfinite(q)) {
        throw error(errc::invalid_argument, "affine coefficients must be finite");
    }
    const Expr cp = Expr::number(p);
    const Expr cq = Expr::number(q);
    SpecDraft draft = spec.draft();
    draft.f = cp * spec.f() + cq;
    draft.b = cp * spec.b() + cq;
    AlphaFractalSpec out = validate(draft);
    detail::require_close("affine composition integral", integrate_closed_form(out).value,
                          p * integrate_closed_form(spec).value + q * spec.partition().length(),
                          algebra_tolerance);
    return out;
}

/// Observed range of f^alpha, f and b over I, sampled at `samples` points.
inline std::pair<double, double> sampled_range(const AlphaFractalSpec& spec, std::size_t samples = 1025,
                                               double tol = 1e-8)
{
    const std::size_t depth = depth_for_tolerance(spec, tol);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double x : linspace(spec.partition().front(), spec.partition().back(), samples)) {
        for (double y : {eval_point(spec, x, depth).value, spec.f()(x), spec.b()(x)}) {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
    }
    return {lo, hi};
}

/// Composition with an expression g, which must be affine on the observed
/// range of f^alpha (errc::not_affine otherwise). The result's germ and base
/// are the literal trees g(f(x)) and g(b(x)).
inline AlphaFractalSpec compose(const AlphaFractalSpec& spec, const Expr& g)
{
    auto [lo, hi] = sampled_range(spec);
    if (!(lo < hi)) {
        lo -= 1.0;
        hi += 1.0;
    }
    const auto form = detect_affine(g, lo, hi);
    if (!form) {
        throw error(errc::not_affine, "'" + g.str() + "' is not affine on [" + format_real(lo) + ", " +
                                          format_real(hi) + "]");
    }
    SpecDraft draft = spec.draft();
    draft.f = g.substitute(spec.f());
    draft.b = g.substitute(spec.b());
    AlphaFractalSpec out = validate(draft);
    const double scale = 1.0 + std::abs(form->slope) + std::abs(form->intercept);
    detail::require_close("composition integral", integrate_closed_form(out).value,
                          form->slope * integrate_closed_form(spec).value +
                              form->intercept * spec.partition().length(),
                          1e-8 * scale);
    return out;
}

struct LimitStep {
    double t = 0.0;
    double value = 0.0;
    /// |int f^{t alpha} - int f|
    double deviation = 0.0;
    /// |t lambda| |int f - int b| / (1 - t lambda)
    double predicted = 0.0;
};

struct LimitReport {
    std::vector<LimitStep> steps;
    /// Integral at alpha = 0.
    double zero_value = 0.0;
    double integral_f = 0.0;
    bool monotone = true;
    bool matches_prediction = true;
};

/// Integrals along t alpha for t = 1, 1/2, ..., 1/2^(steps-1), plus t = 0.
inline LimitReport integral_limit_check(const AlphaFractalSpec& spec, std::size_t steps = 5)
{
    LimitReport report;
    const IntegralResult base = integrate_closed_form(spec);
    report.integral_f = base.integral_f;
    const double gap = std::abs(base.integral_f - base.integral_b);

    auto scaled = [&spec](double t) {
        SpecDraft draft = spec.draft();
        for (auto& a : draft.alphas) a *= t;
        return validate(draft);
    };

    double t = 1.0;
    for (std::size_t k = 0; k < steps; ++k, t *= 0.5) {
        const IntegralResult r = integrate_closed_form(scaled(t));
        LimitStep step{t, r.value, std::abs(r.value - base.integral_f),
                       std::abs(r.lambda) * gap / (1.0 - r.lambda)};
        if (std::abs(step.deviation - step.predicted) > 1e-12 * (1.0 + std::abs(r.value))) {
            report.matches_prediction = false;
        }
        if (!report.steps.empty()) {
            const double prev = report.steps.back().deviation;
            if (prev > 0.0 ? !(step.deviation < prev) : step.deviation > 0.0) report.monotone = false;
        }
        report.steps.push_back(step);
    }
    report.zero_value = integrate_closed_form(scaled(0.0)).value;
    return report;
}

} // namespace fracint
