#pragma once

/**
 * @file core.hpp
 * @brief Problem instances for alpha-fractal functions and their affine IFS.
 *
 * An instance is a partition x_0 < ... < x_N of I = [x_0, x_N], a scale
 * vector (alpha_1, ..., alpha_N) with |alpha_i| < 1, a germ f and a base b
 * with b = f at both ends of I. The IFS maps are
 *
 *     L_i(x)    = a_i x + e_i
 *     F_i(x, y) = alpha_i y + f(L_i(x)) - alpha_i b(x)
 *
 * with a_i = (x_i - x_{i-1}) / (x_N - x_0) and
 * e_i = (x_N x_{i-1} - x_0 x_i) / (x_N - x_0).
 *
 * Interval numbers i are 1-based throughout: I_i = [x_{i-1}, x_i].
 */

#include <fracint/error.hpp>
#include <fracint/expr.hpp>
#include <fracint/grid.hpp>
#include <fracint/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fracint {

inline constexpr double endpoint_tolerance = 1e-12;

class Partition {
public:
    /// Throws errc::non_monotone_partition unless the knots are finite and
    /// strictly increasing, and errc::invalid_argument when N < 2.
    explicit Partition(std::vector<double> knots) : knots_(std::move(knots))
    {
        if (knots_.size() < 3) {
            throw error(errc::invalid_argument,
                        "partition needs N >= 2 subintervals, got " +
                            std::to_string(knots_.empty() ? 0 : knots_.size() - 1));
        }
        for (std::size_t k = 0; k < knots_.size(); ++k) {
            if (!std::isfinite(knots_[k])) {
                throw error(errc::non_monotone_partition, "knot " + std::to_string(k) + " is not finite");
            }
            if (k > 0 && !(knots_[k - 1] < knots_[k])) {
                throw error(errc::non_monotone_partition,
                            "knots must increase strictly: x_" + std::to_string(k - 1) + "=" +
                                format_real(knots_[k - 1]) + " >= x_" + std::to_string(k) + "=" +
                                format_real(knots_[k]));
            }
        }
    }

    static Partition uniform(double x0, double xn, std::size_t intervals)
    {
        if (intervals < 2) throw error(errc::invalid_argument, "uniform partition needs N >= 2");
        if (!(x0 < xn)) throw error(errc::non_monotone_partition, "interval must satisfy x0 < xN");
        return Partition(linspace(x0, xn, intervals + 1));
    }

    std::span<const double> knots() const noexcept { return knots_; }
    double knot(std::size_t k) const { return knots_.at(k); }
    std::size_t intervals() const noexcept { return knots_.size() - 1; }
    double front() const noexcept { return knots_.front(); }
    double back() const noexcept { return knots_.back(); }
    double length() const noexcept { return knots_.back() - knots_.front(); }

    bool contains(double x) const noexcept { return front() <= x && x <= back(); }

    /// All subinterval widths equal, relative to |I|, within `tol`.
    bool is_uniform(double tol = 1e-12) const noexcept
    {
        const double first = (knots_[1] - knots_[0]) / length();
        for (std::size_t k = 1; k < knots_.size(); ++k) {
            if (std::abs((knots_[k] - knots_[k - 1]) / length() - first) > tol) return false;
        }
        return true;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<double> knots_;
};

class ScaleVector {
public:
    /// Throws errc::scale_out_of_range unless every entry is finite with |alpha_i| < 1.
    explicit ScaleVector(std::vector<double> alphas) : alphas_(std::move(alphas))
    {
        for (std::size_t k = 0; k < alphas_.size(); ++k) {
            if (!std::isfinite(alphas_[k]) || !(std::abs(alphas_[k]) < 1.0)) {
                throw error(errc::scale_out_of_range, "|alpha_" + std::to_string(k + 1) +
                                                          "| = " + format_real(std::abs(alphas_[k])) +
                                                          " is not < 1");
            }
        }
    }

    std::span<const double> values() const noexcept { return alphas_; }
    std::size_t size() const noexcept { return alphas_.size(); }
    /// 1-based.
    double operator[](std::size_t i) const { return alphas_.at(i - 1); }

    /// |alpha|_inf; the contraction factor of the RB operator.
    double sup_norm() const noexcept
    {
        double s = 0.0;
        for (double a : alphas_) s = std::max(s, std::abs(a));
        return s;
    }

    double sum() const noexcept
    {
        compensated_sum acc;
        for (double a : alphas_) acc.add(a);
        return acc.value();
    }

    friend bool operator==(const ScaleVector&, const ScaleVector&) = default;

private:
    std::vector<double> alphas_;
};

struct ifs_row {
    double a = 0.0;
    double e = 0.0;
    double alpha = 0.0;

    friend bool operator==(const ifs_row&, const ifs_row&) = default;
};

/// Coefficient table of the maps L_i and F_i, one row per subinterval.
class IfsMaps {
public:
    IfsMaps(const Partition& p, const ScaleVector& alpha) : knots_(p.knots().begin(), p.knots().end())
    {
        if (alpha.size() != p.intervals()) {
            throw error(errc::length_mismatch, "scale vector has " + std::to_string(alpha.size()) +
                                                   " entries, partition has " +
                                                   std::to_string(p.intervals()) + " subintervals");
        }
        const double x0 = p.front();
        const double xn = p.back();
        const double span = xn - x0;
        rows_.reserve(p.intervals());
        for (std::size_t i = 1; i <= p.intervals(); ++i) {
            rows_.push_back({(knots_[i] - knots_[i - 1]) / span,
                             (xn * knots_[i - 1] - x0 * knots_[i]) / span, alpha[i]});
        }
    }

    std::span<const ifs_row> rows() const noexcept { return rows_; }
    const ifs_row& row(std::size_t i) const { return rows_.at(i - 1); }
    std::size_t size() const noexcept { return rows_.size(); }

    /// L_i(x) = a_i x + e_i.
    double forward(std::size_t i, double x) const
    {
        const auto& r = row(i);
        return r.a * x + r.e;
    }

    /// L_i^{-1}(x) for x in I_i, computed as a convex combination of the end
    /// knots so that x_{i-1} and x_i map exactly onto x_0 and x_N.
    double inverse(std::size_t i, double x) const
    {
        const double lo = knots_.at(i - 1);
        const double hi = knots_.at(i);
        const double t = std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
        if (t == 1.0) return knots_.back();
        return knots_.front() * (1.0 - t) + knots_.back() * t;
    }

    friend bool operator==(const IfsMaps&, const IfsMaps&) = default;

private:
    std::vector<double> knots_;
    std::vector<ifs_row> rows_;
};

/// 1-based interval number i with x in [x_{i-1}, x_i]. A shared interior
/// knot x_i belongs to the left interval i.
inline std::size_t locate_interval(const Partition& p, double x)
{
    if (!p.contains(x)) {
        throw error(errc::out_of_domain, "x=" + format_real(x) + " outside [" + format_real(p.front()) +
                                             ", " + format_real(p.back()) + "]");
    }
    const auto knots = p.knots();
    auto it = std::lower_bound(knots.begin() + 1, knots.end(), x);
    return static_cast<std::size_t>(it - knots.begin());
}

/// Unvalidated problem instance, as read from a config or built in code.
struct SpecDraft {
    std::vector<double> knots;
    std::vector<double> alphas;
    Expr f;
    Expr b;
};

/// A validated instance. Only `validate` constructs one; every operation in
/// the library takes this type. Immutable.
class AlphaFractalSpec {
public:
    const Partition& partition() const noexcept { return partition_; }
    const ScaleVector& alpha() const noexcept { return alpha_; }
    const Expr& f() const noexcept { return f_; }
    const Expr& b() const noexcept { return b_; }
    const IfsMaps& maps() const noexcept { return maps_; }

    /// Sampled max |f - b| over I (sup_norm_samples points, no safety factor).
    double fb_sampled_max() const noexcept { return fb_max_; }

    /// The ||f - b||_inf estimate used for depth selection and certificates
    /// (sampled max times sup_norm_safety_factor).
    double fb_sup_estimate() const noexcept { return sup_norm_safety_factor * fb_max_; }

    /// Interpolation ordinates y_k = f(x_k), k = 0..N.
    std::span<const double> data() const noexcept { return ys_; }

    SpecDraft draft() const
    {
        auto k = partition_.knots();
        auto a = alpha_.values();
        return {{k.begin(), k.end()}, {a.begin(), a.end()}, f_, b_};
    }

private:
    AlphaFractalSpec(Partition p, ScaleVector a, Expr f, Expr b)
        : partition_(std::move(p))
        , alpha_(std::move(a))
        , f_(std::move(f))
        , b_(std::move(b))
        , maps_(partition_, alpha_)
    {
    }

    Partition partition_;
    ScaleVector alpha_;
    Expr f_;
    Expr b_;
    IfsMaps maps_;
    std::vector<double> ys_;
    double fb_max_ = 0.0;

    friend AlphaFractalSpec validate(const SpecDraft& draft);
};

/// Checks every instance invariant and precomputes the map table, knot data
/// and the sampled ||f - b|| estimate.
///
/// Errors: NonMonotonePartition, ScaleOutOfRange, LengthMismatch,
/// BaseEndpointMismatch (naming the endpoint and residual), and domain
/// errors from evaluating f or b on I.
inline AlphaFractalSpec validate(const SpecDraft& draft)
{
    Partition partition(draft.knots);
    ScaleVector alpha(draft.alphas);
    if (alpha.size() != partition.intervals()) {
        throw error(errc::length_mismatch, "scale vector has " + std::to_string(alpha.size()) +
                                               " entries, partition has " +
                                               std::to_string(partition.intervals()) + " subintervals");
    }
    AlphaFractalSpec spec(std::move(partition), std::move(alpha), draft.f, draft.b);
    const auto& p = spec.partition_;

    for (double x : p.knots()) spec.ys_.push_back(spec.f_(x));

    const std::pair<const char*, double> ends[] = {{"x_0", p.front()}, {"x_N", p.back()}};
    for (const auto& [name, x] : ends) {
        const double fx = spec.f_(x);
        const double bx = spec.b_(x);
        if (!(std::abs(fx - bx) <= endpoint_tolerance)) {
            throw error(errc::base_endpoint_mismatch,
                        std::string("b(") + name + ") != f(" + name + ") at " + name + "=" +
                            format_real(x) + ": b=" + format_real(bx) + ", f=" + format_real(fx) +
                            ", residual=" + format_real(bx - fx));
        }
    }

    // Join-up conditions F_i(x_0, y_0) = y_{i-1}, F_i(x_N, y_N) = y_i.
    const double scale = 1.0 + std::abs(*std::max_element(spec.ys_.begin(), spec.ys_.end(),
                                                          [](double l, double r) {
                                                              return std::abs(l) < std::abs(r);
                                                          }));
    for (std::size_t i = 1; i <= p.intervals(); ++i) {
        const double ai = spec.alpha_[i];
        const double left = ai * spec.ys_.front() + spec.f_(p.knot(i - 1)) - ai * spec.b_(p.front());
        const double right = ai * spec.ys_.back() + spec.f_(p.knot(i)) - ai * spec.b_(p.back());
        if (std::abs(left - spec.ys_[i - 1]) > 1e-9 * scale ||
            std::abs(right - spec.ys_[i]) > 1e-9 * scale) {
            throw error(errc::base_endpoint_mismatch,
                        "join-up condition fails on interval " + std::to_string(i));
        }
    }

    spec.fb_max_ = sampled_max_abs_diff(spec.f_, spec.b_, p.front(), p.back(), sup_norm_samples);
    return spec;
}

inline AlphaFractalSpec validate(const Partition& p, std::vector<double> alphas, Expr f, Expr b)
{
    auto k = p.knots();
    return validate(SpecDraft{{k.begin(), k.end()}, std::move(alphas), std::move(f), std::move(b)});
}

inline const IfsMaps& build_maps(const AlphaFractalSpec& spec) { return spec.maps(); }

/// lambda = sum_i a_i alpha_i. The products are summed in sorted order with
/// compensation, so any permutation of the same (a_i, alpha_i) pairs gives a
/// bitwise identical result.
inline double lambda(const AlphaFractalSpec& spec)
{
    std::vector<double> products;
    products.reserve(spec.maps().size());
    for (const auto& r : spec.maps().rows()) products.push_back(r.a * r.alpha);
    std::sort(products.begin(), products.end());
    compensated_sum acc;
    for (double v : products) acc.add(v);
    return acc.value();
}

/// (|alpha|_inf / (1 - |alpha|_inf)) * max|f - b| over the dense sample.
inline double perturbation_bound(const AlphaFractalSpec& spec)
{
    const double s = spec.alpha().sup_norm();
    if (s == 0.0) return 0.0;
    return s / (1.0 - s) * spec.fb_sampled_max();
}

} // namespace fracint
