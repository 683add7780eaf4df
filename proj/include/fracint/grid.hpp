#pragma once

#include <fracint/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace fracint {

/// `n` equally spaced abscissae from `lo` to `hi` inclusive. Point k is
/// (lo*(n-1-k) + hi*k)/(n-1), which makes the grid of [-hi, -lo] the exact
/// negated reverse of the grid of [lo, hi].
inline std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    if (n < 2) throw error(errc::invalid_argument, "linspace needs at least 2 points");
    std::vector<double> xs(n);
    const double steps = static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k);
        xs[k] = (lo * (steps - kk) + hi * kk) / steps;
    }
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

/// Samples of a function on an ordered abscissa grid.
struct GridFunction {
    std::vector<double> xs;
    std::vector<double> ys;

    std::size_t size() const noexcept { return xs.size(); }

    /// Throws unless xs is strictly increasing, sizes match and all values are finite.
    void check() const
    {
        if (xs.size() != ys.size()) throw error(errc::length_mismatch, "grid xs/ys sizes differ");
        if (xs.size() < 2) throw error(errc::invalid_argument, "grid needs at least 2 points");
        for (std::size_t k = 0; k < xs.size(); ++k) {
            if (!std::isfinite(xs[k]) || !std::isfinite(ys[k])) {
                throw error(errc::invalid_argument, "grid values must be finite");
            }
            if (k > 0 && !(xs[k - 1] < xs[k])) {
                throw error(errc::non_monotone_partition, "grid abscissae must increase strictly");
            }
        }
    }

    /// Index k with xs[k] <= u <= xs[k+1]; u is clamped to the grid range.
    std::size_t segment(double u) const
    {
        if (u <= xs.front()) return 0;
        if (u >= xs.back()) return xs.size() - 2;
        auto it = std::upper_bound(xs.begin(), xs.end(), u);
        return static_cast<std::size_t>(it - xs.begin()) - 1;
    }

    /// Piecewise-linear interpolant at u (clamped to [xs.front(), xs.back()]).
    double interpolate(double u) const
    {
        const std::size_t k = segment(u);
        const double t = std::clamp((u - xs[k]) / (xs[k + 1] - xs[k]), 0.0, 1.0);
        return ys[k] + t * (ys[k + 1] - ys[k]);
    }
};

} // namespace fracint
