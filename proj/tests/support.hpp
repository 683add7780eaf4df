#pragma once

#include <fracint/core.hpp>
#include <fracint/expr.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fracint::fixtures {

inline std::string config_path(const std::string& name)
{
    return std::string(FRACINT_CONFIG_DIR) + "/" + name + ".json";
}

inline AlphaFractalSpec uniform_spec(double x0, double xn, const std::string& f, const std::string& b,
                                     std::vector<double> alphas)
{
    const auto p = Partition::uniform(x0, xn, alphas.size());
    return validate(p, std::move(alphas), parse_expr(f), parse_expr(b));
}

inline AlphaFractalSpec cubic_plus_linear()
{
    return uniform_spec(0, 1, "x^3 + x", "2 * x", {0.2, -0.3, 0.5, 0.3, 0.4});
}

inline AlphaFractalSpec reciprocal()
{
    return uniform_spec(0, 1, "1 / (x + 1)", "1 - x / 2", {-0.2, 0.4, 0.3, -0.6, 0.1});
}

inline AlphaFractalSpec cubic_over_square()
{
    return uniform_spec(0, 1, "x^3", "x^2", {-0.1, 0, 0.1, 0.2, 0.3});
}

inline AlphaFractalSpec square_on_negative()
{
    return uniform_spec(-1, 0, "x^2", "-x", {0.2, -0.1, 0, 0.3, 0.4});
}

inline AlphaFractalSpec square_on_unit()
{
    return uniform_spec(0, 1, "x^2", "x", {0.2, -0.1, 0, 0.3, 0.4});
}

inline AlphaFractalSpec root()
{
    return uniform_spec(0, 1, "sqrt(x)", "x", {0.3, 0.5, 0.2, 0.15, 0.02});
}

/// sup over [0,1] of |x^3 - x|, attained at 1/sqrt(3).
inline double cubic_gap_sup() { return 2.0 / (3.0 * std::sqrt(3.0)); }

/// Random instances on a uniform partition: a random cubic germ f and a base
/// b = f + c (x - x0)(x - xN) that matches f at both endpoints.
class instance_generator {
public:
    explicit instance_generator(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    std::vector<double> alphas(std::size_t n, double bound)
    {
        std::vector<double> a(n);
        for (auto& v : a) v = uniform(-bound, bound);
        return a;
    }

    std::string cubic()
    {
        return "(" + format_real(uniform(-2, 2)) + ") * x^3 + (" + format_real(uniform(-2, 2)) + ") * x^2 + (" +
               format_real(uniform(-2, 2)) + ") * x + (" + format_real(uniform(-2, 2)) + ")";
    }

    AlphaFractalSpec instance(std::vector<double> alphas, double x0 = 0.0, double xn = 1.0)
    {
        const std::string f = cubic();
        const std::string bump = "(" + format_real(uniform(-3, 3)) + ") * (x - (" + format_real(x0) +
                                 ")) * (x - (" + format_real(xn) + "))";
        return uniform_spec(x0, xn, f, f + " + " + bump, std::move(alphas));
    }

    AlphaFractalSpec instance(std::size_t n = 5, double bound = 0.6) { return instance(alphas(n, bound)); }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace fracint::fixtures
