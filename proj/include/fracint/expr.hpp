#pragma once

/**
 * @file expr.hpp
 * @brief One-variable arithmetic expressions: parsing, evaluation, printing.
 *
 * Grammar (lowest to highest precedence):
 *
 *     expr    := term (('+' | '-') term)*
 *     term    := unary (('*' | '/') unary)*
 *     unary   := ('-' | '+') unary | power
 *     power   := primary ('^' unary)?          right associative
 *     primary := number | 'x' | name '(' expr ')' | '(' expr ')'
 *
 * so `-x^2` is `-(x^2)` and `2^3^2` is `2^(3^2)`. Recognised names are
 * sin, cos, exp, log, sqrt and abs.
 *
 * Trees are immutable and share structure, so copies are cheap and a single
 * Expr may be evaluated from several threads at once.
 */

#include <fracint/error.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fracint {

enum class expr_kind { number, variable, negate, add, subtract, multiply, divide, power, call };
enum class expr_function { sin, cos, exp, log, sqrt, abs };

inline const char* function_name(expr_function fn) noexcept
{
    switch (fn) {
    case expr_function::sin: return "sin";
    case expr_function::cos: return "cos";
    case expr_function::exp: return "exp";
    case expr_function::log: return "log";
    case expr_function::sqrt: return "sqrt";
    case expr_function::abs: return "abs";
    }
    return "?";
}

inline std::optional<expr_function> function_from_name(std::string_view name) noexcept
{
    static constexpr std::array<expr_function, 6> all{
        expr_function::sin, expr_function::cos,  expr_function::exp,
        expr_function::log, expr_function::sqrt, expr_function::abs,
    };
    for (auto fn : all) {
        if (name == function_name(fn)) return fn;
    }
    return std::nullopt;
}

/// Shortest decimal text that reads back as exactly `v`.
inline std::string format_real(double v)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) return std::to_string(v);
    return std::string(buf.data(), end);
}

class Expr {
public:
    struct node {
        expr_kind kind = expr_kind::number;
        double value = 0.0;
        expr_function fn = expr_function::sin;
        std::shared_ptr<const node> lhs;
        std::shared_ptr<const node> rhs;
    };
    using node_ptr = std::shared_ptr<const node>;

    /// The constant 0.
    Expr() : Expr(number(0.0)) {}

    static Expr number(double v)
    {
        if (!std::isfinite(v)) {
            throw error(errc::invalid_argument, "expression literal must be finite");
        }
        return Expr(make(expr_kind::number, v));
    }

    static Expr variable() { return Expr(make(expr_kind::variable)); }

    static Expr call(expr_function fn, const Expr& arg)
    {
        auto n = std::make_shared<node>();
        n->kind = expr_kind::call;
        n->fn = fn;
        n->lhs = arg.root_;
        return Expr(std::move(n));
    }

    static Expr pow(const Expr& base, const Expr& exponent)
    {
        return binary(expr_kind::power, base, exponent);
    }

    friend Expr operator-(const Expr& e) { return Expr(make(expr_kind::negate, 0.0, e.root_)); }
    friend Expr operator+(const Expr& a, const Expr& b) { return binary(expr_kind::add, a, b); }
    friend Expr operator-(const Expr& a, const Expr& b) { return binary(expr_kind::subtract, a, b); }
    friend Expr operator*(const Expr& a, const Expr& b) { return binary(expr_kind::multiply, a, b); }
    friend Expr operator/(const Expr& a, const Expr& b) { return binary(expr_kind::divide, a, b); }

    const node& root() const noexcept { return *root_; }

    /// Evaluate at `x`. Throws error(errc::domain) naming the offending
    /// subexpression when log/sqrt/division/power leave the reals or a
    /// result is not finite.
    double operator()(double x) const { return eval(*root_, x); }

    std::string str() const { return print(*root_); }

    /// Same tree up to literal values (compared through their exact text).
    friend bool operator==(const Expr& a, const Expr& b)
    {
        return a.root_ == b.root_ || a.str() == b.str();
    }

    /// Coefficients c[k] of x^k when the tree is a polynomial in x built from
    /// + - * unary minus, division by constants and non-negative integer
    /// powers; calls with constant arguments are folded.
    std::optional<std::vector<double>> as_polynomial(std::size_t max_degree = 64) const
    {
        return polynomial(*root_, max_degree);
    }

    /// The expression with x replaced by -x. Applied twice it returns a tree
    /// structurally identical to the original.
    Expr negate_argument() const { return Expr(negated(root_)); }

    /// The expression with every occurrence of x replaced by `inner`.
    Expr substitute(const Expr& inner) const { return Expr(substituted(root_, inner.root_)); }

private:
    explicit Expr(node_ptr root) : root_(std::move(root)) {}

    static node_ptr make(expr_kind kind, double value = 0.0, node_ptr lhs = nullptr,
                         node_ptr rhs = nullptr)
    {
        auto n = std::make_shared<node>();
        n->kind = kind;
        n->value = value;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        return n;
    }

    static Expr binary(expr_kind kind, const Expr& a, const Expr& b)
    {
        return Expr(make(kind, 0.0, a.root_, b.root_));
    }

    [[noreturn]] static void domain_failure(const node& n, double x, const char* why)
    {
        throw error(errc::domain,
                    std::string(why) + " in '" + print(n) + "' at x=" + format_real(x));
    }

    static double checked(const node& n, double x, double v)
    {
        if (!std::isfinite(v)) domain_failure(n, x, "non-finite result");
        return v;
    }

    static double eval(const node& n, double x)
    {
        switch (n.kind) {
        case expr_kind::number: return n.value;
        case expr_kind::variable: return x;
        case expr_kind::negate: return -eval(*n.lhs, x);
        case expr_kind::add: return checked(n, x, eval(*n.lhs, x) + eval(*n.rhs, x));
        case expr_kind::subtract: return checked(n, x, eval(*n.lhs, x) - eval(*n.rhs, x));
        case expr_kind::multiply: return checked(n, x, eval(*n.lhs, x) * eval(*n.rhs, x));
        case expr_kind::divide: {
            const double num = eval(*n.lhs, x);
            const double den = eval(*n.rhs, x);
            if (den == 0.0) domain_failure(n, x, "division by zero");
            return checked(n, x, num / den);
        }
        case expr_kind::power: {
            const double base = eval(*n.lhs, x);
            const double ex = eval(*n.rhs, x);
            if (base == 0.0 && ex < 0.0) domain_failure(n, x, "zero to a negative power");
            if (base < 0.0 && ex != std::trunc(ex)) {
                domain_failure(n, x, "negative base to a non-integer power");
            }
            return checked(n, x, std::pow(base, ex));
        }
        case expr_kind::call: {
            const double arg = eval(*n.lhs, x);
            switch (n.fn) {
            case expr_function::sin: return std::sin(arg);
            case expr_function::cos: return std::cos(arg);
            case expr_function::exp: return checked(n, x, std::exp(arg));
            case expr_function::log:
                if (arg <= 0.0) domain_failure(n, x, "log of non-positive argument");
                return std::log(arg);
            case expr_function::sqrt:
                if (arg < 0.0) domain_failure(n, x, "sqrt of negative argument");
                return std::sqrt(arg);
            case expr_function::abs: return std::abs(arg);
            }
        }
        }
        return 0.0;
    }

    static int precedence(const node& n)
    {
        switch (n.kind) {
        case expr_kind::add:
        case expr_kind::subtract: return 1;
        case expr_kind::multiply:
        case expr_kind::divide: return 2;
        case expr_kind::negate: return 3;
        case expr_kind::power: return 4;
        case expr_kind::number: return std::signbit(n.value) ? 3 : 5;
        case expr_kind::variable:
        case expr_kind::call: return 5;
        }
        return 5;
    }

    static std::string wrap(const node& n, bool parens)
    {
        return parens ? "(" + print(n) + ")" : print(n);
    }

    // Parenthesises exactly where re-parsing would otherwise build a
    // different tree, so print/parse preserves evaluation order.
    static std::string print(const node& n)
    {
        switch (n.kind) {
        case expr_kind::number: return format_real(n.value);
        case expr_kind::variable: return "x";
        case expr_kind::negate: return "-" + wrap(*n.lhs, precedence(*n.lhs) < 3);
        case expr_kind::add:
        case expr_kind::subtract:
            return wrap(*n.lhs, false) + (n.kind == expr_kind::add ? " + " : " - ") +
                   wrap(*n.rhs, precedence(*n.rhs) <= 1);
        case expr_kind::multiply:
        case expr_kind::divide:
            return wrap(*n.lhs, precedence(*n.lhs) < 2) +
                   (n.kind == expr_kind::multiply ? " * " : " / ") +
                   wrap(*n.rhs, precedence(*n.rhs) <= 2);
        case expr_kind::power:
            return wrap(*n.lhs, precedence(*n.lhs) <= 4) + "^" +
                   wrap(*n.rhs, precedence(*n.rhs) < 3);
        case expr_kind::call: return std::string(function_name(n.fn)) + "(" + print(*n.lhs) + ")";
        }
        return {};
    }

    static node_ptr negated(const node_ptr& n)
    {
        if (n->kind == expr_kind::variable) return make(expr_kind::negate, 0.0, n);
        if (n->kind == expr_kind::negate && n->lhs->kind == expr_kind::variable) return n->lhs;
        if (!n->lhs) return n;
        auto copy = std::make_shared<node>(*n);
        copy->lhs = negated(n->lhs);
        if (n->rhs) copy->rhs = negated(n->rhs);
        return copy;
    }

    static node_ptr substituted(const node_ptr& n, const node_ptr& inner)
    {
        if (n->kind == expr_kind::variable) return inner;
        if (!n->lhs) return n;
        auto copy = std::make_shared<node>(*n);
        copy->lhs = substituted(n->lhs, inner);
        if (n->rhs) copy->rhs = substituted(n->rhs, inner);
        return copy;
    }

    using poly = std::vector<double>;

    static void trim(poly& p)
    {
        while (p.size() > 1 && p.back() == 0.0) p.pop_back();
    }

    static poly multiply(const poly& a, const poly& b)
    {
        poly out(a.size() + b.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        }
        trim(out);
        return out;
    }

    static std::optional<poly> polynomial(const node& n, std::size_t max_degree)
    {
        switch (n.kind) {
        case expr_kind::number: return poly{n.value};
        case expr_kind::variable: return poly{0.0, 1.0};
        case expr_kind::negate: {
            auto p = polynomial(*n.lhs, max_degree);
            if (!p) return std::nullopt;
            for (auto& c : *p) c = -c;
            return p;
        }
        case expr_kind::add:
        case expr_kind::subtract: {
            auto a = polynomial(*n.lhs, max_degree);
            auto b = polynomial(*n.rhs, max_degree);
            if (!a || !b) return std::nullopt;
            const double sign = n.kind == expr_kind::add ? 1.0 : -1.0;
            poly out(std::max(a->size(), b->size()), 0.0);
            for (std::size_t i = 0; i < a->size(); ++i) out[i] += (*a)[i];
            for (std::size_t i = 0; i < b->size(); ++i) out[i] += sign * (*b)[i];
            trim(out);
            return out;
        }
        case expr_kind::multiply: {
            auto a = polynomial(*n.lhs, max_degree);
            auto b = polynomial(*n.rhs, max_degree);
            if (!a || !b || a->size() + b->size() - 2 > max_degree) return std::nullopt;
            return multiply(*a, *b);
        }
        case expr_kind::divide: {
            auto a = polynomial(*n.lhs, max_degree);
            auto b = polynomial(*n.rhs, max_degree);
            if (!a || !b || b->size() != 1 || (*b)[0] == 0.0) return std::nullopt;
            for (auto& c : *a) c /= (*b)[0];
            return a;
        }
        case expr_kind::power: {
            auto base = polynomial(*n.lhs, max_degree);
            auto ex = polynomial(*n.rhs, max_degree);
            if (!base || !ex || ex->size() != 1) return std::nullopt;
            const double e = (*ex)[0];
            if (e < 0.0 || e != std::trunc(e)) return std::nullopt;
            if ((base->size() - 1) * e > static_cast<double>(max_degree)) return std::nullopt;
            poly out{1.0};
            for (int k = 0; k < static_cast<int>(e); ++k) out = multiply(out, *base);
            return out;
        }
        case expr_kind::call: {
            auto arg = polynomial(*n.lhs, max_degree);
            if (!arg || arg->size() != 1) return std::nullopt;
            try {
                return poly{eval(n, 0.0)};
            } catch (const error&) {
                return std::nullopt;
            }
        }
        }
        return std::nullopt;
    }

    node_ptr root_;

    friend class expr_parser;
};

/// Recursive-descent parser for the grammar documented at the top of this file.
class expr_parser {
public:
    explicit expr_parser(std::string_view text) : text_(text) {}

    Expr parse()
    {
        skip_space();
        if (pos_ == text_.size()) fail(errc::syntax, "empty expression");
        Expr e = parse_sum();
        skip_space();
        if (pos_ != text_.size()) {
            fail(errc::syntax, "unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(errc code, const std::string& msg) const { fail_at(code, msg, pos_); }

    [[noreturn]] void fail_at(errc code, const std::string& msg, std::size_t at) const
    {
        throw error(code, msg + " at offset " + std::to_string(at), at);
    }

    void skip_space()
    {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                text_[pos_] == '\r')) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_sum()
    {
        Expr lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = lhs + parse_product();
            } else if (accept('-')) {
                lhs = lhs - parse_product();
            } else {
                return lhs;
            }
        }
    }

    Expr parse_product()
    {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = lhs * parse_unary();
            } else if (accept('/')) {
                lhs = lhs / parse_unary();
            } else {
                return lhs;
            }
        }
    }

    Expr parse_unary()
    {
        if (accept('-')) return -parse_unary();
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    Expr parse_power()
    {
        Expr base = parse_primary();
        if (accept('^')) return Expr::pow(base, parse_unary());
        return base;
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

    Expr parse_number()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (is_digit(text_[pos_]) || text_[pos_] == '.')) ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && is_digit(text_[look])) {
                pos_ = look;
                while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
            }
        }
        double v = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
            fail_at(errc::syntax, "malformed number '" + std::string(first, last) + "'", start);
        }
        return Expr::number(v);
    }

    Expr parse_primary()
    {
        skip_space();
        if (pos_ == text_.size()) fail(errc::syntax, "unexpected end of expression");
        const char c = text_[pos_];
        if (is_digit(c) || c == '.') return parse_number();
        if (c == '(') {
            ++pos_;
            Expr inner = parse_sum();
            if (!accept(')')) fail(errc::syntax, "expected ')'");
            return inner;
        }
        if (is_alpha(c)) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (is_alpha(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            if (name == "x") return Expr::variable();
            auto fn = function_from_name(name);
            if (!fn) fail_at(errc::unknown_identifier, "unknown identifier '" + name + "'", start);
            if (!accept('(')) fail(errc::syntax, "expected '(' after '" + name + "'");
            std::vector<Expr> args;
            args.push_back(parse_sum());
            while (accept(',')) args.push_back(parse_sum());
            if (!accept(')')) fail(errc::syntax, "expected ')'");
            if (args.size() != 1) {
                fail_at(errc::arity_mismatch,
                        name + " takes 1 argument, got " + std::to_string(args.size()), start);
            }
            return Expr::call(*fn, args.front());
        }
        fail(errc::syntax, "unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline Expr parse_expr(std::string_view text) { return expr_parser(text).parse(); }

inline double eval_expr(const Expr& e, double x) { return e(x); }

/// g(x) = slope * x + intercept
struct affine_form {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Numeric affinity test: second differences at five equally spaced probes
/// on [lo, hi] must all be within 1e-9 relative to the probed magnitude.
inline std::optional<affine_form> detect_affine(const Expr& g, double lo, double hi)
{
    if (!(lo < hi)) throw error(errc::invalid_argument, "probe interval must satisfy lo < hi");
    constexpr int probes = 5;
    std::array<double, probes> ys{};
    double scale = 1.0;
    for (int k = 0; k < probes; ++k) {
        const double x = (lo * (probes - 1 - k) + hi * k) / (probes - 1);
        ys[k] = g(x);
        scale = std::max(scale, std::abs(ys[k]));
    }
    for (int k = 1; k + 1 < probes; ++k) {
        if (std::abs(ys[k - 1] - 2.0 * ys[k] + ys[k + 1]) > 1e-9 * scale) return std::nullopt;
    }
    const double slope = (ys[probes - 1] - ys[0]) / (hi - lo);
    return affine_form{slope, ys[0] - slope * lo};
}

/// Exact integral over [a, b] of the polynomial with coefficients `c`.
inline double integrate_polynomial(const std::vector<double>& c, double a, double b)
{
    auto antiderivative = [&c](double x) {
        double acc = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k] / static_cast<double>(k + 1);
        return acc * x;
    };
    return antiderivative(b) - antiderivative(a);
}

} // namespace fracint
