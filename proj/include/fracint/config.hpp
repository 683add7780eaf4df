#pragma once

/**
 * @file config.hpp
 * @brief JSON instance files.
 *
 *     {
 *       "interval":  [0, 1],
 *       "partition": {"uniform": 5},          or an explicit knot list [0, 0.3, 1]
 *       "f":         "x^3 + x",
 *       "b":         "2 * x",
 *       "alpha":     [0.2, -0.3, 0.5, 0.3, 0.4]
 *     }
 *
 * All five keys are required and no others are accepted. Saved files carry
 * the canonical printed form of f and b.
 */

#include <fracint/core.hpp>
#include <fracint/error.hpp>
#include <fracint/expr.hpp>
#include <fracint/flip.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace fracint {

struct UniformPartition {
    std::size_t intervals = 0;
    friend bool operator==(const UniformPartition&, const UniformPartition&) = default;
};

struct SpecConfig {
    double x0 = 0.0;
    double xn = 1.0;
    std::variant<UniformPartition, std::vector<double>> partition;
    std::string f;
    std::string b;
    std::vector<double> alpha;

    friend bool operator==(const SpecConfig&, const SpecConfig&) = default;
};

namespace detail {

[[noreturn]] inline void bad_config(const std::string& msg) { throw error(errc::invalid_config, msg); }

inline double json_real(const nlohmann::json& j, const std::string& where)
{
    if (!j.is_number()) bad_config(where + " must be a number");
    return j.get<double>();
}

inline std::vector<double> json_reals(const nlohmann::json& j, const std::string& where)
{
    if (!j.is_array()) bad_config(where + " must be an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(json_real(j[k], where + "[" + std::to_string(k) + "]"));
    }
    return out;
}

} // namespace detail

inline SpecConfig config_from_json(const nlohmann::json& j)
{
    using detail::bad_config;
    if (!j.is_object()) bad_config("config must be a JSON object");
    static const std::set<std::string> keys{"interval", "partition", "f", "b", "alpha"};
    for (const auto& item : j.items()) {
        if (!keys.count(item.key())) bad_config("unknown key '" + item.key() + "'");
    }
    for (const auto& k : keys) {
        if (!j.contains(k)) bad_config("missing key '" + k + "'");
    }

    SpecConfig c;
    const auto interval = detail::json_reals(j.at("interval"), "interval");
    if (interval.size() != 2) bad_config("interval must have exactly two entries");
    c.x0 = interval[0];
    c.xn = interval[1];

    const auto& part = j.at("partition");
    if (part.is_object()) {
        if (part.size() != 1 || !part.contains("uniform")) {
            bad_config("partition object must be {\"uniform\": N}");
        }
        const auto& n = part.at("uniform");
        if (!n.is_number_integer() || n.get<long long>() < 0) {
            bad_config("partition.uniform must be a non-negative integer");
        }
        c.partition = UniformPartition{n.get<std::size_t>()};
    } else if (part.is_array()) {
        c.partition = detail::json_reals(part, "partition");
    } else {
        bad_config("partition must be {\"uniform\": N} or a knot list");
    }

    for (const char* key : {"f", "b"}) {
        if (!j.at(key).is_string()) bad_config(std::string(key) + " must be an expression string");
    }
    c.f = j.at("f").get<std::string>();
    c.b = j.at("b").get<std::string>();
    c.alpha = detail::json_reals(j.at("alpha"), "alpha");
    return c;
}

inline nlohmann::json config_to_json(const SpecConfig& c)
{
    nlohmann::json j;
    j["interval"] = {c.x0, c.xn};
    if (const auto* u = std::get_if<UniformPartition>(&c.partition)) {
        j["partition"] = {{"uniform", u->intervals}};
    } else {
        j["partition"] = std::get<std::vector<double>>(c.partition);
    }
    j["f"] = c.f;
    j["b"] = c.b;
    j["alpha"] = c.alpha;
    return j;
}

/// Expression fields rewritten in their canonical printed form.
inline SpecConfig canonicalize(SpecConfig c)
{
    c.f = parse_expr(c.f).str();
    c.b = parse_expr(c.b).str();
    return c;
}

inline SpecConfig read_config(std::istream& in)
{
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::invalid_config, std::string("malformed JSON: ") + e.what());
    }
    return config_from_json(j);
}

inline SpecConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw error(errc::invalid_config, "cannot open config '" + path + "'");
    return read_config(in);
}

inline void write_config(std::ostream& out, const SpecConfig& c)
{
    out << config_to_json(canonicalize(c)).dump(2) << '\n';
}

inline void save_config(const std::string& path, const SpecConfig& c)
{
    std::ofstream out(path);
    if (!out) throw error(errc::invalid_config, "cannot write config '" + path + "'");
    write_config(out, c);
}

inline SpecDraft to_draft(const SpecConfig& c)
{
    SpecDraft d;
    if (const auto* u = std::get_if<UniformPartition>(&c.partition)) {
        const auto p = Partition::uniform(c.x0, c.xn, u->intervals);
        d.knots.assign(p.knots().begin(), p.knots().end());
    } else {
        d.knots = std::get<std::vector<double>>(c.partition);
        if (d.knots.empty() || d.knots.front() != c.x0 || d.knots.back() != c.xn) {
            throw error(errc::invalid_config, "explicit knots must start at interval[0] and end at interval[1]");
        }
    }
    d.alphas = c.alpha;
    d.f = parse_expr(c.f);
    d.b = parse_expr(c.b);
    return d;
}

inline AlphaFractalSpec to_spec(const SpecConfig& c) { return validate(to_draft(c)); }

inline AlphaFractalSpec load_spec(const std::string& path) { return to_spec(load_config(path)); }

/// The config of the flipped instance on [-x_N, -x_0]. A uniform partition
/// stays uniform; explicit knots are negated and reversed.
inline SpecConfig flip_config(const SpecConfig& c)
{
    SpecConfig out;
    out.x0 = -c.xn + 0.0;
    out.xn = -c.x0 + 0.0;
    if (const auto* u = std::get_if<UniformPartition>(&c.partition)) {
        out.partition = *u;
    } else {
        out.partition = flipped_knots(std::get<std::vector<double>>(c.partition));
    }
    out.f = parse_expr(c.f).negate_argument().str();
    out.b = parse_expr(c.b).negate_argument().str();
    out.alpha.assign(c.alpha.rbegin(), c.alpha.rend());
    return out;
}

} // namespace fracint
