#pragma once

/**
 * @file plot.hpp
 * @brief CSV and self-contained SVG output of sampled fractal functions.
 */

#include <fracint/core.hpp>
#include <fracint/eval.hpp>
#include <fracint/grid.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace fracint {

struct PlotSeries {
    std::vector<double> x;
    std::vector<double> f;
    std::vector<double> f_alpha;
    std::size_t depth = 0;
    double error_bound = 0.0;
};

/// `samples` equally spaced points of I with f and f^alpha at the certified
/// depth for `tol`.
inline PlotSeries sample_plot(const AlphaFractalSpec& spec, std::size_t samples, double tol)
{
    PlotSeries s;
    s.depth = depth_for_tolerance(spec, tol);
    s.error_bound = truncation_bound(spec, s.depth);
    s.x = linspace(spec.partition().front(), spec.partition().back(), samples);
    s.f.reserve(samples);
    s.f_alpha.reserve(samples);
    for (double x : s.x) {
        s.f.push_back(spec.f()(x));
        s.f_alpha.push_back(eval_point(spec, x, s.depth).value);
    }
    return s;
}

namespace detail {

inline std::string fmt(const char* pattern, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

inline std::string xml_escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace detail

/// Header `x,f,f_alpha`, then one row per sample at 17 significant digits.
inline void write_csv(std::ostream& out, const PlotSeries& s)
{
    out << "x,f,f_alpha\n";
    for (std::size_t k = 0; k < s.x.size(); ++k) {
        out << detail::fmt("%.17g", s.x[k]) << ',' << detail::fmt("%.17g", s.f[k]) << ','
            << detail::fmt("%.17g", s.f_alpha[k]) << '\n';
    }
}

struct SvgOptions {
    bool overlay_germ = false;
    std::string title;
    int width = 720;
    int height = 480;
};

inline void write_svg(std::ostream& out, const PlotSeries& s, const SvgOptions& opt = {})
{
    constexpr double left = 70.0;
    constexpr double right = 20.0;
    constexpr double top = 40.0;
    constexpr double bottom = 50.0;
    const double w = opt.width;
    const double h = opt.height;
    const double pw = w - left - right;
    const double ph = h - top - bottom;

    const double xlo = s.x.front();
    const double xhi = s.x.back();
    double ylo = *std::min_element(s.f_alpha.begin(), s.f_alpha.end());
    double yhi = *std::max_element(s.f_alpha.begin(), s.f_alpha.end());
    if (opt.overlay_germ) {
        ylo = std::min(ylo, *std::min_element(s.f.begin(), s.f.end()));
        yhi = std::max(yhi, *std::max_element(s.f.begin(), s.f.end()));
    }
    if (!(ylo < yhi)) {
        ylo -= 1.0;
        yhi += 1.0;
    }
    const double pad = 0.05 * (yhi - ylo);
    ylo -= pad;
    yhi += pad;

    auto px = [&](double x) { return left + (x - xlo) / (xhi - xlo) * pw; };
    auto py = [&](double y) { return top + (yhi - y) / (yhi - ylo) * ph; };
    auto polyline = [&](const std::vector<double>& ys, const char* colour, const char* extra) {
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\"" << extra
            << " points=\"";
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            out << detail::fmt("%.6g", px(s.x[k])) << ',' << detail::fmt("%.6g", py(ys[k])) << ' ';
        }
        out << "\"/>\n";
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
        << opt.height << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opt.title.empty()) {
        out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"15\">" << detail::xml_escape(opt.title) << "</text>\n";
    }
    out << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\""
        << top + ph << "\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
        << "\"/>\n</g>\n";

    constexpr int ticks = 5;
    out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int k = 0; k <= ticks; ++k) {
        const double xv = xlo + (xhi - xlo) * k / ticks;
        const double yv = ylo + (yhi - ylo) * k / ticks;
        out << "<line x1=\"" << px(xv) << "\" y1=\"" << top + ph << "\" x2=\"" << px(xv) << "\" y2=\""
            << top + ph + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px(xv) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
            << detail::fmt("%.3g", xv) << "</text>\n"
            << "<line x1=\"" << left - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << left << "\" y2=\""
            << py(yv) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << left - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
            << detail::fmt("%.3g", yv) << "</text>\n";
    }
    out << "</g>\n";

    if (opt.overlay_germ) polyline(s.f, "#888888", " stroke-dasharray=\"5,3\"");
    polyline(s.f_alpha, "#1f4e9c", "");

    const double lx = left + 12;
    const double ly = top + 14;
    out << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
        << "\" stroke=\"#1f4e9c\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">f_alpha</text>\n";
    if (opt.overlay_germ) {
        out << "<line x1=\"" << lx << "\" y1=\"" << ly + 18 << "\" x2=\"" << lx + 24 << "\" y2=\""
            << ly + 18 << "\" stroke=\"#888888\" stroke-width=\"2\" stroke-dasharray=\"5,3\"/>\n"
            << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 22 << "\">f</text>\n";
    }
    out << "</g>\n</svg>\n";
}

} // namespace fracint
