// svg.hpp - self-contained SVG line plot of sweep records (gamma vs g)

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rabibp/error.hpp"
#include "rabibp/sweep.hpp"

namespace rabibp {

struct PlotStyle {
    std::string title{"Ground-state Berry phase"};
    std::string x_label{"g"};
    std::string y_label{"gamma (rad)"};
    int width{640};
    int height{420};
};

namespace detail {

inline std::string fixed(double v, int decimals = 2) {
    if (v == 0.0) v = 0.0;  // no "-0.00"
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
    std::string s(buf, res.ptr);
    if (s.find_first_not_of("-0.") == std::string::npos)
        s = decimals > 0 ? "0." + std::string(static_cast<std::size_t>(decimals), '0') : "0";
    return s;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Roughly five ticks at 1, 2 or 5 times a power of ten.
inline double tick_step(double range) {
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

} // namespace detail

inline std::string emit_plot(const std::vector<SweepRecord>& records, const PlotStyle& style = {}) {
    if (records.empty())
        throw InputError("emit_plot: no records");

    struct Series {
        const char* name;
        const char* colour;
        double SweepRecord::*field;
    };
    const Series all[] = {{"numeric", "#1f77b4", &SweepRecord::gamma_numeric},
                          {"variational", "#d62728", &SweepRecord::gamma_variational}};
    std::vector<Series> series;
    for (const auto& s : all)
        if (std::any_of(records.begin(), records.end(), [&](const SweepRecord& r) { return std::isfinite(r.*s.field); }))
            series.push_back(s);

    double x_lo = records.front().g, x_hi = records.front().g;
    double y_lo = 0.0, y_hi = 0.0;
    for (const auto& r : records) {
        x_lo = std::min(x_lo, r.g);
        x_hi = std::max(x_hi, r.g);
        for (const auto& s : series) {
            const double y = r.*s.field;
            if (std::isfinite(y)) {
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
    }
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;
    const double y_step = detail::tick_step(y_hi - y_lo);
    y_hi = std::ceil(y_hi / y_step) * y_step;
    const double x_step = detail::tick_step(x_hi - x_lo);

    const double left = 70, right = 150, top = 40, bottom = 55;
    const double pw = style.width - left - right;
    const double ph = style.height - top - bottom;
    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto py = [&](double y) { return top + ph - (y - y_lo) / (y_hi - y_lo) * ph; };
    using detail::fixed;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(style.width) +
           "\" height=\"" + std::to_string(style.height) + "\" viewBox=\"0 0 " + std::to_string(style.width) + " " +
           std::to_string(style.height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(style.width) + "\" height=\"" +
           std::to_string(style.height) + "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\" "
           "text-anchor=\"middle\">" + detail::xml_escape(style.title) + "</text>\n";

    // axes and ticks
    svg += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    svg += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(pw) + "\" height=\"" +
           fixed(ph) + "\"/>\n";
    svg += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0;; ++i) {
        const double x = x_lo + x_step * i;
        if (x > x_hi + 1e-9 * x_step) break;
        svg += "<line x1=\"" + fixed(px(x)) + "\" y1=\"" + fixed(top + ph) + "\" x2=\"" + fixed(px(x)) + "\" y2=\"" +
               fixed(top + ph + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed(px(x)) + "\" y=\"" + fixed(top + ph + 18) + "\" text-anchor=\"middle\">" +
               fixed(x) + "</text>\n";
    }
    for (int i = 0;; ++i) {
        const double y = y_lo + y_step * i;
        if (y > y_hi + 1e-9 * y_step) break;
        svg += "<line x1=\"" + fixed(left - 5) + "\" y1=\"" + fixed(py(y)) + "\" x2=\"" + fixed(left) + "\" y2=\"" +
               fixed(py(y)) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed(left - 8) + "\" y=\"" + fixed(py(y) + 4) + "\" text-anchor=\"end\">" + fixed(y) +
               "</text>\n";
    }
    svg += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"" + fixed(style.height - 12.0) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + detail::xml_escape(style.x_label) + "</text>\n";
    svg += "<text x=\"18\" y=\"" + fixed(top + ph / 2) + "\" text-anchor=\"middle\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " + fixed(top + ph / 2) + ")\">" + detail::xml_escape(style.y_label) +
           "</text>\n</g>\n";

    // one polyline per method; unconverged points get a cross instead of a dot
    for (const auto& s : series) {
        std::string points;
        for (const auto& r : records) {
            const double y = r.*s.field;
            if (!std::isfinite(y)) continue;
            if (!points.empty()) points += ' ';
            points += fixed(px(r.g)) + "," + fixed(py(y));
        }
        svg += "<polyline class=\"series-" + std::string(s.name) + "\" fill=\"none\" stroke=\"" + s.colour +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        svg += "<g class=\"markers-" + std::string(s.name) + "\" stroke=\"" + s.colour + "\" fill=\"" + s.colour +
               "\">\n";
        for (const auto& r : records) {
            const double y = r.*s.field;
            if (!std::isfinite(y)) continue;
            const double cx = px(r.g), cy = py(y);
            if (r.converged || s.field != &SweepRecord::gamma_numeric) {
                svg += "<circle cx=\"" + fixed(cx) + "\" cy=\"" + fixed(cy) + "\" r=\"2\"/>\n";
            } else {
                svg += "<path class=\"unconverged\" fill=\"none\" stroke-width=\"1.5\" d=\"M" + fixed(cx - 4) + " " +
                       fixed(cy - 4) + " L" + fixed(cx + 4) + " " + fixed(cy + 4) + " M" + fixed(cx - 4) + " " +
                       fixed(cy + 4) + " L" + fixed(cx + 4) + " " + fixed(cy - 4) + "\"/>\n";
            }
        }
        svg += "</g>\n";
    }

    // legend
    svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    double ly = top + 10;
    for (const auto& s : series) {
        const double lx = left + pw + 15;
        svg += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(lx + 25) + "\" y2=\"" +
               fixed(ly) + "\" stroke=\"" + s.colour + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fixed(lx + 32) + "\" y=\"" + fixed(ly + 4) + "\">" + s.name + "</text>\n";
        ly += 20;
    }
    if (std::any_of(records.begin(), records.end(), [](const SweepRecord& r) { return !r.converged; })) {
        const double lx = left + pw + 15;
        svg += "<path fill=\"none\" stroke=\"black\" d=\"M" + fixed(lx + 8) + " " + fixed(ly - 4) + " L" +
               fixed(lx + 16) + " " + fixed(ly + 4) + " M" + fixed(lx + 8) + " " + fixed(ly + 4) + " L" +
               fixed(lx + 16) + " " + fixed(ly - 4) + "\"/>\n";
        svg += "<text x=\"" + fixed(lx + 32) + "\" y=\"" + fixed(ly + 4) + "\">unconverged</text>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

} // namespace rabibp
