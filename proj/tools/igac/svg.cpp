#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "support.hpp"

namespace cli {
namespace {

constexpr double kWidth = 720, kHeight = 450;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void settle() {
        if (!std::isfinite(lo)) lo = 0, hi = 1;
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

std::vector<double> ticks(const Range& r) {
    const double raw = (r.hi - r.lo) / 5;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    std::vector<double> out;
    for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-9 * step; t += step) out.push_back(t);
    return out;
}

}  // namespace

void write_svg(const std::filesystem::path& path, const Plot& plot) {
    Range xr, yr;
    for (const auto& c : plot.curves) {
        for (std::size_t i = 0; i < c.x.size() && i < c.y.size(); ++i) {
            if (std::isfinite(c.x[i]) && std::isfinite(c.y[i])) {
                xr.add(c.x[i]);
                yr.add(c.y[i]);
            }
        }
    }
    if (plot.bars) {
        for (double e : plot.bars->edges) xr.add(e);
        yr.add(0.0);
        for (double h : plot.bars->heights) yr.add(h);
    }
    xr.settle();
    yr.settle();

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" style=\"font-family:sans-serif;font-size:12px\">\n";
    s << "<rect width=\"100%\" height=\"100%\" style=\"fill:#ffffff\"/>\n";
    s << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" style=\"text-anchor:middle;font-size:15px\">"
      << escape(plot.title) << "</text>\n";

    for (double t : ticks(xr)) {
        s << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(px(t)) << "\" y2=\""
          << num(kTop + ph) << "\" style=\"stroke:#e5e5e5\"/>\n";
        s << "<text x=\"" << num(px(t)) << "\" y=\"" << num(kTop + ph + 18) << "\" style=\"text-anchor:middle\">"
          << tick_label(t) << "</text>\n";
    }
    for (double t : ticks(yr)) {
        s << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft + pw) << "\" y2=\""
          << num(py(t)) << "\" style=\"stroke:#e5e5e5\"/>\n";
        s << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(t) + 4) << "\" style=\"text-anchor:end\">"
          << tick_label(t) << "</text>\n";
    }
    s << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" style=\"fill:none;stroke:#333333\"/>\n";
    s << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 18) << "\" style=\"text-anchor:middle\">"
      << escape(plot.xlabel) << "</text>\n";
    s << "<text transform=\"translate(20," << num(kTop + ph / 2) << ") rotate(-90)\" style=\"text-anchor:middle\">"
      << escape(plot.ylabel) << "</text>\n";

    int legend = 0;
    auto legend_entry = [&](const std::string& label, const std::string& style) {
        const double y = kTop + 14 + 18 * legend++;
        s << "<line x1=\"" << num(kLeft + pw + 12) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft + pw + 36)
          << "\" y2=\"" << num(y) << "\" style=\"" << style << "\"/>\n";
        s << "<text x=\"" << num(kLeft + pw + 42) << "\" y=\"" << num(y + 4) << "\">" << escape(label) << "</text>\n";
    };

    if (plot.bars) {
        const auto& b = *plot.bars;
        for (std::size_t i = 0; i < b.heights.size() && i + 1 < b.edges.size(); ++i) {
            const double x0 = px(b.edges[i]), x1 = px(b.edges[i + 1]);
            const double y0 = py(std::max(b.heights[i], yr.lo)), base = py(std::max(0.0, yr.lo));
            s << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0) << "\" height=\""
              << num(base - y0) << "\" style=\"fill:#c7d7ea;stroke:#6f8fb5\"/>\n";
        }
        legend_entry(b.label, "stroke:#c7d7ea;stroke-width:8");
    }
    for (const auto& c : plot.curves) {
        std::string style = "fill:none;stroke:" + c.color + ";stroke-width:1.6";
        if (c.dashed) style += ";stroke-dasharray:6 4";
        std::ostringstream pts;
        for (std::size_t i = 0; i < c.x.size() && i < c.y.size(); ++i)
            if (std::isfinite(c.x[i]) && std::isfinite(c.y[i])) pts << num(px(c.x[i])) << ',' << num(py(c.y[i])) << ' ';
        if (c.markers) {
            for (std::size_t i = 0; i < c.x.size() && i < c.y.size(); ++i)
                if (std::isfinite(c.x[i]) && std::isfinite(c.y[i]))
                    s << "<circle cx=\"" << num(px(c.x[i])) << "\" cy=\"" << num(py(c.y[i]))
                      << "\" r=\"2.5\" style=\"fill:" << c.color << "\"/>\n";
        } else {
            s << "<polyline points=\"" << pts.str() << "\" style=\"" << style << "\"/>\n";
        }
        legend_entry(c.label, c.markers ? "stroke:" + c.color + ";stroke-width:5" : style);
    }
    s << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError(kResource, "resource", "cannot write " + path.string(), "out");
    out << s.str();
}

}  // namespace cli
