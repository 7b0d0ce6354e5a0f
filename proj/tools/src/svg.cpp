#include "depthdegen/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace depthdegen::cli {
namespace {

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c",
                                              "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2f", v);
    return buffer;
}

std::string tick_label(double v) {
    if (std::abs(v) < 1e-12) {
        v = 0.0;
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%g", v);
    return buffer;
}

std::string escape(const std::string& text) {
    std::string out;
    for (const char c : text) {
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

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    bool empty() const { return !(hi >= lo); }
};

double nice_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

// Pads a data range and snaps it outward to tick multiples.
void finish(Range& r) {
    if (r.empty()) {
        r.lo = 0.0;
        r.hi = 1.0;
    }
    if (r.hi - r.lo < 1e-12) {
        const double pad = std::max(std::abs(r.lo) * 0.05, 0.5);
        r.lo -= pad;
        r.hi += pad;
    }
    const double step = nice_step(r.hi - r.lo);
    r.lo = std::floor(r.lo / step) * step;
    r.hi = std::ceil(r.hi / step) * step;
}

}  // namespace

Chart::Chart(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void Chart::add_line(std::string label, std::vector<double> x, std::vector<double> y,
                     bool dashed) {
    layers_.push_back({dashed ? Kind::dashed_line : Kind::line, std::move(label), std::move(x),
                       std::move(y), {}});
}

void Chart::add_band(std::string label, std::vector<double> x, std::vector<double> lo,
                     std::vector<double> hi) {
    layers_.push_back({Kind::band, std::move(label), std::move(x), std::move(lo), std::move(hi)});
}

void Chart::add_points(std::string label, std::vector<double> x, std::vector<double> y,
                       std::vector<double> y_err) {
    layers_.push_back(
        {Kind::points, std::move(label), std::move(x), std::move(y), std::move(y_err)});
}

void Chart::add_histogram(std::string label, std::vector<double> edges,
                          std::vector<double> heights) {
    layers_.push_back({Kind::histogram, std::move(label), std::move(edges), std::move(heights), {}});
}

void Chart::add_diagonal(std::string label) {
    layers_.push_back({Kind::diagonal, std::move(label), {}, {}, {}});
}

std::string Chart::render(int width, int height) const {
    const double left = 70.0;
    const double right = 180.0;
    const double top = 40.0;
    const double bottom = 55.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    Range xr;
    Range yr;
    for (const auto& layer : layers_) {
        for (std::size_t i = 0; i < layer.x.size(); ++i) {
            xr.include(layer.x[i]);
        }
        for (std::size_t i = 0; i < layer.y.size(); ++i) {
            const double err = layer.kind == Kind::points && i < layer.extra.size() ? layer.extra[i] : 0.0;
            yr.include(layer.y[i] - err);
            yr.include(layer.y[i] + err);
        }
        if (layer.kind == Kind::band) {
            for (const double v : layer.extra) {
                yr.include(v);
            }
        }
        if (layer.kind == Kind::histogram) {
            yr.include(0.0);
        }
    }
    const bool has_diagonal = std::any_of(layers_.begin(), layers_.end(),
                                          [](const Layer& l) { return l.kind == Kind::diagonal; });
    if (has_diagonal && !xr.empty() && !yr.empty()) {
        xr.include(yr.lo);
        xr.include(yr.hi);
        yr.include(xr.lo);
        yr.include(xr.hi);
    }
    finish(xr);
    finish(yr);

    const auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    const auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title_) << "</text>\n";

    // Axes and ticks.
    svg << "<g stroke=\"#999\" stroke-width=\"0.5\">\n";
    const double xs = nice_step(xr.hi - xr.lo);
    for (double t = xr.lo; t <= xr.hi + xs * 1e-9; t += xs) {
        svg << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(px(t))
            << "\" y2=\"" << num(top + plot_h) << "\" stroke-dasharray=\"2,3\"/>\n";
    }
    const double ys = nice_step(yr.hi - yr.lo);
    for (double t = yr.lo; t <= yr.hi + ys * 1e-9; t += ys) {
        svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(py(t)) << "\" x2=\""
            << num(left + plot_w) << "\" y2=\"" << num(py(t)) << "\" stroke-dasharray=\"2,3\"/>\n";
    }
    svg << "</g>\n";
    svg << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(plot_w)
        << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t = xr.lo; t <= xr.hi + xs * 1e-9; t += xs) {
        svg << "<text x=\"" << num(px(t)) << "\" y=\"" << num(top + plot_h + 16)
            << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    for (double t = yr.lo; t <= yr.hi + ys * 1e-9; t += ys) {
        svg << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(t) + 4)
            << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }
    svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 12.0)
        << "\" text-anchor=\"middle\">" << escape(x_label_) << "</text>\n";
    svg << "<text transform=\"translate(16," << num(top + plot_h / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label_) << "</text>\n";

    svg << "<g clip-path=\"url(#plot)\">\n";
    svg << "<clipPath id=\"plot\"><rect x=\"" << num(left) << "\" y=\"" << num(top)
        << "\" width=\"" << num(plot_w) << "\" height=\"" << num(plot_h) << "\"/></clipPath>\n";
    std::size_t color_index = 0;
    std::vector<std::pair<std::string, std::string>> legend;
    for (const auto& layer : layers_) {
        const std::string color = kPalette[color_index++ % kPalette.size()];
        legend.emplace_back(layer.label, color);
        switch (layer.kind) {
            case Kind::line:
            case Kind::dashed_line: {
                std::string points;
                const auto flush = [&] {
                    if (!points.empty()) {
                        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\""
                            << (layer.kind == Kind::dashed_line ? " stroke-dasharray=\"6,4\"" : "")
                            << " points=\"" << points << "\"/>\n";
                        points.clear();
                    }
                };
                for (std::size_t i = 0; i < layer.x.size(); ++i) {
                    if (!std::isfinite(layer.x[i]) || !std::isfinite(layer.y[i])) {
                        flush();
                        continue;
                    }
                    points += (points.empty() ? "" : " ") + num(px(layer.x[i])) + "," + num(py(layer.y[i]));
                }
                flush();
                break;
            }
            case Kind::band: {
                std::string upper;
                std::string lower;
                for (std::size_t i = 0; i < layer.x.size(); ++i) {
                    if (std::isfinite(layer.y[i]) && std::isfinite(layer.extra[i])) {
                        upper += num(px(layer.x[i])) + "," + num(py(layer.extra[i])) + " ";
                    }
                }
                for (std::size_t i = layer.x.size(); i-- > 0;) {
                    if (std::isfinite(layer.y[i]) && std::isfinite(layer.extra[i])) {
                        lower += num(px(layer.x[i])) + "," + num(py(layer.y[i])) + " ";
                    }
                }
                if (!upper.empty()) {
                    lower.pop_back();
                    svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\""
                        << upper << lower << "\"/>\n";
                }
                break;
            }
            case Kind::points:
                for (std::size_t i = 0; i < layer.x.size(); ++i) {
                    if (!std::isfinite(layer.x[i]) || !std::isfinite(layer.y[i])) {
                        continue;
                    }
                    if (i < layer.extra.size() && layer.extra[i] > 0.0) {
                        svg << "<line x1=\"" << num(px(layer.x[i])) << "\" y1=\""
                            << num(py(layer.y[i] - layer.extra[i])) << "\" x2=\"" << num(px(layer.x[i]))
                            << "\" y2=\"" << num(py(layer.y[i] + layer.extra[i])) << "\" stroke=\""
                            << color << "\"/>\n";
                    }
                    svg << "<circle cx=\"" << num(px(layer.x[i])) << "\" cy=\"" << num(py(layer.y[i]))
                        << "\" r=\"3\" fill=\"" << color << "\"/>\n";
                }
                break;
            case Kind::histogram:
                for (std::size_t i = 0; i < layer.y.size(); ++i) {
                    if (!std::isfinite(layer.y[i])) {
                        continue;
                    }
                    svg << "<rect x=\"" << num(px(layer.x[i])) << "\" y=\"" << num(py(layer.y[i]))
                        << "\" width=\"" << num(px(layer.x[i + 1]) - px(layer.x[i])) << "\" height=\""
                        << num(py(0.0) - py(layer.y[i])) << "\" fill=\"" << color
                        << "\" fill-opacity=\"0.35\" stroke=\"" << color << "\" stroke-width=\"0.5\"/>\n";
                }
                break;
            case Kind::diagonal: {
                const double lo = std::max(xr.lo, yr.lo);
                const double hi = std::min(xr.hi, yr.hi);
                svg << "<line x1=\"" << num(px(lo)) << "\" y1=\"" << num(py(lo)) << "\" x2=\""
                    << num(px(hi)) << "\" y2=\"" << num(py(hi)) << "\" stroke=\"" << color
                    << "\" stroke-dasharray=\"1,3\"/>\n";
                break;
            }
        }
    }
    svg << "</g>\n";

    double ly = top + 10.0;
    for (const auto& [label, color] : legend) {
        if (label.empty()) {
            continue;
        }
        svg << "<rect x=\"" << num(left + plot_w + 12) << "\" y=\"" << num(ly - 8)
            << "\" width=\"14\" height=\"10\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << num(left + plot_w + 32) << "\" y=\"" << num(ly) << "\">"
            << escape(label) << "</text>\n";
        ly += 18.0;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace depthdegen::cli
