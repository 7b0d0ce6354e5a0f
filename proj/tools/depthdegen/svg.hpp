#pragma once

// Minimal static SVG charts. Output is a pure function of the data: no
// timestamps, ids or randomness.

#include <string>
#include <vector>

namespace depthdegen::cli {

class Chart {
public:
    Chart(std::string title, std::string x_label, std::string y_label);

    /// Polyline; non-finite points break the line.
    void add_line(std::string label, std::vector<double> x, std::vector<double> y,
                  bool dashed = false);
    /// Shaded region between lo and hi.
    void add_band(std::string label, std::vector<double> x, std::vector<double> lo,
                  std::vector<double> hi);
    /// Markers with optional vertical error bars (empty y_err for none).
    void add_points(std::string label, std::vector<double> x, std::vector<double> y,
                    std::vector<double> y_err = {});
    /// Histogram bars; edges.size() == heights.size() + 1.
    void add_histogram(std::string label, std::vector<double> edges, std::vector<double> heights);
    /// Dotted y = x reference across the plotted range.
    void add_diagonal(std::string label);

    std::string render(int width = 760, int height = 480) const;

private:
    enum class Kind { line, dashed_line, band, points, histogram, diagonal };

    struct Layer {
        Kind kind;
        std::string label;
        std::vector<double> x;
        std::vector<double> y;
        std::vector<double> extra;  // band upper edge or error half-widths
    };

    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<Layer> layers_;
};

}  // namespace depthdegen::cli
