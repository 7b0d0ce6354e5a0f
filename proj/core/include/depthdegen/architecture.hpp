#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "depthdegen/angle_math.hpp"

namespace depthdegen {

/// Fully connected ReLU network shape: input dimension plus the ordered
/// hidden layer widths n_1 ... n_L. Only the hidden widths enter the angle
/// predictions; input_dim matters for the Monte Carlo simulator.
class Architecture {
public:
    /// Validates input_dim >= 1, L >= 1 and every width >= 2.
    Architecture(std::string label, int input_dim, std::vector<int> hidden_widths);

    const std::string& label() const noexcept { return label_; }
    int input_dim() const noexcept { return input_dim_; }
    std::span<const int> hidden_widths() const noexcept { return widths_; }
    std::size_t depth() const noexcept { return widths_.size(); }

    /// Width of hidden layer `layer`, 1-based.
    Width width(std::size_t layer) const;

    double average_width() const;

    /// First `depth` hidden layers of this architecture.
    Architecture truncated(std::size_t depth) const;

    friend bool operator==(const Architecture&, const Architecture&) = default;

private:
    std::string label_;
    int input_dim_;
    std::vector<int> widths_;
};

/// Expands "256x30" and "50,50,20" style lists (mixable: "40x5,20x3").
std::vector<int> parse_width_list(const std::string& text);

/// Comma-joined width list, e.g. "50,50".
std::string format_width_list(std::span<const int> widths);

}  // namespace depthdegen
