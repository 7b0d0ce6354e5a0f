#include "depthdegen/architecture.hpp"

#include <charconv>
#include <numeric>
#include <string_view>

#include "depthdegen/errors.hpp"

namespace depthdegen {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

long long parse_positive(std::string_view token, std::string_view whole) {
    long long value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end || token.empty()) {
        throw ValidationError("malformed width list '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Architecture::Architecture(std::string label, int input_dim, std::vector<int> hidden_widths)
    : label_(std::move(label)), input_dim_(input_dim), widths_(std::move(hidden_widths)) {
    if (input_dim_ < 1) {
        throw ValidationError("input dimension must be positive, got " +
                              std::to_string(input_dim_));
    }
    if (widths_.empty()) {
        throw ValidationError("architecture '" + label_ + "' has no hidden layers");
    }
    for (std::size_t i = 0; i < widths_.size(); ++i) {
        try {
            static_cast<void>(Width{widths_[i]});
        } catch (const ValidationError& e) {
            throw ValidationError("architecture '" + label_ + "', hidden layer " +
                                  std::to_string(i + 1) + ": " + e.what());
        }
    }
}

Width Architecture::width(std::size_t layer) const {
    if (layer == 0 || layer > widths_.size()) {
        throw ValidationError("hidden layer index " + std::to_string(layer) +
                              " outside 1.." + std::to_string(widths_.size()));
    }
    return Width{widths_[layer - 1]};
}

double Architecture::average_width() const {
    const double total = std::accumulate(widths_.begin(), widths_.end(), 0.0);
    return total / static_cast<double>(widths_.size());
}

Architecture Architecture::truncated(std::size_t depth) const {
    if (depth == 0 || depth > widths_.size()) {
        throw ValidationError("cannot truncate to depth " + std::to_string(depth));
    }
    return Architecture(label_, input_dim_,
                        std::vector<int>(widths_.begin(), widths_.begin() + depth));
}

std::vector<int> parse_width_list(const std::string& text) {
    std::vector<int> widths;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        if (item.empty()) {
            throw ValidationError("malformed width list '" + text + "'");
        }
        const auto x = item.find_first_of("xX");
        long long width = 0;
        long long repeat = 1;
        if (x == std::string_view::npos) {
            width = parse_positive(item, text);
        } else {
            width = parse_positive(trim(item.substr(0, x)), text);
            repeat = parse_positive(trim(item.substr(x + 1)), text);
            if (repeat < 1 || repeat > 100000) {
                throw ValidationError("bad repeat count in width list '" + text + "'");
            }
        }
        const Width checked{width};
        widths.insert(widths.end(), static_cast<std::size_t>(repeat), checked.value());
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
    }
    return widths;
}

std::string format_width_list(std::span<const int> widths) {
    std::string out;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(widths[i]);
    }
    return out;
}

}  // namespace depthdegen
