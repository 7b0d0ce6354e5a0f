#include "depthdegen/csv.hpp"

#include <cmath>
#include <cstdio>

namespace depthdegen::cli {

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value < 0 ? "-inf" : "inf";
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void CsvWriter::field(std::string_view text, bool first) {
    if (!first) {
        out_ << ',';
    }
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
        out_ << text;
        return;
    }
    out_ << '"';
    for (const char c : text) {
        if (c == '"') {
            out_ << '"';
        }
        out_ << c;
    }
    out_ << '"';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    bool first = true;
    for (const auto& f : fields) {
        field(f, first);
        first = false;
    }
    out_ << "\r\n";
}

void CsvWriter::row(std::initializer_list<std::string_view> fields) {
    bool first = true;
    for (const auto f : fields) {
        field(f, first);
        first = false;
    }
    out_ << "\r\n";
}

}  // namespace depthdegen::cli
