#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace depthdegen::cli {

/// 17 significant digits; infinities as "-inf"/"inf", NaN as "nan".
std::string format_double(double value);

/// RFC-4180 writer: CRLF record separator, fields quoted only when they
/// contain a comma, quote, CR or LF.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);
    void row(std::initializer_list<std::string_view> fields);

private:
    void field(std::string_view text, bool first);

    std::ostream& out_;
};

}  // namespace depthdegen::cli
