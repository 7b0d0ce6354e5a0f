#include "depthdegen/catalog.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "depthdegen/errors.hpp"
#include "depthdegen/propagation.hpp"

namespace depthdegen {
namespace {

constexpr int kMnistInputDim = 784;

struct RawEntry {
    int id;
    int depth;
    double avg_width;
    std::int64_t params_mnist;
    std::int64_t params_cifar;
    RecordedAccuracy mnist;
    RecordedAccuracy fmnist;
    RecordedAccuracy cifar10;
    const char* widths;
};

// Transcribed from the benchmark tables: depth, average width, parameter
// counts, accuracy mean +- std per dataset, hidden widths.
constexpr RawEntry kRawCatalog[] = {
    {1, 2, 50, 58880, 165790, {0.924, 0.007}, {0.79, 0.02}, {0.211, 0.029}, "50x2"},
    {2, 2, 85, 57350, 135510, {0.837, 0.051}, {0.709, 0.028}, {0.276, 0.011}, "85x2"},
    {3, 2, 200, 19930, 54250, {0.878, 0.009}, {0.721, 0.098}, {0.163, 0.048}, "200x2"},
    {4, 2, 25, 138300, 201600, {0.94, 0.004}, {0.812, 0.009}, {0.229, 0.025}, "20,30"},
    {5, 2, 125, 31725, 88925, {0.89, 0.005}, {0.768, 0.013}, {0.199, 0.027}, "100,150"},
    {6, 3, 25, 43990, 114550, {0.928, 0.008}, {0.812, 0.013}, {0.167, 0.022}, "25x3"},
    {7, 3, 50, 62830, 173280, {0.916, 0.002}, {0.79, 0.012}, {0.224, 0.019}, "50x3"},
    {8, 3, 100, 59700, 96756, {0.952, 0.004}, {0.839, 0.003}, {0.27, 0.016}, "100x3"},
    {9, 3, 67.67, 87200, 309900, {0.924, 0.006}, {0.799, 0.011}, {0.281, 0.011}, "64,75,64"},
    {10, 3, 50, 17310, 189100, {0.553, 0.181}, {0.599, 0.119}, {0.263, 0.022}, "75,50,25"},
    {11, 4, 30, 369400, 366150, {0.877, 0.052}, {0.757, 0.026}, {0.192, 0.029}, "40,40,20,20"},
    {12, 4, 75, 99400, 105060, {0.957, 0.003}, {0.842, 0.006}, {0.23, 0.025}, "50,100,100,50"},
    {13, 5, 21, 74700, 51630, {0.931, 0.005}, {0.811, 0.009}, {0.146, 0.029}, "15x3,30x2"},
    {14, 6, 55, 8840, 976400, {0.715, 0.088}, {0.569, 0.146}, {0.337, 0.008},
     "80,70,60,50,40,30"},
    {15, 6, 87.5, 169400, 398200, {0.949, 0.008}, {0.833, 0.007}, {0.332, 0.018},
     "25,50,75,100,125,150"},
    {16, 10, 10, 79020, 180010, {0.951, 0.003}, {0.832, 0.01}, {0.278, 0.018}, "10x10"},
    {17, 10, 100, 64850, 122050, {0.939, 0.004}, {0.824, 0.008}, {0.262, 0.059}, "100x10"},
    {18, 10, 200, 54170, 262060, {0.933, 0.005}, {0.81, 0.014}, {0.335, 0.016}, "200x10"},
    {19, 10, 17.5, 49920, 1002300, {0.794, 0.052}, {0.648, 0.106}, {0.184, 0.026}, "20x5,15x5"},
    {20, 11, 34.55, 518800, 31720, {0.955, 0.006}, {0.835, 0.011}, {0.14, 0.037}, "55,30x9,55"},
    {21, 11, 35, 21100, 269195, {0.93, 0.005}, {0.823, 0.007}, {0.363, 0.016},
     "40,39,38,37,36,35,34,33,32,31,30"},
    {22, 13, 42, 36420, 328200, {0.91, 0.008}, {0.789, 0.01}, {0.364, 0.016},
     "24,27,30,33,36,39,42,45,48,51,54,57,60"},
    {23, 15, 30, 41844, 174100, {0.92, 0.004}, {0.805, 0.011}, {0.349, 0.015}, "30x15"},
    {24, 15, 50, 13860, 235650, {0.909, 0.005}, {0.8, 0.012}, {0.328, 0.02}, "50x15"},
    {25, 15, 75, 16580, 206848, {0.927, 0.003}, {0.823, 0.007}, {0.359, 0.009}, "75x15"},
    {26, 16, 35, 42200, 159100, {0.943, 0.004}, {0.838, 0.004}, {0.343, 0.021},
     "50,48,46,44,42,40,38,36,34,32,30,28,26,24,22,20"},
    {27, 16, 22.5, 198800, 656400, {0.963, 0.003}, {0.845, 0.01}, {0.37, 0.016},
     "15,16,17,18,19,20,21,22,23,24,25,26,27,28,29,30"},
    {28, 20, 25, 94900, 323700, {0.955, 0.002}, {0.843, 0.006}, {0.367, 0.006}, "25x20"},
    {29, 20, 50, 60416, 62340, {0.951, 0.003}, {0.837, 0.005}, {0.163, 0.058}, "50x20"},
    {30, 20, 37.5, 44700, 156600, {0.948, 0.003}, {0.834, 0.008}, {0.346, 0.028},
     "45x5,40x5,35x5,30x5"},
    {31, 23, 31.30, 194550, 598200, {0.927, 0.005}, {0.788, 0.008}, {0.17, 0.004},
     "40x13,20x10"},
    {32, 25, 15, 64050, 48180, {0.951, 0.002}, {0.84, 0.004}, {0.186, 0.071}, "15x25"},
    {33, 25, 75, 55160, 125880, {0.899, 0.014}, {0.748, 0.033}, {0.274, 0.048}, "75x25"},
    {34, 25, 150, 53760, 64390, {0.782, 0.077}, {0.676, 0.064}, {0.206, 0.041}, "150x25"},
    {35, 28, 35.71, 74715, 78300, {0.953, 0.001}, {0.844, 0.001}, {0.244, 0.075},
     "25x4,50x4,25x4,50x4,25x4,50x4,25x4"},
    {36, 30, 15, 60860, 152380, {0.819, 0.08}, {0.719, 0.033}, {0.17, 0.02}, "15x30"},
    {37, 30, 30, 18630, 145280, {0.862, 0.08}, {0.772, 0.017}, {0.168, 0.02}, "30x30"},
    {38, 30, 100, 34360, 146680, {0.941, 0.003}, {0.826, 0.009}, {0.165, 0.022}, "100x30"},
    {39, 30, 26.67, 659100, 118560, {0.932, 0.014}, {0.785, 0.011}, {0.175, 0.007},
     "40x5,20x20,40x5"},
    {40, 30, 31.67, 18435, 52755, {0.313, 0.131}, {0.349, 0.109}, {0.158, 0.026}, "40x5,30x25"},
    {41, 35, 40, 86160, 276600, {0.753, 0.074}, {0.586, 0.11}, {0.148, 0.029}, "40x35"},
    {42, 35, 75, 250800, 450525, {0.725, 0.163}, {0.608, 0.077}, {0.165, 0.007}, "75x35"},
    {43, 40, 50, 137200, 251600, {0.522, 0.141}, {0.513, 0.089}, {0.167, 0.007}, "50x40"},
    {44, 40, 75, 278925, 422400, {0.467, 0.123}, {0.466, 0.09}, {0.161, 0.022}, "75x40"},
    {45, 50, 50, 162200, 177680, {0.242, 0.064}, {0.22, 0.042}, {0.161, 0.019}, "50x50"},
};

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> entries;
    entries.reserve(std::size(kRawCatalog));
    for (const RawEntry& raw : kRawCatalog) {
        Architecture arch("net" + std::to_string(raw.id), kMnistInputDim,
                          parse_width_list(raw.widths));
        entries.push_back(CatalogEntry{raw.id,
                                       std::move(arch),
                                       raw.depth,
                                       raw.avg_width,
                                       raw.params_mnist,
                                       raw.params_cifar,
                                       {raw.mnist, raw.fmnist, raw.cifar10}});
    }
    return entries;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

ReportRow report_row(const Architecture& arch, double theta0) {
    if (!(theta0 > 0.0 && theta0 <= kHalfPi)) {
        throw ValidationError("report theta0 must lie in (0, pi/2]");
    }
    ReportRow row;
    row.label = arch.label();
    row.depth = static_cast<int>(arch.depth());
    row.average_width = arch.average_width();
    row.widths.assign(arch.hidden_widths().begin(), arch.hidden_widths().end());
    row.x_final_finite = predict_finite(arch, theta0).final().x;
    row.x_final_infinite = predict_infinite(arch, theta0).final().x;
    return row;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> catalog = build_catalog();
    return catalog;
}

const CatalogEntry& catalog_entry(int id) {
    const auto& catalog = builtin_catalog();
    if (id < 1 || id > static_cast<int>(catalog.size())) {
        throw ValidationError("catalog id " + std::to_string(id) + " outside 1.." +
                              std::to_string(catalog.size()));
    }
    return catalog[static_cast<std::size_t>(id - 1)];
}

std::vector<Architecture> parse_spec_text(std::string_view text, const std::string& source) {
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }
    std::vector<Architecture> archs;
    std::set<std::string, std::less<>> labels;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto newline = text.find('\n');
        std::string_view line = text.substr(0, newline);
        text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto first = line.find(';');
        const auto second = first == std::string_view::npos ? first : line.find(';', first + 1);
        if (second == std::string_view::npos || line.find(';', second + 1) != std::string_view::npos) {
            throw ParseError(source, line_no, "expected 'label; input_dim; widths'");
        }
        const auto label = trim(line.substr(0, first));
        const auto dim_text = trim(line.substr(first + 1, second - first - 1));
        const auto widths_text = trim(line.substr(second + 1));
        if (label.empty()) {
            throw ParseError(source, line_no, "empty label");
        }
        int input_dim = 0;
        const auto [ptr, ec] =
            std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), input_dim);
        if (ec != std::errc() || ptr != dim_text.data() + dim_text.size() || dim_text.empty()) {
            throw ParseError(source, line_no, "input_dim '" + std::string(dim_text) +
                                                  "' is not an integer");
        }
        if (!labels.insert(std::string(label)).second) {
            throw ParseError(source, line_no, "duplicate label '" + std::string(label) + "'");
        }
        try {
            archs.emplace_back(std::string(label), input_dim,
                               parse_width_list(std::string(widths_text)));
        } catch (const ParseError&) {
            throw;
        } catch (const ValidationError& e) {
            throw ParseError(source, line_no, e.what());
        }
    }
    return archs;
}

std::vector<Architecture> parse_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open spec file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_spec_text(buffer.str(), path.string());
}

std::vector<ReportRow> degeneracy_report(std::span<const CatalogEntry> entries, double theta0) {
    std::vector<ReportRow> rows;
    rows.reserve(entries.size());
    for (const auto& entry : entries) {
        ReportRow row = report_row(entry.arch, theta0);
        row.id = entry.id;
        row.accuracy = entry.accuracy;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ReportRow> degeneracy_report(std::span<const Architecture> archs, double theta0) {
    std::vector<ReportRow> rows;
    rows.reserve(archs.size());
    for (const auto& arch : archs) {
        rows.push_back(report_row(arch, theta0));
    }
    return rows;
}

std::int64_t dense_parameter_count(const Architecture& arch, int input_dim, int outputs) {
    std::int64_t total = 0;
    std::int64_t fan_in = input_dim;
    for (const int w : arch.hidden_widths()) {
        total += (fan_in + 1) * w;
        fan_in = w;
    }
    total += (fan_in + 1) * outputs;
    return total;
}

}  // namespace depthdegen
