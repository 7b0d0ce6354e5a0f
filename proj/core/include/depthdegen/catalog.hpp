#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depthdegen/architecture.hpp"

namespace depthdegen {

struct RecordedAccuracy {
    double mean = 0.0;
    double std = 0.0;
};

struct DatasetAccuracies {
    RecordedAccuracy mnist;
    RecordedAccuracy fmnist;
    RecordedAccuracy cifar10;
};

/// One of the 45 benchmark architectures with its recorded (never
/// recomputed) test accuracies after one epoch of training.
struct CatalogEntry {
    int id = 0;
    Architecture arch;
    int depth = 0;
    double declared_average_width = 0.0;  // as printed, 2 decimals
    std::int64_t params_mnist = 0;  // printed counts, (F)MNIST family
    std::int64_t params_cifar = 0;
    DatasetAccuracies accuracy;
};

/// The 45 entries in id order. Architectures use input_dim 784.
const std::vector<CatalogEntry>& builtin_catalog();

/// Entry by 1-based id.
const CatalogEntry& catalog_entry(int id);

/// Parse architecture spec text: one `label; input_dim; widths` record per
/// line, `#` starts a comment, blank lines ignored, LF or CRLF. Widths use
/// the same syntax as parse_width_list. Duplicate labels are rejected.
std::vector<Architecture> parse_spec_text(std::string_view text,
                                          const std::string& source = "<spec>");

std::vector<Architecture> parse_spec(const std::filesystem::path& path);

struct ReportRow {
    std::optional<int> id;
    std::string label;
    int depth = 0;
    double average_width = 0.0;
    std::vector<int> widths;
    double x_final_finite = 0.0;
    double x_final_infinite = 0.0;
    std::optional<DatasetAccuracies> accuracy;
};

/// Final-layer predictions (ln sin^2 theta^L) of both the finite-width and
/// the infinite-width chains. theta0 in (0, pi/2].
std::vector<ReportRow> degeneracy_report(std::span<const CatalogEntry> entries,
                                         double theta0 = kHalfPi);
std::vector<ReportRow> degeneracy_report(std::span<const Architecture> archs,
                                         double theta0 = kHalfPi);

/// Weights plus biases of a dense classifier with these hidden layers and
/// `outputs` classes. Informational; the printed counts often disagree.
std::int64_t dense_parameter_count(const Architecture& arch, int input_dim, int outputs = 10);

}  // namespace depthdegen
