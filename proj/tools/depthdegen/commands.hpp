#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "depthdegen/angle_math.hpp"

namespace depthdegen::cli {

/// Where the architectures come from. Exactly one of widths, catalog or
/// spec_path / spec_text is set.
struct ArchSource {
    std::string widths;       // "256x30", "40x5,20x3"
    int input_dim = 0;        // with widths; 0 means the first hidden width
    std::string catalog;      // "17" or "all"
    std::string spec_path;
    std::string spec_text;    // filled from spec_path on first use, kept for replay
};

struct PredictOptions {
    ArchSource arch;
    double theta0 = kHalfPi;
    std::string method = "all";  // finite-full, finite-simple, infinite, all
};

struct SimulateOptions {
    ArchSource arch;
    double theta0 = 0.1;
    std::size_t replicas = 5000;
    std::size_t samples = 0;  // Gaussian-chain samples; 0 means replicas
    std::uint64_t seed = 0;
    std::string sampler = "dense";
};

struct CompareOptions {
    ArchSource arch;
    double theta0 = kHalfPi;
};

struct DensityOptions {
    ArchSource arch;
    double theta0 = 0.1;
    std::vector<std::size_t> layers;
    std::size_t replicas = 5000;
    std::size_t samples = 0;  // 0 means replicas
    std::uint64_t seed = 0;
    std::string sampler = "dense";
    int bins = 60;
};

struct RunContext {
    std::ostream& out;
    std::ostream& err;
    std::string out_dir;  // empty: CSV to `out`, no SVG
    bool svg = true;
    unsigned threads = 1;
};

/// Each command returns the file names it wrote into ctx.out_dir.
std::vector<std::string> run_predict(PredictOptions& opts, RunContext& ctx);
std::vector<std::string> run_simulate(SimulateOptions& opts, RunContext& ctx);
std::vector<std::string> run_compare(CompareOptions& opts, RunContext& ctx);
std::vector<std::string> run_density(DensityOptions& opts, RunContext& ctx);

/// "0.1", "pi", "pi/2", "3pi/4", "3*pi/4".
double parse_angle(const std::string& text);

/// "5,15,30" -> {5, 15, 30}.
std::vector<std::size_t> parse_layer_list(const std::string& text);

void to_json(nlohmann::json& j, const ArchSource& a);
void from_json(const nlohmann::json& j, ArchSource& a);
void to_json(nlohmann::json& j, const PredictOptions& o);
void from_json(const nlohmann::json& j, PredictOptions& o);
void to_json(nlohmann::json& j, const SimulateOptions& o);
void from_json(const nlohmann::json& j, SimulateOptions& o);
void to_json(nlohmann::json& j, const CompareOptions& o);
void from_json(const nlohmann::json& j, CompareOptions& o);
void to_json(nlohmann::json& j, const DensityOptions& o);
void from_json(const nlohmann::json& j, DensityOptions& o);

}  // namespace depthdegen::cli
