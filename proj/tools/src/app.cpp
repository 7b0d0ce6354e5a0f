#include "depthdegen/app.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "depthdegen/commands.hpp"
#include "depthdegen/errors.hpp"
#include "depthdegen/parallel.hpp"

#ifndef DEPTHDEGEN_VERSION
#define DEPTHDEGEN_VERSION "0.0.0"
#endif

namespace depthdegen::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kManifestName = "manifest.json";

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

unsigned env_threads() {
    if (const char* env = std::getenv("DEPTHDEGEN_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return default_thread_count();
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_manifest(const RunContext& ctx, const std::string& command, const json& parameters,
                    const json& seed, const std::vector<std::string>& outputs) {
    json m = {{"tool", "depthdegen"},
              {"version", DEPTHDEGEN_VERSION},
              {"command", command},
              {"parameters", parameters},
              {"seed", seed},
              {"svg", ctx.svg},
              {"threads", ctx.threads},
              {"timestamp", utc_timestamp()},
              {"outputs", outputs}};
    std::ofstream file(fs::path(ctx.out_dir) / kManifestName, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot write manifest in " + ctx.out_dir);
    }
    file << m.dump(2) << '\n';
}

// Runs one command and, when it wrote into a directory, records a manifest
// that `replay` can re-execute.
template <typename Options, typename Runner>
void execute(const std::string& command, Options& opts, RunContext& ctx, Runner runner,
             const json& seed) {
    const auto outputs = runner(opts, ctx);
    if (!ctx.out_dir.empty()) {
        write_manifest(ctx, command, json(opts), seed, outputs);
        ctx.err << "wrote " << outputs.size() << " file(s) and " << kManifestName << " to "
                << ctx.out_dir << "\n";
    }
}

void add_arch_options(CLI::App* cmd, ArchSource& arch) {
    cmd->add_option("--widths", arch.widths,
                    "Hidden widths: comma list with NxK shorthand, e.g. 256x30 or 40x5,20x3");
    cmd->add_option("--input-dim", arch.input_dim, "Input dimension for --widths (default: first width)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--catalog", arch.catalog, "Built-in architecture id (1-45) or 'all'");
    cmd->add_option("--spec", arch.spec_path, "Architecture spec file (label; input_dim; widths)");
}

struct Common {
    std::string out_dir;
    bool svg = true;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, Common& c, bool out_required) {
    auto* out = cmd->add_option("--out", c.out_dir, "Output directory");
    if (out_required) {
        out->required();
    }
    cmd->add_flag("--svg,!--no-svg", c.svg, "Write SVG charts next to the CSV files (default on)");
    cmd->add_option("--threads", c.threads, "Worker threads (default: DEPTHDEGEN_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
}

double angle_or(const std::string& text, double fallback) {
    return text.empty() ? fallback : parse_angle(text);
}

int replay(const std::string& manifest_path, const std::string& out_dir, bool check, unsigned threads,
           std::ostream& out, std::ostream& err) {
    json m;
    try {
        m = json::parse(read_file(manifest_path));
    } catch (const json::exception& e) {
        throw ValidationError("manifest " + manifest_path + " is not valid JSON: " + e.what());
    }
    if (m.value("tool", "") != "depthdegen") {
        throw ValidationError(manifest_path + " is not a depthdegen manifest");
    }
    if (fs::exists(out_dir) && fs::exists(fs::path(manifest_path).parent_path() / kManifestName) &&
        fs::equivalent(fs::path(out_dir), fs::absolute(fs::path(manifest_path)).parent_path())) {
        throw ValidationError("replay --out must differ from the manifest's directory");
    }
    RunContext ctx{out, err, out_dir, m.value("svg", true),
                   threads ? threads : m.value("threads", 1u)};
    const std::string command = m.at("command").get<std::string>();
    const json& params = m.at("parameters");
    try {
        if (command == "predict") {
            auto opts = params.get<PredictOptions>();
            execute(command, opts, ctx, run_predict, nullptr);
        } else if (command == "simulate") {
            auto opts = params.get<SimulateOptions>();
            execute(command, opts, ctx, run_simulate, opts.seed);
        } else if (command == "compare") {
            auto opts = params.get<CompareOptions>();
            execute(command, opts, ctx, run_compare, nullptr);
        } else if (command == "density") {
            auto opts = params.get<DensityOptions>();
            execute(command, opts, ctx, run_density, opts.seed);
        } else {
            throw ValidationError("manifest names unknown command '" + command + "'");
        }
    } catch (const json::exception& e) {
        throw ValidationError("manifest parameters are malformed: " + std::string(e.what()));
    }
    if (!check) {
        return kExitOk;
    }
    const fs::path original = fs::path(manifest_path).parent_path();
    int mismatches = 0;
    for (const auto& name : m.at("outputs")) {
        const std::string file = name.get<std::string>();
        if (read_file(original / file) != read_file(fs::path(out_dir) / file)) {
            err << "mismatch: " << file << "\n";
            ++mismatches;
        }
    }
    if (mismatches > 0) {
        err << mismatches << " output(s) differ from the recorded run\n";
        return kExitFailure;
    }
    err << "replay matches the recorded run byte for byte (" << m.at("outputs").size() << " files)\n";
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Angle degeneracy in deep ReLU networks: predictions, simulation and reports",
                 "depthdegen"};
    app.set_version_flag("--version", DEPTHDEGEN_VERSION);
    app.require_subcommand(1);

    std::function<int()> action;

    // predict
    PredictOptions predict;
    Common predict_common;
    std::string predict_theta;
    auto* p = app.add_subcommand("predict", "Deterministic per-layer angle predictions");
    add_arch_options(p, predict.arch);
    p->add_option("--theta0", predict_theta, "Input angle in radians or pi forms (default pi/2)");
    p->add_option("--method", predict.method, "finite-full, finite-simple, infinite or all");
    add_common(p, predict_common, false);
    p->callback([&] {
        action = [&] {
            predict.theta0 = angle_or(predict_theta, kHalfPi);
            RunContext ctx{out, err, predict_common.out_dir, predict_common.svg,
                           predict_common.threads ? predict_common.threads : env_threads()};
            execute("predict", predict, ctx, run_predict, nullptr);
            return int{kExitOk};
        };
    });

    // simulate
    SimulateOptions simulate;
    Common simulate_common;
    std::string simulate_theta;
    auto* s = app.add_subcommand("simulate", "Monte Carlo over random networks against the predictions");
    add_arch_options(s, simulate.arch);
    s->add_option("--theta0", simulate_theta, "Input angle (default 0.1)");
    s->add_option("--replicas", simulate.replicas, "Independent networks")->check(CLI::PositiveNumber);
    s->add_option("--samples", simulate.samples, "Gaussian-chain samples (default: replicas)");
    s->add_option("--seed", simulate.seed, "Master seed");
    s->add_option("--sampler", simulate.sampler, "dense or projected");
    add_common(s, simulate_common, true);
    s->callback([&] {
        action = [&] {
            simulate.theta0 = angle_or(simulate_theta, 0.1);
            RunContext ctx{out, err, simulate_common.out_dir, simulate_common.svg,
                           simulate_common.threads ? simulate_common.threads : env_threads()};
            execute("simulate", simulate, ctx, run_simulate, simulate.seed);
            return int{kExitOk};
        };
    });

    // compare
    CompareOptions compare;
    Common compare_common;
    std::string compare_theta;
    auto* c = app.add_subcommand("compare", "Final-layer predictions next to recorded accuracies");
    add_arch_options(c, compare.arch);
    c->add_option("--theta0", compare_theta, "Input angle (default pi/2)");
    add_common(c, compare_common, false);
    c->callback([&] {
        action = [&] {
            compare.theta0 = angle_or(compare_theta, kHalfPi);
            RunContext ctx{out, err, compare_common.out_dir, compare_common.svg,
                           compare_common.threads ? compare_common.threads : env_threads()};
            execute("compare", compare, ctx, run_compare, nullptr);
            return int{kExitOk};
        };
    });

    // density
    DensityOptions density;
    Common density_common;
    std::string density_theta;
    std::string density_layers;
    auto* d = app.add_subcommand("density", "Per-layer densities: Monte Carlo histogram vs prediction");
    add_arch_options(d, density.arch);
    d->add_option("--theta0", density_theta, "Input angle (default 0.1)");
    d->add_option("--layer", density_layers, "Layers to report, e.g. 5,15,30")->required();
    d->add_option("--replicas", density.replicas, "Independent networks")->check(CLI::PositiveNumber);
    d->add_option("--samples", density.samples, "Gaussian-chain samples (default: replicas)");
    d->add_option("--seed", density.seed, "Master seed");
    d->add_option("--sampler", density.sampler, "dense or projected");
    d->add_option("--bins", density.bins, "Histogram bins");
    add_common(d, density_common, true);
    d->callback([&] {
        action = [&] {
            density.theta0 = angle_or(density_theta, 0.1);
            density.layers = parse_layer_list(density_layers);
            RunContext ctx{out, err, density_common.out_dir, density_common.svg,
                           density_common.threads ? density_common.threads : env_threads()};
            execute("density", density, ctx, run_density, density.seed);
            return int{kExitOk};
        };
    });

    // replay
    std::string manifest;
    std::string replay_out;
    bool replay_check = false;
    unsigned replay_threads = 0;
    auto* r = app.add_subcommand("replay", "Re-run a recorded manifest into a new directory");
    r->add_option("manifest", manifest, "manifest.json from an earlier run")->required();
    r->add_option("--out", replay_out, "Output directory")->required();
    r->add_flag("--check", replay_check, "Compare every output byte for byte with the original");
    r->add_option("--threads", replay_threads, "Worker threads (default: as recorded)")
        ->check(CLI::PositiveNumber);
    r->callback([&] {
        action = [&] { return replay(manifest, replay_out, replay_check, replay_threads, out, err); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int{kExitOk} : int{kExitValidation};
    }

    try {
        return action();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace depthdegen::cli
