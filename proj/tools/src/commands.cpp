#include "depthdegen/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "depthdegen/catalog.hpp"
#include "depthdegen/csv.hpp"
#include "depthdegen/errors.hpp"
#include "depthdegen/monte_carlo.hpp"
#include "depthdegen/propagation.hpp"
#include "depthdegen/statistics.hpp"
#include "depthdegen/svg.hpp"

namespace depthdegen::cli {
namespace {

struct Resolved {
    std::vector<Architecture> archs;
    std::vector<CatalogEntry> entries;  // same order as archs when from the catalog
};

Resolved resolve(ArchSource& src) {
    const int sources = !src.widths.empty() + !src.catalog.empty() +
                        (!src.spec_path.empty() || !src.spec_text.empty());
    if (sources != 1) {
        throw ValidationError("choose exactly one of --widths, --catalog, --spec");
    }
    Resolved r;
    if (!src.widths.empty()) {
        const auto widths = parse_width_list(src.widths);
        r.archs.emplace_back(src.widths, src.input_dim > 0 ? src.input_dim : widths.front(), widths);
    } else if (!src.catalog.empty()) {
        if (src.catalog == "all") {
            r.entries = builtin_catalog();
        } else {
            std::size_t used = 0;
            int id = 0;
            try {
                id = std::stoi(src.catalog, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != src.catalog.size()) {
                throw ValidationError("--catalog expects an id or 'all', got '" + src.catalog + "'");
            }
            r.entries.push_back(catalog_entry(id));
        }
        for (const auto& e : r.entries) {
            r.archs.push_back(e.arch);
        }
    } else {
        if (src.spec_text.empty()) {
            std::ifstream in(src.spec_path, std::ios::binary);
            if (!in) {
                throw ValidationError("cannot open spec file " + src.spec_path);
            }
            std::ostringstream buffer;
            buffer << in.rdbuf();
            src.spec_text = buffer.str();
        }
        r.archs = parse_spec_text(src.spec_text, src.spec_path.empty() ? "<spec>" : src.spec_path);
        if (r.archs.empty()) {
            throw ValidationError("spec file " + src.spec_path + " defines no architectures");
        }
    }
    return r;
}

const Architecture& single(const Resolved& r, const char* command) {
    if (r.archs.size() != 1) {
        throw ValidationError(std::string(command) + " takes exactly one architecture, got " +
                              std::to_string(r.archs.size()));
    }
    return r.archs.front();
}

Sampler parse_sampler(const std::string& name) {
    if (name == "dense") {
        return Sampler::dense;
    }
    if (name == "projected") {
        return Sampler::projected;
    }
    throw ValidationError("--sampler must be dense or projected, got '" + name + "'");
}

std::string safe_name(const std::string& label) {
    std::string out;
    for (const char c : label) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out.empty() ? "arch" : out;
}

void write_file(const RunContext& ctx, const std::string& name, const std::string& content) {
    const std::filesystem::path dir(ctx.out_dir);
    std::filesystem::create_directories(dir);
    std::ofstream file(dir / name, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot write " + (dir / name).string());
    }
    file << content;
}

// NaN anywhere in a deterministic or chain trace is a numeric failure; -inf
// is the legitimate absorbing state.
void require_no_nan(const PropagationTrace& trace, const std::string& what) {
    for (std::size_t l = 0; l < trace.records.size(); ++l) {
        const auto& r = trace.records[l];
        if (std::isnan(r.x) || std::isnan(r.theta) || std::isnan(r.variance)) {
            throw NumericError("NaN in " + what + " at layer " + std::to_string(l));
        }
    }
}

std::vector<double> iota_layers(std::size_t count) {
    std::vector<double> layers(count);
    for (std::size_t i = 0; i < count; ++i) {
        layers[i] = static_cast<double>(i);
    }
    return layers;
}

std::size_t resolved_samples(std::size_t samples, std::size_t replicas) {
    return samples == 0 ? replicas : samples;
}

}  // namespace

double parse_angle(const std::string& text) {
    static const std::regex pi_form(R"(^\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+)\s*)?$)");
    std::smatch m;
    double value = 0.0;
    if (std::regex_match(text, m, pi_form)) {
        const double factor = m[1].length() > 0 ? std::stod(m[1].str()) : 1.0;
        const double divisor = m[2].matched ? std::stod(m[2].str()) : 1.0;
        value = factor * kPi / divisor;
    } else {
        std::size_t used = 0;
        try {
            value = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || text.find_first_not_of(" \t", used) != std::string::npos) {
            throw ValidationError("cannot read angle '" + text + "' (radians, or forms like pi/2)");
        }
    }
    if (!std::isfinite(value)) {
        throw ValidationError("angle '" + text + "' is not finite");
    }
    return value;
}

std::vector<std::size_t> parse_layer_list(const std::string& text) {
    std::vector<std::size_t> layers;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || v < 1) {
            throw ValidationError("--layer expects positive layer indices like 5,15,30, got '" + text + "'");
        }
        layers.push_back(static_cast<std::size_t>(v));
    }
    if (layers.empty()) {
        throw ValidationError("--layer needs at least one layer index");
    }
    return layers;
}

// ---------------------------------------------------------------- predict

std::vector<std::string> run_predict(PredictOptions& opts, RunContext& ctx) {
    const auto resolved = resolve(opts.arch);
    std::vector<Method> methods;
    if (opts.method == "all") {
        methods = {Method::finite_full, Method::finite_simple, Method::infinite};
    } else if (opts.method == "finite-full") {
        methods = {Method::finite_full};
    } else if (opts.method == "finite-simple") {
        methods = {Method::finite_simple};
    } else if (opts.method == "infinite") {
        methods = {Method::infinite};
    } else {
        throw ValidationError("--method must be finite-full, finite-simple, infinite or all, got '" +
                              opts.method + "'");
    }
    if (ctx.out_dir.empty() && resolved.archs.size() > 1) {
        throw ValidationError("--out is required when predicting more than one architecture");
    }
    if (opts.theta0 == 0.0) {
        ctx.err << "warning: theta0 = 0 is the absorbing collinear state; every layer stays at -inf\n";
    }

    std::vector<std::string> written;
    for (const auto& arch : resolved.archs) {
        std::vector<PropagationTrace> traces;
        for (const Method m : methods) {
            switch (m) {
                case Method::finite_full:
                    traces.push_back(predict_finite(arch, opts.theta0, FiniteVariant::full));
                    break;
                case Method::finite_simple:
                    traces.push_back(predict_finite(arch, opts.theta0, FiniteVariant::simple));
                    break;
                default:
                    traces.push_back(predict_infinite(arch, opts.theta0));
                    break;
            }
            require_no_nan(traces.back(), std::string(to_string(m)) + " prediction");
            if (traces.back().clamped_variances > 0) {
                ctx.err << "note: " << arch.label() << ": sigma^2 clamped to 0 at "
                        << traces.back().clamped_variances << " layer(s) of the "
                        << to_string(m) << " trace\n";
            }
        }

        std::ostringstream csv;
        CsvWriter w(csv);
        std::vector<std::string> header{"layer"};
        for (std::size_t k = 0; k < methods.size(); ++k) {
            if (methods.size() == 1) {
                header.insert(header.end(), {"theta", "x", "sigma_sq"});
            } else {
                std::string suffix(to_string(methods[k]));
                std::replace(suffix.begin(), suffix.end(), '-', '_');
                header.insert(header.end(), {"theta_" + suffix, "x_" + suffix, "sigma_sq_" + suffix});
            }
        }
        w.row(header);
        for (std::size_t l = 0; l <= arch.depth(); ++l) {
            std::vector<std::string> row{std::to_string(l)};
            for (const auto& t : traces) {
                row.push_back(format_double(t.records[l].theta));
                row.push_back(format_double(t.records[l].x));
                row.push_back(format_double(t.records[l].variance));
            }
            w.row(row);
        }

        if (ctx.out_dir.empty()) {
            ctx.out << csv.str();
            continue;
        }
        const std::string stem = "predict_" + safe_name(arch.label());
        write_file(ctx, stem + ".csv", csv.str());
        written.push_back(stem + ".csv");
        if (ctx.svg) {
            Chart chart("Predicted ln sin^2 theta, " + arch.label(), "layer", "ln sin^2 theta");
            for (std::size_t k = 0; k < methods.size(); ++k) {
                std::vector<double> xs;
                for (const auto& r : traces[k].records) {
                    xs.push_back(r.x);
                }
                chart.add_line(std::string(to_string(methods[k])), iota_layers(xs.size()), xs,
                               methods[k] == Method::infinite);
            }
            write_file(ctx, stem + ".svg", chart.render());
            written.push_back(stem + ".svg");
        }
    }
    return written;
}

// ---------------------------------------------------------------- simulate

std::vector<std::string> run_simulate(SimulateOptions& opts, RunContext& ctx) {
    if (ctx.out_dir.empty()) {
        throw ValidationError("simulate needs --out <dir>");
    }
    const auto resolved = resolve(opts.arch);
    const Architecture& arch = single(resolved, "simulate");
    const std::size_t depth = arch.depth();

    const auto finite = predict_finite(arch, opts.theta0);
    const auto infinite = predict_infinite(arch, opts.theta0);
    require_no_nan(finite, "finite-width prediction");

    McConfig mc;
    mc.replicas = opts.replicas;
    mc.seed = opts.seed;
    mc.input = OrthogonalPair{opts.theta0};
    mc.threads = ctx.threads;
    mc.sampler = parse_sampler(opts.sampler);
    const auto traces = simulate_replicas(arch, mc);
    const auto layers = summarize_layers(traces, depth);

    GaussianChainConfig gc;
    gc.num_samples = resolved_samples(opts.samples, opts.replicas);
    gc.seed = opts.seed;
    gc.threads = ctx.threads;
    const auto chain = sample_gaussian_chain(arch, opts.theta0, gc);
    for (const auto& t : chain.traces) {
        require_no_nan(t, "Gaussian chain");
    }

    std::vector<double> mc_mean{traces.front().records[0].x};
    std::vector<double> mc_std{0.0};
    std::vector<double> chain_mean{finite.records[0].x};
    std::vector<double> chain_std{0.0};

    std::ostringstream csv;
    CsvWriter w(csv);
    w.row({"layer", "mc_mean", "mc_std", "mc_count", "mc_absorbed", "mc_dead", "mc_collinear",
           "predicted_mean", "predicted_sigma_sq", "chain_mean", "chain_std", "chain_absorbed",
           "infinite_x"});
    w.row({"0", format_double(mc_mean[0]), format_double(0.0), std::to_string(opts.replicas), "0",
           "0", "0", format_double(finite.records[0].x), format_double(0.0),
           format_double(chain_mean[0]), format_double(0.0), "0",
           format_double(infinite.records[0].x)});
    for (std::size_t l = 1; l <= depth; ++l) {
        const auto& d = layers[l - 1];
        if (!d.samples.empty() && !std::isfinite(d.mean)) {
            throw NumericError("non-finite Monte Carlo mean at layer " + std::to_string(l));
        }
        const auto c = gaussian_chain_layer(chain, l);
        const auto cm = stats::moments(c.finite_values);
        const double c_mean = c.finite_values.empty() ? std::nan("") : cm.mean;
        const double c_std = c.finite_values.size() < 2 ? std::nan("") : std::sqrt(cm.variance);
        mc_mean.push_back(d.mean);
        mc_std.push_back(std::sqrt(d.variance));
        chain_mean.push_back(c_mean);
        chain_std.push_back(c_std);
        w.row({std::to_string(l), format_double(d.mean), format_double(std::sqrt(d.variance)),
               std::to_string(d.samples.size()), std::to_string(d.count_absorbed),
               std::to_string(d.count_dead), std::to_string(d.count_collinear),
               format_double(finite.records[l].x), format_double(finite.records[l].variance),
               format_double(c_mean), format_double(c_std),
               std::to_string(c.total - c.finite_values.size()),
               format_double(infinite.records[l].x)});
    }

    std::ostringstream samples;
    CsvWriter sw(samples);
    std::vector<std::string> header{"replica"};
    for (std::size_t l = 1; l <= depth; ++l) {
        header.push_back("x_" + std::to_string(l));
    }
    sw.row(header);
    for (std::size_t r = 0; r < traces.size(); ++r) {
        std::vector<std::string> row{std::to_string(r)};
        for (std::size_t l = 1; l <= depth; ++l) {
            row.push_back(format_double(traces[r].records[l].x));
        }
        sw.row(row);
    }

    std::vector<std::string> written{"simulate.csv", "samples.csv"};
    write_file(ctx, "simulate.csv", csv.str());
    write_file(ctx, "samples.csv", samples.str());

    std::size_t absorbed = 0;
    for (const auto& d : layers) {
        absorbed = std::max(absorbed, d.count_absorbed);
    }
    if (absorbed > 0) {
        ctx.err << "note: " << layers.back().count_dead << " replica(s) died and "
                << layers.back().count_collinear
                << " became exactly collinear by the last layer; they are excluded from the moments\n";
    }

    if (ctx.svg) {
        const auto layer_axis = iota_layers(depth + 1);
        const auto band = [&](const std::vector<double>& m, const std::vector<double>& s, double sign) {
            std::vector<double> out(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                out[i] = m[i] + sign * s[i];
            }
            return out;
        };
        Chart chart("Monte Carlo vs predictions, " + arch.label(), "layer", "ln sin^2 theta");
        chart.add_band("Monte Carlo +/- 1 sd", layer_axis, band(mc_mean, mc_std, -1.0),
                       band(mc_mean, mc_std, 1.0));
        chart.add_line("Monte Carlo mean", layer_axis, mc_mean);
        chart.add_band("Gaussian chain +/- 1 sd", layer_axis, band(chain_mean, chain_std, -1.0),
                       band(chain_mean, chain_std, 1.0));
        std::vector<double> fx;
        std::vector<double> ix;
        for (std::size_t l = 0; l <= depth; ++l) {
            fx.push_back(finite.records[l].x);
            ix.push_back(infinite.records[l].x);
        }
        chart.add_line("finite-width mean", layer_axis, fx);
        chart.add_line("infinite width", layer_axis, ix, true);
        write_file(ctx, "simulate.svg", chart.render());
        written.push_back("simulate.svg");
    }
    return written;
}

// ---------------------------------------------------------------- compare

std::vector<std::string> run_compare(CompareOptions& opts, RunContext& ctx) {
    if (opts.arch.widths.empty() && opts.arch.catalog.empty() && opts.arch.spec_path.empty() &&
        opts.arch.spec_text.empty()) {
        opts.arch.catalog = "all";
    }
    const auto resolved = resolve(opts.arch);
    const auto rows = resolved.entries.empty() ? degeneracy_report(resolved.archs, opts.theta0)
                                               : degeneracy_report(resolved.entries, opts.theta0);

    std::ostringstream csv;
    CsvWriter w(csv);
    w.row({"id", "depth", "avg_width", "widths", "x_final_finite", "x_final_infinite",
           "acc_mnist_mean", "acc_mnist_std", "acc_fmnist_mean", "acc_fmnist_std",
           "acc_cifar_mean", "acc_cifar_std"});
    bool have_accuracy = true;
    for (const auto& r : rows) {
        if (std::isnan(r.x_final_finite) || std::isnan(r.x_final_infinite)) {
            throw NumericError("NaN in the report row for " + r.label);
        }
        std::vector<std::string> row{r.id ? std::to_string(*r.id) : r.label,
                                     std::to_string(r.depth), format_double(r.average_width),
                                     format_width_list(r.widths), format_double(r.x_final_finite),
                                     format_double(r.x_final_infinite)};
        if (r.accuracy) {
            for (const auto* acc : {&r.accuracy->mnist, &r.accuracy->fmnist, &r.accuracy->cifar10}) {
                row.push_back(format_double(acc->mean));
                row.push_back(format_double(acc->std));
            }
        } else {
            have_accuracy = false;
            row.insert(row.end(), 6, "");
        }
        w.row(row);
    }

    if (!have_accuracy) {
        ctx.err << "warning: no recorded accuracies for these architectures; writing the CSV only\n";
    } else if (rows.size() >= 3) {
        std::vector<double> x;
        std::vector<double> acc;
        for (const auto& r : rows) {
            x.push_back(r.x_final_finite);
            acc.push_back(r.accuracy->mnist.mean);
        }
        ctx.err << "spearman(x_final_finite, mnist accuracy) = " << format_double(stats::spearman(x, acc))
                << "\n";
    }

    if (ctx.out_dir.empty()) {
        ctx.out << csv.str();
        return {};
    }
    std::vector<std::string> written{"report.csv"};
    write_file(ctx, "report.csv", csv.str());
    if (ctx.svg && have_accuracy) {
        struct Dataset {
            const char* file;
            const char* name;
            RecordedAccuracy DatasetAccuracies::*field;
        };
        const Dataset datasets[] = {{"compare_mnist.svg", "MNIST", &DatasetAccuracies::mnist},
                                    {"compare_fmnist.svg", "FMNIST", &DatasetAccuracies::fmnist},
                                    {"compare_cifar10.svg", "CIFAR-10", &DatasetAccuracies::cifar10}};
        for (const auto& ds : datasets) {
            std::vector<double> x;
            std::vector<double> y;
            std::vector<double> err;
            for (const auto& r : rows) {
                x.push_back(r.x_final_finite);
                y.push_back(((*r.accuracy).*ds.field).mean);
                err.push_back(((*r.accuracy).*ds.field).std);
            }
            Chart chart(std::string("Predicted final angle vs ") + ds.name + " accuracy",
                        "predicted ln sin^2 theta^L (finite width)", "test accuracy");
            chart.add_points(ds.name, x, y, err);
            write_file(ctx, ds.file, chart.render());
            written.emplace_back(ds.file);
        }
        std::vector<double> xi;
        std::vector<double> xf;
        for (const auto& r : rows) {
            xi.push_back(r.x_final_infinite);
            xf.push_back(r.x_final_finite);
        }
        Chart chart("Finite vs infinite width prediction", "infinite width ln sin^2 theta^L",
                    "finite width ln sin^2 theta^L");
        chart.add_points("architectures", xi, xf);
        chart.add_diagonal("y = x");
        write_file(ctx, "finite_vs_infinite.svg", chart.render());
        written.emplace_back("finite_vs_infinite.svg");
    }
    return written;
}

// ---------------------------------------------------------------- density

std::vector<std::string> run_density(DensityOptions& opts, RunContext& ctx) {
    if (ctx.out_dir.empty()) {
        throw ValidationError("density needs --out <dir>");
    }
    if (opts.bins < 2) {
        throw ValidationError("--bins must be at least 2");
    }
    const auto resolved = resolve(opts.arch);
    const Architecture& full = single(resolved, "density");
    if (opts.layers.empty()) {
        throw ValidationError("density needs --layer");
    }
    std::size_t max_layer = 0;
    for (const std::size_t l : opts.layers) {
        if (l < 1 || l > full.depth()) {
            throw ValidationError("density layer " + std::to_string(l) + " outside 1.." +
                                  std::to_string(full.depth()));
        }
        max_layer = std::max(max_layer, l);
    }
    const Architecture arch = full.truncated(max_layer);
    // Validates theta0 for the prediction side before the expensive runs.
    static_cast<void>(predict_finite(arch, opts.theta0));

    McConfig mc;
    mc.replicas = opts.replicas;
    mc.seed = opts.seed;
    mc.input = OrthogonalPair{opts.theta0};
    mc.threads = ctx.threads;
    mc.sampler = parse_sampler(opts.sampler);
    const auto dists = summarize_layers(simulate_replicas(arch, mc), max_layer);

    GaussianChainConfig gc;
    gc.num_samples = resolved_samples(opts.samples, opts.replicas);
    gc.seed = opts.seed;
    gc.threads = ctx.threads;
    const auto chain = sample_gaussian_chain(arch, opts.theta0, gc);

    std::ostringstream summary;
    CsvWriter sw(summary);
    sw.row({"layer", "total_variation", "mc_count", "mc_absorbed", "chain_count", "chain_absorbed"});
    std::vector<std::string> written;
    for (const std::size_t layer : opts.layers) {
        const auto& mc_samples = dists[layer - 1].samples;
        const auto chain_samples = gaussian_chain_layer(chain, layer);
        if (mc_samples.empty() || chain_samples.finite_values.size() < 2) {
            throw ValidationError("layer " + std::to_string(layer) +
                                  ": every sample is absorbed, no density to estimate");
        }
        double lo = *std::min_element(mc_samples.begin(), mc_samples.end());
        double hi = *std::max_element(mc_samples.begin(), mc_samples.end());
        lo = std::min(lo, *std::min_element(chain_samples.finite_values.begin(), chain_samples.finite_values.end()));
        hi = std::max(hi, *std::max_element(chain_samples.finite_values.begin(), chain_samples.finite_values.end()));
        const double pad = hi > lo ? 0.02 * (hi - lo) : 0.5;
        lo -= pad;
        hi += pad;
        const auto bins = static_cast<std::size_t>(opts.bins);
        const double width = (hi - lo) / static_cast<double>(bins);
        std::vector<double> edges(bins + 1);
        std::vector<double> centers(bins);
        for (std::size_t i = 0; i <= bins; ++i) {
            edges[i] = lo + width * static_cast<double>(i);
        }
        for (std::size_t i = 0; i < bins; ++i) {
            centers[i] = lo + width * (static_cast<double>(i) + 0.5);
        }
        std::vector<double> mc_density(bins, 0.0);
        for (const double x : mc_samples) {
            const auto idx = std::min(bins - 1, static_cast<std::size_t>((x - lo) / width));
            mc_density[idx] += 1.0;
        }
        for (double& d : mc_density) {
            d /= static_cast<double>(opts.replicas) * width;
        }

        std::vector<double> predicted;
        if (layer == 1) {
            // One step of the chain is exactly N(mu, sigma^2) cut at x <= 0.
            const double theta = chain.traces.front().records[0].theta;
            const double start = theta > kHalfPi ? infinite_step(theta) : theta;
            if (theta > kHalfPi) {
                throw ValidationError("the first step from theta0 = pi is deterministic; no layer-1 density");
            }
            const double m = mu(start, arch.width(1));
            const double v = sigma_sq(start, arch.width(1));
            if (!(v > 0.0)) {
                throw ValidationError("one-step variance is clamped to 0 at theta0 = " +
                                      format_double(opts.theta0) + "; layer-1 density is degenerate");
            }
            const double kept = 0.5 * std::erfc(m / std::sqrt(2.0 * v));
            for (const double x : centers) {
                predicted.push_back(x <= 0.0 ? stats::normal_pdf(x, m, v) / kept : 0.0);
            }
        } else {
            predicted = chain_density(chain_samples, centers);
        }

        double tv = 0.0;
        for (std::size_t i = 0; i < bins; ++i) {
            tv += std::abs(mc_density[i] - predicted[i]) * width;
        }
        tv *= 0.5;

        std::ostringstream csv;
        CsvWriter w(csv);
        w.row({"x", "mc_density", "predicted_density"});
        for (std::size_t i = 0; i < bins; ++i) {
            w.row({format_double(centers[i]), format_double(mc_density[i]), format_double(predicted[i])});
        }
        const std::string stem = "density_layer" + std::to_string(layer);
        write_file(ctx, stem + ".csv", csv.str());
        written.push_back(stem + ".csv");
        sw.row({std::to_string(layer), format_double(tv), std::to_string(mc_samples.size()),
                std::to_string(dists[layer - 1].count_absorbed),
                std::to_string(chain_samples.finite_values.size()),
                std::to_string(chain_samples.total - chain_samples.finite_values.size())});

        if (ctx.svg) {
            Chart chart("Density of ln sin^2 theta at layer " + std::to_string(layer) + ", " +
                            full.label(),
                        "ln sin^2 theta", "density");
            chart.add_histogram("Monte Carlo", edges, mc_density);
            chart.add_line("predicted", centers, predicted);
            write_file(ctx, stem + ".svg", chart.render());
            written.push_back(stem + ".svg");
        }
    }
    write_file(ctx, "density_summary.csv", summary.str());
    written.push_back("density_summary.csv");
    return written;
}

// ---------------------------------------------------------------- json

void to_json(nlohmann::json& j, const ArchSource& a) {
    j = nlohmann::json::object();
    if (!a.widths.empty()) {
        j["widths"] = a.widths;
        j["input_dim"] = a.input_dim;
    }
    if (!a.catalog.empty()) {
        j["catalog"] = a.catalog;
    }
    if (!a.spec_path.empty() || !a.spec_text.empty()) {
        j["spec_path"] = a.spec_path;
        j["spec_text"] = a.spec_text;
    }
}

void from_json(const nlohmann::json& j, ArchSource& a) {
    a.widths = j.value("widths", std::string{});
    a.input_dim = j.value("input_dim", 0);
    a.catalog = j.value("catalog", std::string{});
    a.spec_path = j.value("spec_path", std::string{});
    a.spec_text = j.value("spec_text", std::string{});
}

void to_json(nlohmann::json& j, const PredictOptions& o) {
    j = {{"arch", o.arch}, {"theta0", o.theta0}, {"method", o.method}};
}

void from_json(const nlohmann::json& j, PredictOptions& o) {
    j.at("arch").get_to(o.arch);
    j.at("theta0").get_to(o.theta0);
    j.at("method").get_to(o.method);
}

void to_json(nlohmann::json& j, const SimulateOptions& o) {
    j = {{"arch", o.arch},         {"theta0", o.theta0}, {"replicas", o.replicas},
         {"samples", o.samples},   {"seed", o.seed},     {"sampler", o.sampler}};
}

void from_json(const nlohmann::json& j, SimulateOptions& o) {
    j.at("arch").get_to(o.arch);
    j.at("theta0").get_to(o.theta0);
    j.at("replicas").get_to(o.replicas);
    j.at("samples").get_to(o.samples);
    j.at("seed").get_to(o.seed);
    j.at("sampler").get_to(o.sampler);
}

void to_json(nlohmann::json& j, const CompareOptions& o) {
    j = {{"arch", o.arch}, {"theta0", o.theta0}};
}

void from_json(const nlohmann::json& j, CompareOptions& o) {
    j.at("arch").get_to(o.arch);
    j.at("theta0").get_to(o.theta0);
}

void to_json(nlohmann::json& j, const DensityOptions& o) {
    j = {{"arch", o.arch},       {"theta0", o.theta0}, {"layers", o.layers},
         {"replicas", o.replicas}, {"samples", o.samples}, {"seed", o.seed},
         {"sampler", o.sampler}, {"bins", o.bins}};
}

void from_json(const nlohmann::json& j, DensityOptions& o) {
    j.at("arch").get_to(o.arch);
    j.at("theta0").get_to(o.theta0);
    j.at("layers").get_to(o.layers);
    j.at("replicas").get_to(o.replicas);
    j.at("samples").get_to(o.samples);
    j.at("seed").get_to(o.seed);
    j.at("sampler").get_to(o.sampler);
    j.at("bins").get_to(o.bins);
}

}  // namespace depthdegen::cli
