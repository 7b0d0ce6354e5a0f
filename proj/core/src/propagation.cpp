#include "depthdegen/propagation.hpp"

#include <cmath>
#include <string>

#include "depthdegen/errors.hpp"
#include "depthdegen/parallel.hpp"
#include "depthdegen/random.hpp"
#include "depthdegen/statistics.hpp"

namespace depthdegen {
namespace {

constexpr int kMaxRedraws = 10000;

void require_finite_theta0(double theta0) {
    if (theta0 == kPi) {
        return;
    }
    if (!(theta0 >= 0.0 && theta0 <= kHalfPi)) {
        throw ValidationError("theta0 = " + std::to_string(theta0) +
                              " must lie in [0, pi/2] or equal pi; the finite-width expansion "
                              "has no rule for (pi/2, pi)");
    }
}

LayerRecord initial_record(double theta0) {
    return LayerRecord{theta0, to_log_sin_sq(theta0), 0.0};
}

// First hidden layer for antipodal inputs: the exact infinite-width map
// sends pi to pi/2 and the finite chain continues from there.
LayerRecord antipodal_first_step() {
    const double theta = infinite_step(kPi);
    return LayerRecord{theta, to_log_sin_sq(theta), 0.0};
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::finite_full:
            return "finite-full";
        case Method::finite_simple:
            return "finite-simple";
        case Method::infinite:
            return "infinite";
        case Method::gaussian_sample:
            return "gaussian-sample";
        case Method::monte_carlo:
            return "monte-carlo";
    }
    return "unknown";
}

PropagationTrace predict_finite(const Architecture& arch, double theta0, FiniteVariant variant) {
    require_finite_theta0(theta0);
    PropagationTrace trace;
    trace.method = variant == FiniteVariant::full ? Method::finite_full : Method::finite_simple;
    trace.records.reserve(arch.depth() + 1);
    trace.records.push_back(initial_record(theta0));

    for (std::size_t layer = 1; layer <= arch.depth(); ++layer) {
        const LayerRecord& prev = trace.records.back();
        if (layer == 1 && theta0 == kPi) {
            trace.records.push_back(antipodal_first_step());
            continue;
        }
        if (is_absorbed(prev.x)) {
            trace.records.push_back(LayerRecord{0.0, kAbsorbed, 0.0});
            continue;
        }
        const Width n = arch.width(layer);
        if (sigma_sq_is_clamped(prev.theta, n)) {
            ++trace.clamped_variances;
        }
        const double x = variant == FiniteVariant::full ? finite_step_full(prev.x, n)
                                                        : finite_step_simple(prev.x, n);
        trace.records.push_back(LayerRecord{angle_from_log_sin_sq(x), x, sigma_sq(prev.theta, n)});
    }
    return trace;
}

PropagationTrace predict_infinite(std::size_t depth, double theta0) {
    if (!(theta0 >= 0.0 && theta0 <= kPi)) {
        throw ValidationError("theta0 = " + std::to_string(theta0) + " outside [0, pi]");
    }
    PropagationTrace trace;
    trace.method = Method::infinite;
    trace.records.reserve(depth + 1);
    trace.records.push_back(initial_record(theta0));
    double theta = theta0;
    for (std::size_t layer = 1; layer <= depth; ++layer) {
        theta = infinite_step(theta);
        trace.records.push_back(LayerRecord{theta, to_log_sin_sq(theta), 0.0});
    }
    return trace;
}

PropagationTrace predict_infinite(const Architecture& arch, double theta0) {
    return predict_infinite(arch.depth(), theta0);
}

GaussianChainResult sample_gaussian_chain(const Architecture& arch, double theta0,
                                          const GaussianChainConfig& cfg) {
    require_finite_theta0(theta0);
    if (cfg.num_samples < 1) {
        throw ValidationError("Gaussian chain needs at least one sample");
    }
    GaussianChainResult result;
    result.traces.resize(cfg.num_samples);
    std::vector<std::size_t> redraws(cfg.num_samples, 0);

    parallel_for(cfg.num_samples, cfg.threads, [&](std::size_t i) {
        CounterStream stream(cfg.seed, StreamDomain::gaussian_chain, i);
        NormalSampler normal;
        PropagationTrace& trace = result.traces[i];
        trace.method = Method::gaussian_sample;
        trace.records.reserve(arch.depth() + 1);
        trace.records.push_back(initial_record(theta0));

        for (std::size_t layer = 1; layer <= arch.depth(); ++layer) {
            const LayerRecord prev = trace.records.back();
            if (layer == 1 && theta0 == kPi) {
                trace.records.push_back(antipodal_first_step());
                continue;
            }
            if (is_absorbed(prev.x)) {
                trace.records.push_back(LayerRecord{0.0, kAbsorbed, 0.0});
                continue;
            }
            const Width n = arch.width(layer);
            const double mean = finite_step_full(prev.x, n);
            if (sigma_sq_is_clamped(prev.theta, n)) {
                ++trace.clamped_variances;
            }
            const double var = cfg.zero_variance ? 0.0 : sigma_sq(prev.theta, n);
            const double sd = std::sqrt(var);
            double x = mean;
            if (sd > 0.0) {
                int attempts = 0;
                do {
                    if (attempts == kMaxRedraws) {
                        throw NumericError("Gaussian chain could not draw x <= 0 at layer " +
                                           std::to_string(layer));
                    }
                    x = mean + sd * normal(stream);
                    ++attempts;
                } while (x > 0.0);
                redraws[i] += static_cast<std::size_t>(attempts - 1);
            }
            trace.records.push_back(LayerRecord{angle_from_log_sin_sq(x), x, var});
        }
    });

    for (const std::size_t r : redraws) {
        result.resampled_draws += r;
    }
    result.total_draws = cfg.num_samples * arch.depth() + result.resampled_draws;
    return result;
}

LayerSamples gaussian_chain_layer(const GaussianChainResult& chain, std::size_t layer) {
    LayerSamples out;
    out.total = chain.traces.size();
    out.finite_values.reserve(out.total);
    for (const auto& trace : chain.traces) {
        if (layer >= trace.records.size()) {
            throw ValidationError("layer " + std::to_string(layer) + " beyond chain depth");
        }
        const double x = trace.records[layer].x;
        if (!is_absorbed(x)) {
            out.finite_values.push_back(x);
        }
    }
    return out;
}

std::vector<double> chain_density(const LayerSamples& samples, std::span<const double> grid) {
    if (grid.size() < 2) {
        throw ValidationError("density grid needs at least two points");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw ValidationError("density grid must be strictly increasing");
        }
    }
    const double bandwidth = stats::silverman_bandwidth(samples.finite_values);
    return stats::gaussian_kde(samples.finite_values, grid, bandwidth, samples.total);
}

std::vector<double> predicted_density(const Architecture& arch, double theta0, std::size_t layer,
                                      std::span<const double> grid,
                                      const GaussianChainConfig& cfg) {
    if (layer < 1 || layer > arch.depth()) {
        throw ValidationError("density layer " + std::to_string(layer) + " outside 1.." +
                              std::to_string(arch.depth()));
    }
    if (grid.size() < 2) {
        throw ValidationError("density grid needs at least two points");
    }
    const auto chain = sample_gaussian_chain(arch.truncated(layer), theta0, cfg);
    return chain_density(gaussian_chain_layer(chain, layer), grid);
}

}  // namespace depthdegen
