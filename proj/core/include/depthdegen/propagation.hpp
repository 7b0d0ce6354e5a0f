#pragma once

// Layer-by-layer angle chains over a whole architecture: the deterministic
// finite-width mean recursion, the infinite-width recursion, and the
// stochastic Gaussian chain that draws ln sin^2 theta from N(mu, sigma^2)
// at each layer.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "depthdegen/architecture.hpp"

namespace depthdegen {

enum class Method { finite_full, finite_simple, infinite, gaussian_sample, monte_carlo };

std::string_view to_string(Method m);

struct LayerRecord {
    double theta = 0.0;
    double x = 0.0;         // ln sin^2 theta
    double variance = 0.0;  // one-step conditional variance of x at this layer
};

/// Records for layers 0..L; record 0 is the input pair.
struct PropagationTrace {
    Method method = Method::finite_full;
    std::vector<LayerRecord> records;
    /// Set when a Monte Carlo replica's activations died; records from this
    /// layer on hold NaN.
    std::optional<std::size_t> dead_from_layer;
    /// Layers whose truncated sigma^2 went negative and was clamped to 0.
    std::size_t clamped_variances = 0;

    std::size_t depth() const noexcept { return records.empty() ? 0 : records.size() - 1; }
    const LayerRecord& final() const { return records.back(); }
};

enum class FiniteVariant { full, simple };

/// Deterministic mean recursion x^l = step(x^{l-1}, n_l). theta0 must be in
/// [0, pi/2] or exactly pi; pi is taken through one exact infinite_step
/// (landing on pi/2) for the first layer, after which the finite chain
/// proceeds. theta0 = 0 yields the absorbing trace.
PropagationTrace predict_finite(const Architecture& arch, double theta0,
                                FiniteVariant variant = FiniteVariant::full);

/// Width-independent law-of-large-numbers chain, theta0 in [0, pi].
PropagationTrace predict_infinite(std::size_t depth, double theta0);
PropagationTrace predict_infinite(const Architecture& arch, double theta0);

struct GaussianChainConfig {
    std::size_t num_samples = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Test hook: draw with zero variance so every sample equals the
    /// deterministic finite chain.
    bool zero_variance = false;
};

struct GaussianChainResult {
    std::vector<PropagationTrace> traces;
    /// Draws rejected because they landed at x > 0 and were redrawn.
    std::size_t resampled_draws = 0;
    std::size_t total_draws = 0;
};

/// num_samples independent stochastic traces. Sample i uses its own
/// counter stream keyed by (seed, i), so the output does not depend on
/// cfg.threads.
GaussianChainResult sample_gaussian_chain(const Architecture& arch, double theta0,
                                          const GaussianChainConfig& cfg);

/// Finite x values of the Gaussian chain at `layer` (absorbed samples are
/// dropped) together with the total sample count.
struct LayerSamples {
    std::vector<double> finite_values;
    std::size_t total = 0;
};

LayerSamples gaussian_chain_layer(const GaussianChainResult& chain, std::size_t layer);

/// Silverman-bandwidth Gaussian KDE of one layer's samples on `grid`
/// (strictly increasing). Absorbed samples carry mass but no density, so
/// the result integrates to finite_values.size() / total.
std::vector<double> chain_density(const LayerSamples& samples, std::span<const double> grid);

/// Density of x at `layer` estimated by a Silverman-bandwidth Gaussian KDE
/// over the Gaussian chain. grid must be strictly increasing.
std::vector<double> predicted_density(const Architecture& arch, double theta0, std::size_t layer,
                                      std::span<const double> grid,
                                      const GaussianChainConfig& cfg);

}  // namespace depthdegen
