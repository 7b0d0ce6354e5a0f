#pragma once

// Ground-truth simulator: random Gaussian-weight ReLU networks
//
//   z^1 = W^1 x,    z^{l+1} = sqrt(2 / n_l) W^{l+1} relu(z^l),
//
// no biases, W entries iid N(0, 1). Two inputs are pushed through each
// replica and the angle between relu(z^l(u)) and relu(z^l(v)) is recorded at
// every hidden layer.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "depthdegen/architecture.hpp"
#include "depthdegen/propagation.hpp"

namespace depthdegen {

/// Dense row-major matrix.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> data() const noexcept { return data_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// One initialized network. Weights for replica r come from the counter
/// stream (seed, network_weights, r), filled layer by layer in row-major
/// order. Immutable once built.
class NetworkInstance {
public:
    static NetworkInstance sample(const Architecture& arch, std::uint64_t seed,
                                  std::uint64_t replica);

    /// W^1 ... W^L; W^l has shape n_l x n_{l-1} with n_0 = input_dim.
    std::span<const Matrix> weights() const noexcept { return weights_; }

private:
    std::vector<Matrix> weights_;
};

struct AngleMeasurement {
    double theta = 0.0;
    double x = 0.0;  // ln sin^2 theta, kAbsorbed when sin theta underflows
    bool dead = false;  // one of the vectors is exactly zero
};

/// theta = atan2(|b_perp|, b . a_hat) with b_perp the component of b
/// orthogonal to a; keeps full relative precision in sin theta.
AngleMeasurement measure_angle(std::span<const double> a, std::span<const double> b);

/// Measured angle trace (records 0..L, variance 0) of u and v through one
/// network instance. A dead layer sets dead_from_layer and NaN records from
/// there on; an exactly collinear pair is absorbed (x = -inf) from there on.
PropagationTrace forward_pair(const Architecture& arch, const NetworkInstance& instance,
                              std::span<const double> u, std::span<const double> v);

struct InputPair {
    std::vector<double> u;
    std::vector<double> v;
};

/// Two unit vectors in R^dim at exact angle theta0: u uniform on the
/// sphere, v = cos(theta0) u + sin(theta0) w with w an orthonormalized
/// second draw. Deterministic in seed.
InputPair make_input_pair(int dim, double theta0, std::uint64_t seed);

/// Inputs built by make_input_pair(input_dim, theta0, seed).
struct OrthogonalPair {
    double theta0 = 0.1;
};

struct ExplicitPair {
    std::vector<double> u;
    std::vector<double> v;
};

using InputSpec = std::variant<OrthogonalPair, ExplicitPair>;

enum class Sampler {
    /// Materialize every W^l entry (streamed row by row).
    dense,
    /// Per row draw (w.a, w.b) from the bivariate normal with the Gram
    /// covariance of the previous activations. Same law, 2 draws per row.
    projected,
};

struct McConfig {
    std::size_t replicas = 1000;
    std::uint64_t seed = 0;
    InputSpec input = OrthogonalPair{};
    unsigned threads = 1;
    Sampler sampler = Sampler::dense;
};

/// Per-layer sample set of x over replicas.
struct LayerDistribution {
    std::size_t layer = 0;
    std::vector<double> samples;  // surviving replicas, replica order
    double mean = 0.0;
    double variance = 0.0;
    std::size_t count_absorbed = 0;  // dead + collinear
    std::size_t count_dead = 0;
    std::size_t count_collinear = 0;
};

InputPair resolve_inputs(const Architecture& arch, const McConfig& cfg);

/// One trace per replica, in replica order.
std::vector<PropagationTrace> simulate_replicas(const Architecture& arch, const McConfig& cfg);

/// Layers 1..depth of the given traces.
std::vector<LayerDistribution> summarize_layers(std::span<const PropagationTrace> traces,
                                                std::size_t depth);

std::vector<LayerDistribution> run_monte_carlo(const Architecture& arch, const McConfig& cfg);

}  // namespace depthdegen
