#include "depthdegen/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "depthdegen/errors.hpp"
#include "depthdegen/parallel.hpp"
#include "depthdegen/random.hpp"
#include "depthdegen/statistics.hpp"

namespace depthdegen {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

// Both products of one weight row, accumulated in index order.
void row_products(std::span<const double> row, std::span<const double> a,
                  std::span<const double> b, double& za, double& zb) {
    double sa = 0.0;
    double sb = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
        sa += row[j] * a[j];
        sb += row[j] * b[j];
    }
    za = sa;
    zb = sb;
}

double layer_scale(const Architecture& arch, std::size_t layer) {
    if (layer == 1) {
        return 1.0;
    }
    return std::sqrt(2.0 / static_cast<double>(arch.hidden_widths()[layer - 2]));
}

void relu_in_place(std::vector<double>& z) {
    for (double& v : z) {
        v = std::max(v, 0.0);
    }
}

void require_input(const Architecture& arch, std::span<const double> u,
                   std::span<const double> v) {
    const auto dim = static_cast<std::size_t>(arch.input_dim());
    if (u.size() != dim || v.size() != dim) {
        throw ValidationError("input vectors must have dimension " + std::to_string(dim));
    }
    const auto nonzero = [](std::span<const double> w) {
        return std::any_of(w.begin(), w.end(), [](double e) { return e != 0.0; });
    };
    if (!nonzero(u) || !nonzero(v)) {
        throw ValidationError("input vectors must be nonzero");
    }
}

// Shared layer loop. `pre_activations(layer, a, b, za, zb)` fills the scaled
// pre-activations of hidden layer `layer` from the previous activations.
template <typename PreActivations>
PropagationTrace propagate_pair(const Architecture& arch, std::span<const double> u,
                                std::span<const double> v, PreActivations&& pre_activations) {
    PropagationTrace trace;
    trace.method = Method::monte_carlo;
    trace.records.reserve(arch.depth() + 1);
    const auto input = measure_angle(u, v);
    trace.records.push_back(LayerRecord{input.theta, input.x, 0.0});

    std::vector<double> a(u.begin(), u.end());
    std::vector<double> b(v.begin(), v.end());
    std::vector<double> za;
    std::vector<double> zb;
    for (std::size_t layer = 1; layer <= arch.depth(); ++layer) {
        const auto rows = static_cast<std::size_t>(arch.hidden_widths()[layer - 1]);
        za.assign(rows, 0.0);
        zb.assign(rows, 0.0);
        pre_activations(layer, std::span<const double>(a), std::span<const double>(b),
                        std::span<double>(za), std::span<double>(zb));
        relu_in_place(za);
        relu_in_place(zb);
        a.swap(za);
        b.swap(zb);

        const auto m = measure_angle(a, b);
        if (m.dead) {
            trace.dead_from_layer = layer;
            trace.records.resize(arch.depth() + 1, LayerRecord{kNaN, kNaN, 0.0});
            return trace;
        }
        trace.records.push_back(LayerRecord{m.theta, m.x, 0.0});
        if (is_absorbed(m.x)) {
            trace.records.resize(arch.depth() + 1, LayerRecord{0.0, kAbsorbed, 0.0});
            return trace;
        }
    }
    return trace;
}

PropagationTrace dense_streamed_pair(const Architecture& arch, std::span<const double> u,
                                     std::span<const double> v, std::uint64_t seed,
                                     std::uint64_t replica) {
    CounterStream stream(seed, StreamDomain::network_weights, replica);
    NormalSampler normal;
    std::vector<double> row;
    return propagate_pair(arch, u, v,
                          [&](std::size_t layer, std::span<const double> a,
                              std::span<const double> b, std::span<double> za,
                              std::span<double> zb) {
                              const double scale = layer_scale(arch, layer);
                              row.resize(a.size());
                              for (std::size_t i = 0; i < za.size(); ++i) {
                                  for (double& w : row) {
                                      w = normal(stream);
                                  }
                                  row_products(row, a, b, za[i], zb[i]);
                                  za[i] *= scale;
                                  zb[i] *= scale;
                              }
                          });
}

PropagationTrace projected_pair(const Architecture& arch, std::span<const double> u,
                                std::span<const double> v, std::uint64_t seed,
                                std::uint64_t replica) {
    CounterStream stream(seed, StreamDomain::network_weights, replica);
    NormalSampler normal;
    return propagate_pair(arch, u, v,
                          [&](std::size_t layer, std::span<const double> a,
                              std::span<const double> b, std::span<double> za,
                              std::span<double> zb) {
                              // b = along * a_hat + perp * e_hat with e_hat orthonormal to
                              // a_hat, so (w.a, w.b) = (|a| g, along g + perp h).
                              const double norm_a = std::sqrt(dot(a, a));
                              double along = 0.0;
                              for (std::size_t j = 0; j < a.size(); ++j) {
                                  along += b[j] * (a[j] / norm_a);
                              }
                              double perp_sq = 0.0;
                              for (std::size_t j = 0; j < a.size(); ++j) {
                                  const double r = b[j] - along * (a[j] / norm_a);
                                  perp_sq += r * r;
                              }
                              double perp = std::sqrt(perp_sq);
                              if (std::equal(a.begin(), a.end(), b.begin(), b.end())) {
                                  along = norm_a;
                                  perp = 0.0;
                              }
                              const double scale = layer_scale(arch, layer);
                              for (std::size_t i = 0; i < za.size(); ++i) {
                                  const double g = normal(stream);
                                  const double h = normal(stream);
                                  za[i] = scale * (norm_a * g);
                                  zb[i] = scale * (along * g + perp * h);
                              }
                          });
}

}  // namespace

NetworkInstance NetworkInstance::sample(const Architecture& arch, std::uint64_t seed,
                                        std::uint64_t replica) {
    CounterStream stream(seed, StreamDomain::network_weights, replica);
    NormalSampler normal;
    NetworkInstance net;
    auto fan_in = static_cast<std::size_t>(arch.input_dim());
    for (const int width : arch.hidden_widths()) {
        Matrix w(static_cast<std::size_t>(width), fan_in);
        for (std::size_t i = 0; i < w.rows(); ++i) {
            for (double& e : w.row(i)) {
                e = normal(stream);
            }
        }
        net.weights_.push_back(std::move(w));
        fan_in = static_cast<std::size_t>(width);
    }
    return net;
}

AngleMeasurement measure_angle(std::span<const double> a, std::span<const double> b) {
    AngleMeasurement m;
    const double norm_a = std::sqrt(dot(a, a));
    const double norm_b = std::sqrt(dot(b, b));
    if (norm_a == 0.0 || norm_b == 0.0) {
        m.dead = true;
        m.theta = kNaN;
        m.x = kNaN;
        return m;
    }
    if (std::equal(a.begin(), a.end(), b.begin(), b.end())) {
        // Projection round-off would otherwise leave a spurious ~1e-16 angle.
        m.theta = 0.0;
        m.x = kAbsorbed;
        return m;
    }
    double along = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        along += b[i] * (a[i] / norm_a);
    }
    double perp_sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double r = b[i] - along * (a[i] / norm_a);
        perp_sq += r * r;
    }
    const double perp = std::sqrt(perp_sq);
    m.theta = std::atan2(perp, along);
    const double sin_theta = perp / norm_b;
    if (sin_theta == 0.0) {
        m.theta = along >= 0.0 ? 0.0 : kPi;
        m.x = kAbsorbed;
        return m;
    }
    const double cos_theta = along / norm_b;
    if (sin_theta * sin_theta < 0.5) {
        m.x = 2.0 * std::log(sin_theta);
    } else {
        m.x = std::log1p(-cos_theta * cos_theta);
    }
    return m;
}

PropagationTrace forward_pair(const Architecture& arch, const NetworkInstance& instance,
                              std::span<const double> u, std::span<const double> v) {
    require_input(arch, u, v);
    const auto weights = instance.weights();
    if (weights.size() != arch.depth()) {
        throw ValidationError("network instance depth does not match the architecture");
    }
    auto fan_in = static_cast<std::size_t>(arch.input_dim());
    for (std::size_t l = 0; l < weights.size(); ++l) {
        if (weights[l].cols() != fan_in ||
            weights[l].rows() != static_cast<std::size_t>(arch.hidden_widths()[l])) {
            throw ValidationError("weight matrix " + std::to_string(l + 1) +
                                  " has the wrong shape");
        }
        fan_in = weights[l].rows();
    }
    return propagate_pair(arch, u, v,
                          [&](std::size_t layer, std::span<const double> a,
                              std::span<const double> b, std::span<double> za,
                              std::span<double> zb) {
                              const Matrix& w = weights[layer - 1];
                              const double scale = layer_scale(arch, layer);
                              for (std::size_t i = 0; i < za.size(); ++i) {
                                  row_products(w.row(i), a, b, za[i], zb[i]);
                                  za[i] *= scale;
                                  zb[i] *= scale;
                              }
                          });
}

InputPair make_input_pair(int dim, double theta0, std::uint64_t seed) {
    if (dim < 2) {
        throw ValidationError("an input pair at a prescribed angle needs dimension >= 2");
    }
    if (!(theta0 >= 0.0 && theta0 <= kPi)) {
        throw ValidationError("theta0 = " + std::to_string(theta0) + " outside [0, pi]");
    }
    CounterStream stream(seed, StreamDomain::input_pair, 0);
    NormalSampler normal;
    const auto n = static_cast<std::size_t>(dim);

    std::vector<double> u(n);
    for (double& e : u) {
        e = normal(stream);
    }
    const double norm_u = std::sqrt(dot(u, u));
    for (double& e : u) {
        e /= norm_u;
    }

    std::vector<double> w(n);
    for (double& e : w) {
        e = normal(stream);
    }
    // Gram-Schmidt twice for a w orthogonal to u at working precision.
    for (int pass = 0; pass < 2; ++pass) {
        const double along = dot(w, u);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] -= along * u[i];
        }
    }
    const double norm_w = std::sqrt(dot(w, w));
    for (double& e : w) {
        e /= norm_w;
    }

    const double c = std::cos(theta0);
    const double s = std::sin(theta0);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = c * u[i] + s * w[i];
    }
    return InputPair{std::move(u), std::move(v)};
}

InputPair resolve_inputs(const Architecture& arch, const McConfig& cfg) {
    if (const auto* pair = std::get_if<ExplicitPair>(&cfg.input)) {
        InputPair inputs{pair->u, pair->v};
        require_input(arch, inputs.u, inputs.v);
        return inputs;
    }
    const auto& tag = std::get<OrthogonalPair>(cfg.input);
    return make_input_pair(arch.input_dim(), tag.theta0, cfg.seed);
}

std::vector<PropagationTrace> simulate_replicas(const Architecture& arch, const McConfig& cfg) {
    if (cfg.replicas < 1) {
        throw ValidationError("Monte Carlo needs at least one replica");
    }
    const InputPair inputs = resolve_inputs(arch, cfg);
    std::vector<PropagationTrace> traces(cfg.replicas);
    parallel_for(cfg.replicas, cfg.threads, [&](std::size_t r) {
        traces[r] = cfg.sampler == Sampler::dense
                        ? dense_streamed_pair(arch, inputs.u, inputs.v, cfg.seed, r)
                        : projected_pair(arch, inputs.u, inputs.v, cfg.seed, r);
    });
    return traces;
}

std::vector<LayerDistribution> summarize_layers(std::span<const PropagationTrace> traces,
                                                std::size_t depth) {
    std::vector<LayerDistribution> layers(depth);
    for (std::size_t l = 1; l <= depth; ++l) {
        LayerDistribution& dist = layers[l - 1];
        dist.layer = l;
        dist.samples.reserve(traces.size());
        for (const auto& trace : traces) {
            if (trace.dead_from_layer && *trace.dead_from_layer <= l) {
                ++dist.count_dead;
                continue;
            }
            const double x = trace.records.at(l).x;
            if (is_absorbed(x)) {
                ++dist.count_collinear;
                continue;
            }
            dist.samples.push_back(x);
        }
        dist.count_absorbed = dist.count_dead + dist.count_collinear;
        // Moments are undefined once every replica is absorbed.
        dist.mean = dist.samples.empty() ? kNaN : stats::mean(dist.samples);
        dist.variance = dist.samples.size() < 2 ? kNaN : stats::variance(dist.samples);
    }
    return layers;
}

std::vector<LayerDistribution> run_monte_carlo(const Architecture& arch, const McConfig& cfg) {
    const auto traces = simulate_replicas(arch, cfg);
    return summarize_layers(traces, arch.depth());
}

}  // namespace depthdegen
