#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "depthdegen/catalog.hpp"
#include "depthdegen/errors.hpp"
#include "depthdegen/propagation.hpp"
#include "depthdegen/statistics.hpp"

using namespace depthdegen;

namespace {

// Chains replayed independently at 40 significant digits.
constexpr double kUniform256x30Layer1 = -4.6393091401360692;
constexpr double kUniform256x30Layer30 = -5.4159445882222122;
constexpr double kCatalog17Final = -1.9333547125025441;
constexpr double kInfiniteDepth10 = -1.4253435766372071;

Architecture uniform(int width, int depth) {
    return Architecture("uniform", width, std::vector<int>(static_cast<std::size_t>(depth), width));
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) {
        grid.push_back(lo + (hi - lo) * i / (count - 1));
    }
    return grid;
}

}  // namespace

TEST_CASE("finite chain shape and frozen values") {
    const auto arch = uniform(256, 30);
    const auto trace = predict_finite(arch, 0.1);
    REQUIRE(trace.records.size() == 31);
    CHECK(trace.method == Method::finite_full);
    CHECK(trace.records[0].theta == 0.1);
    CHECK(trace.records[0].variance == 0.0);
    CHECK(trace.records[1].x == doctest::Approx(kUniform256x30Layer1).epsilon(1e-14));
    CHECK(trace.final().x == doctest::Approx(kUniform256x30Layer30).epsilon(1e-12));
    for (const auto& r : trace.records) {
        CHECK(r.x == doctest::Approx(to_log_sin_sq(r.theta)).epsilon(1e-12));
    }
    CHECK(predict_finite(catalog_entry(17).arch, kHalfPi).final().x ==
          doctest::Approx(kCatalog17Final).epsilon(1e-12));
}

TEST_CASE("per-layer variance is the one-step sigma^2 into that layer") {
    const Architecture arch("mixed", 10, {40, 80, 20, 160});
    const auto trace = predict_finite(arch, 0.3);
    for (std::size_t l = 1; l <= arch.depth(); ++l) {
        CHECK(trace.records[l].variance == sigma_sq(trace.records[l - 1].theta, arch.width(l)));
    }
    const auto orthogonal = predict_finite(uniform(64, 3), kHalfPi);
    std::size_t clamped = 0;
    for (std::size_t l = 1; l <= 3; ++l) {
        clamped += sigma_sq_is_clamped(orthogonal.records[l - 1].theta, Width{64});
    }
    CHECK(clamped >= 1);
    CHECK(orthogonal.clamped_variances == clamped);
    CHECK(orthogonal.records[1].variance == 0.0);
}

TEST_CASE("Markov replay from any truncated trace") {
    const Architecture arch("mixed", 10, {40, 80, 20, 160, 30, 30, 90});
    const auto full = predict_finite(arch, kHalfPi);
    const auto widths = arch.hidden_widths();
    for (std::size_t start = 1; start < arch.depth(); ++start) {
        const Architecture tail("tail", 10, std::vector<int>(widths.begin() + static_cast<long>(start), widths.end()));
        const auto replay = predict_finite(tail, full.records[start].theta);
        for (std::size_t k = 1; k <= tail.depth(); ++k) {
            REQUIRE(replay.records[k].x == doctest::Approx(full.records[start + k].x).epsilon(1e-12));
        }
    }
}

TEST_CASE("deterministic chains degenerate monotonically") {
    const std::vector<Architecture> archs{uniform(256, 30), uniform(10, 40),
                                          Architecture("ramp", 5, {5, 10, 20, 40, 80, 160})};
    for (const auto& arch : archs) {
        for (double theta0 : {0.01, 0.1, 1.0, kHalfPi}) {
            for (const auto& trace : {predict_finite(arch, theta0),
                                      predict_finite(arch, theta0, FiniteVariant::simple),
                                      predict_infinite(arch, theta0)}) {
                for (std::size_t l = 1; l < trace.records.size(); ++l) {
                    REQUIRE(trace.records[l].x < trace.records[l - 1].x);
                }
            }
        }
    }
}

TEST_CASE("permuting widths keeps the chain decreasing") {
    std::vector<int> widths{15, 200, 30, 75, 10, 120};
    std::sort(widths.begin(), widths.end());
    do {
        const auto trace = predict_finite(Architecture("perm", 10, widths), kHalfPi);
        for (std::size_t l = 1; l < trace.records.size(); ++l) {
            REQUIRE(trace.records[l].x < trace.records[l - 1].x);
        }
    } while (std::next_permutation(widths.begin(), widths.end()));
}

TEST_CASE("finite chain stays below the infinite chain for every catalog entry") {
    for (const auto& entry : builtin_catalog()) {
        const auto finite = predict_finite(entry.arch, kHalfPi);
        const auto infinite = predict_infinite(entry.arch, kHalfPi);
        for (std::size_t l = 1; l <= entry.arch.depth(); ++l) {
            REQUIRE(finite.records[l].x < infinite.records[l].x);
        }
    }
}

TEST_CASE("initial angle edge cases") {
    const auto absorbed = predict_finite(uniform(50, 4), 0.0);
    for (const auto& r : absorbed.records) {
        CHECK(is_absorbed(r.x));
        CHECK(r.theta == 0.0);
    }
    const auto antipodal = predict_finite(uniform(50, 4), kPi);
    CHECK(antipodal.records[0].theta == kPi);
    CHECK(antipodal.records[1].theta == doctest::Approx(kHalfPi).epsilon(1e-15));
    CHECK(antipodal.records[2].x ==
          doctest::Approx(finite_step_full(antipodal.records[1].x, Width{50})).epsilon(1e-14));
    CHECK_THROWS_AS(predict_finite(uniform(50, 4), 2.0), ValidationError);
    CHECK_THROWS_AS(predict_finite(uniform(50, 4), -0.1), ValidationError);
}

TEST_CASE("infinite chain depends on depth only") {
    const auto a = predict_infinite(uniform(10, 10), kHalfPi);
    const auto b = predict_infinite(Architecture("other", 3, {500, 7, 60, 2, 9, 11, 3000, 4, 5, 6}), kHalfPi);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t l = 0; l < a.records.size(); ++l) {
        CHECK(a.records[l].x == b.records[l].x);
        CHECK(a.records[l].variance == 0.0);
    }
    CHECK(a.final().x == doctest::Approx(kInfiniteDepth10).epsilon(1e-13));
    CHECK(predict_infinite(1, kHalfPi).final().theta == doctest::Approx(std::acos(1.0 / kPi)).epsilon(1e-15));
    const auto empty = predict_infinite(0, 0.7);
    CHECK(empty.records.size() == 1);
    CHECK(empty.final().theta == 0.7);
}

TEST_CASE("Gaussian chain with zero variance replays the mean chain") {
    const auto arch = uniform(64, 12);
    GaussianChainConfig cfg;
    cfg.num_samples = 5;
    cfg.seed = 3;
    cfg.zero_variance = true;
    const auto chain = sample_gaussian_chain(arch, 0.4, cfg);
    const auto mean = predict_finite(arch, 0.4);
    for (const auto& trace : chain.traces) {
        CHECK(trace.method == Method::gaussian_sample);
        for (std::size_t l = 0; l < trace.records.size(); ++l) {
            CHECK(trace.records[l].x == mean.records[l].x);
        }
    }
}

TEST_CASE("Gaussian chain is reproducible and thread independent") {
    const auto arch = uniform(32, 15);
    GaussianChainConfig cfg;
    cfg.num_samples = 500;
    cfg.seed = 99;
    cfg.threads = 1;
    const auto one = sample_gaussian_chain(arch, 0.2, cfg);
    cfg.threads = 4;
    const auto four = sample_gaussian_chain(arch, 0.2, cfg);
    const auto again = sample_gaussian_chain(arch, 0.2, cfg);
    REQUIRE(one.traces.size() == 500);
    for (std::size_t i = 0; i < one.traces.size(); ++i) {
        for (std::size_t l = 0; l < one.traces[i].records.size(); ++l) {
            REQUIRE(one.traces[i].records[l].x == four.traces[i].records[l].x);
            REQUIRE(one.traces[i].records[l].x == again.traces[i].records[l].x);
        }
    }
    CHECK(one.total_draws == 500 * 15 + one.resampled_draws);
    cfg.seed = 100;
    const auto other = sample_gaussian_chain(arch, 0.2, cfg);
    CHECK(other.traces[0].final().x != one.traces[0].final().x);
}

TEST_CASE("Gaussian chain layer-1 mean converges at the standard-error rate") {
    const auto arch = uniform(256, 1);
    const double expected = mu(0.1, Width{256});
    const double sd = std::sqrt(sigma_sq(0.1, Width{256}));
    for (std::size_t samples : {10000ul, 1000000ul}) {
        GaussianChainConfig cfg;
        cfg.num_samples = samples;
        cfg.seed = 11;
        cfg.threads = 4;
        const auto layer = gaussian_chain_layer(sample_gaussian_chain(arch, 0.1, cfg), 1);
        REQUIRE(layer.total == samples);
        const double se = sd / std::sqrt(static_cast<double>(samples));
        CHECK(std::abs(stats::mean(layer.finite_values) - expected) < 4.0 * se);
    }
}

TEST_CASE("Gaussian chain never leaves x <= 0") {
    GaussianChainConfig cfg;
    cfg.num_samples = 2000;
    cfg.seed = 5;
    const auto chain = sample_gaussian_chain(Architecture("tiny", 2, {8, 8, 8}), 0.7, cfg);
    CHECK(chain.total_draws == 3 * 2000 + chain.resampled_draws);
    for (const auto& trace : chain.traces) {
        for (const auto& r : trace.records) {
            REQUIRE(r.x <= 0.0);
        }
    }
}

TEST_CASE("predicted density normalizes and matches the one-step normal") {
    const auto arch = uniform(256, 30);
    const auto grid = linspace(-7.0, -3.0, 801);
    GaussianChainConfig cfg;
    cfg.num_samples = 100000;
    // Sup-error at this size is ~0.042 +/- 0.01 across seeds; this seed sits
    // near the median.
    cfg.seed = 8;
    cfg.threads = 4;
    const auto density = predicted_density(arch, 0.1, 1, grid, cfg);
    CHECK(stats::trapezoid(grid, density) == doctest::Approx(1.0).epsilon(0.01));
    const double m = mu(0.1, Width{256});
    const double v = sigma_sq(0.1, Width{256});
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        REQUIRE(density[i] >= 0.0);
        sup = std::max(sup, std::abs(density[i] - stats::normal_pdf(grid[i], m, v)));
    }
    CHECK(sup <= 0.05);
}

TEST_CASE("predicted density mode drifts left with depth") {
    const auto arch = uniform(256, 30);
    const auto grid = linspace(-9.0, -3.0, 1201);
    GaussianChainConfig cfg;
    cfg.num_samples = 20000;
    cfg.seed = 8;
    cfg.threads = 4;
    double previous_mode = 0.0;
    for (std::size_t layer : {1ul, 5ul, 15ul, 30ul}) {
        const auto density = predicted_density(arch, 0.1, layer, grid, cfg);
        CHECK(stats::trapezoid(grid, density) == doctest::Approx(1.0).epsilon(0.01));
        const auto peak = std::max_element(density.begin(), density.end()) - density.begin();
        const double mode = grid[static_cast<std::size_t>(peak)];
        if (layer > 1) {
            CHECK(mode < previous_mode);
        }
        previous_mode = mode;
    }
}

TEST_CASE("predicted density validates its inputs") {
    const auto arch = uniform(64, 3);
    GaussianChainConfig cfg;
    cfg.num_samples = 100;
    const std::vector<double> grid{-3.0, -2.0, -1.0};
    const std::vector<double> unsorted{-3.0, -1.0, -2.0};
    CHECK_THROWS_AS(predicted_density(arch, 0.1, 0, grid, cfg), ValidationError);
    CHECK_THROWS_AS(predicted_density(arch, 0.1, 4, grid, cfg), ValidationError);
    CHECK_THROWS_AS(predicted_density(arch, 0.1, 1, unsorted, cfg), ValidationError);
    cfg.num_samples = 0;
    CHECK_THROWS_AS(sample_gaussian_chain(arch, 0.1, cfg), ValidationError);
}
