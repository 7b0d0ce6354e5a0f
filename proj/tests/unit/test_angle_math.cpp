#include <doctest.h>

#include <cmath>
#include <vector>

#include "depthdegen/angle_math.hpp"
#include "depthdegen/errors.hpp"

using namespace depthdegen;

namespace {

// Reference values evaluated independently at 40 significant digits.
constexpr double kRho3 = 5.4175443611198906;
constexpr double kRho256 = 0.0092983579374357997;
constexpr double kMu01At256 = -4.639309140136069;
constexpr double kSigmaSq01At256 = 0.030325195566160347;
constexpr double kMuHalfPiAt256 = -0.39775321904854691;
constexpr double kInfiniteHalfPi = 1.2468502198629159;
constexpr double kSimple01At256 = -4.6390236481548879;

}  // namespace

TEST_CASE("Width rejects the rho pole and nonsense sizes") {
    CHECK_THROWS_AS(Width{1}, ValidationError);
    CHECK_THROWS_AS(Width{0}, ValidationError);
    CHECK_THROWS_AS(Width{-4}, ValidationError);
    CHECK_THROWS_WITH_AS(Width{1}, doctest::Contains("pole"), ValidationError);
    CHECK(Width{2}.value() == 2);
}

TEST_CASE("rho closed-form values") {
    CHECK(rho(Width{3}) == doctest::Approx(kRho3).epsilon(1e-15));
    CHECK(rho(Width{3}) == doctest::Approx(std::log(4.0) - 30.0 / 64.0 + 18.0 / 4.0).epsilon(1e-15));
    CHECK(rho(Width{256}) == doctest::Approx(kRho256).epsilon(1e-14));
    CHECK(std::abs(rho(Width{256}) - 0.0092988) < 5e-7);
}

TEST_CASE("rho approaches 2/n") {
    for (int n : {1000, 10000, 100000}) {
        CHECK(rho(Width{n}) * n == doctest::Approx(2.0).epsilon(200.0 / (2.0 * n)));
    }
}

TEST_CASE("mu frozen value and limits") {
    CHECK(mu(0.1, Width{256}) == doctest::Approx(kMu01At256).epsilon(1e-14));
    CHECK(mu(kHalfPi, Width{256}) == doctest::Approx(kMuHalfPiAt256).epsilon(1e-13));
    CHECK(is_absorbed(mu(0.0, Width{256})));
    CHECK(mu(1e-200, Width{256}) < -900.0);
    CHECK_THROWS_AS(mu(kHalfPi + 1e-9, Width{256}), ValidationError);
    CHECK_THROWS_AS(mu(-0.1, Width{256}), ValidationError);

    const double theta = 0.3;
    const Width huge{1000000000};
    const double residual = mu(theta, huge) - to_log_sin_sq(theta) + rho(huge);
    const double limit = -(2.0 / (3.0 * kPi)) * theta - (2.0 / (9.0 * kPi * kPi)) * theta * theta;
    CHECK(residual == doctest::Approx(limit).epsilon(1e-7));
}

TEST_CASE("sigma_sq values, clamp and width monotonicity") {
    for (int n : {2, 16, 256, 4096}) {
        CHECK(sigma_sq(0.0, Width{n}) == 8.0 / n);
    }
    CHECK(sigma_sq(0.1, Width{256}) == doctest::Approx(kSigmaSq01At256).epsilon(1e-14));
    CHECK(sigma_sq(0.1, Width{256}) < 8.0 / 256.0);
    for (int n : {64, 128, 256}) {
        CHECK(sigma_sq(0.1, Width{2 * n}) < sigma_sq(0.1, Width{n}));
    }
    for (double theta = 0.0; theta <= 0.5; theta += 0.05) {
        for (int n = 16; n < 4096; ++n) {
            REQUIRE(sigma_sq(theta, Width{n + 1}) < sigma_sq(theta, Width{n}));
        }
    }
    CHECK(sigma_sq_unclamped(kHalfPi, Width{64}) < 0.0);
    CHECK(sigma_sq(kHalfPi, Width{64}) == 0.0);
    CHECK(sigma_sq_is_clamped(kHalfPi, Width{64}));
    CHECK_FALSE(sigma_sq_is_clamped(0.5, Width{64}));
}

TEST_CASE("coordinate round trip") {
    for (double theta = 1e-6; theta <= kHalfPi; theta *= 1.07) {
        const double back = angle_from_log_sin_sq(to_log_sin_sq(theta));
        REQUIRE(std::abs(back - theta) <= 1e-12 * theta);
    }
    CHECK(angle_from_log_sin_sq(to_log_sin_sq(kHalfPi)) == doctest::Approx(kHalfPi).epsilon(1e-15));
    CHECK(is_absorbed(to_log_sin_sq(0.0)));
    CHECK(is_absorbed(to_log_sin_sq(kPi)));
    CHECK(angle_from_log_sin_sq(kAbsorbed) == 0.0);
    CHECK(angle_from_log_sin_sq(-1500.0) == 0.0);
    CHECK(to_log_sin_sq(kPi - 0.2) == doctest::Approx(to_log_sin_sq(0.2)).epsilon(1e-14));
    CHECK_THROWS_AS(angle_from_log_sin_sq(1e-3), ValidationError);
    CHECK_THROWS_AS(angle_from_log_sin_sq(std::nan("")), ValidationError);
    CHECK_THROWS_AS(to_log_sin_sq(3.5), ValidationError);
}

TEST_CASE("finite steps") {
    const Width n{256};
    const double x01 = to_log_sin_sq(0.1);
    CHECK(is_absorbed(finite_step_simple(kAbsorbed, n)));
    CHECK(is_absorbed(finite_step_full(kAbsorbed, n)));
    CHECK(finite_step_simple(x01, n) == doctest::Approx(kSimple01At256).epsilon(1e-14));
    CHECK(finite_step_full(x01, n) == doctest::Approx(kMu01At256).epsilon(1e-14));
    CHECK(finite_step_full(0.0, n) == doctest::Approx(kMuHalfPiAt256).epsilon(1e-13));
    CHECK_THROWS_AS(finite_step_full(0.5, n), ValidationError);
}

TEST_CASE("simple and full steps differ by the small-angle corrections") {
    // simple - full = 8 theta / (15 pi n) + c theta^2. The linear piece is
    // a 1/n correction; what remains after removing it is second order.
    const Width n{256};
    const double c = 2.0 / (9.0 * kPi * kPi) - 68.0 / (45.0 * kPi * kPi * 256.0);
    std::vector<double> residuals;
    for (double theta : {0.2, 0.1, 0.05, 0.025}) {
        const double x = to_log_sin_sq(theta);
        const double diff = finite_step_simple(x, n) - finite_step_full(x, n);
        CHECK(diff > 0.0);
        const double residual = diff - 8.0 * theta / (15.0 * kPi * 256.0);
        CHECK(residual == doctest::Approx(c * theta * theta).epsilon(1e-8));
        residuals.push_back(residual);
    }
    for (std::size_t i = 1; i < residuals.size(); ++i) {
        CHECK(residuals[i - 1] / residuals[i] == doctest::Approx(4.0).epsilon(1e-6));
    }
}

TEST_CASE("infinite step") {
    CHECK(infinite_step(0.0) == 0.0);
    CHECK(infinite_step(kPi) == doctest::Approx(kHalfPi).epsilon(1e-15));
    CHECK(infinite_step(kHalfPi) == doctest::Approx(kInfiniteHalfPi).epsilon(1e-15));
    CHECK(infinite_step(kHalfPi) == doctest::Approx(std::acos(1.0 / kPi)).epsilon(1e-15));
    CHECK(std::abs(infinite_step(kHalfPi) - 1.24646) < 5e-4);
    for (double theta = 0.0; theta <= kPi; theta += kPi / 500.0) {
        const double next = infinite_step(theta);
        REQUIRE(next >= 0.0);
        REQUIRE(next <= kHalfPi);
    }
}

TEST_CASE("infinite step contracts and converges monotonically") {
    for (double theta = 1e-8; theta <= kHalfPi; theta *= 1.3) {
        REQUIRE(infinite_step(theta) < theta);
    }
    for (double theta0 : {0.01, 0.5, 1.0, 2.0, 3.0, kPi}) {
        double theta = infinite_step(theta0);
        // Near 0 the map is theta - theta^2 / (3 pi) + ..., so theta ~ 3 pi / l.
        for (int i = 0; i < 2000; ++i) {
            const double next = infinite_step(theta);
            REQUIRE(next < theta);
            theta = next;
        }
        CHECK(theta < 0.01);
    }
}

TEST_CASE("finite step lands below infinite step") {
    for (int n : {2, 3, 10, 64, 256, 4096, 1000000}) {
        for (double theta = 1e-4; theta <= kHalfPi; theta += 0.01) {
            const double finite = finite_step_full(to_log_sin_sq(theta), Width{n});
            const double infinite = to_log_sin_sq(infinite_step(theta));
            REQUIRE(finite < infinite);
        }
        const double finite = finite_step_full(0.0, Width{n});
        CHECK(finite < to_log_sin_sq(infinite_step(kHalfPi)));
    }
}
