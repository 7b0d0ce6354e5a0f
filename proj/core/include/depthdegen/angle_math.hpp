#pragma once

// Closed-form scalar updates for the angle between two inputs of a ReLU
// network at initialization.
//
// Angles live either in radians (theta in [0, pi]) or in the log-sin-squared
// coordinate x = ln sin^2(theta) in [-inf, 0]. The collinear state theta = 0
// is encoded as x = -inf and is absorbing under every update in this file.
// Note that x folds theta and pi - theta together; the inverse map always
// returns theta in [0, pi/2].

#include <limits>
#include <numbers>

namespace depthdegen {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kAbsorbed = -std::numeric_limits<double>::infinity();

/// Hidden layer width. Always >= 2 since rho(n) has a pole at n = 1.
class Width {
public:
    explicit Width(long long n);

    int value() const noexcept { return n_; }
    double as_double() const noexcept { return static_cast<double>(n_); }

    friend bool operator==(Width, Width) = default;

private:
    int n_;
};

inline bool is_absorbed(double x) noexcept { return x == kAbsorbed; }

/// ln sin^2(theta) for theta in [0, pi]. Uses log1p(-cos^2) near pi/2 so
/// that tiny |x| keeps full relative precision.
double to_log_sin_sq(double theta);

/// Inverse of to_log_sin_sq on [0, pi/2]: arcsin(exp(x/2)), evaluated as
/// atan2(exp(x/2), sqrt(-expm1(x))) which stays accurate near x = 0.
double angle_from_log_sin_sq(double x);

/// Width-dependent drift constant; 2/n + O(1/n^2).
double rho(Width n);

/// Conditional mean of ln sin^2 of the next-layer angle, truncated after
/// the theta^2 term. theta in [0, pi/2]; theta = 0 gives kAbsorbed.
double mu(double theta, Width n);

/// Conditional variance of ln sin^2 of the next-layer angle, truncated
/// after the theta^2 term. Can be negative for theta above ~0.83.
double sigma_sq_unclamped(double theta, Width n);

/// sigma_sq_unclamped clamped below at 0.
double sigma_sq(double theta, Width n);

/// True when sigma_sq had to clamp a negative truncated value.
bool sigma_sq_is_clamped(double theta, Width n);

/// Linear small-angle update: x - (2/3pi) theta - rho(n).
double finite_step_simple(double x, Width n);

/// One step of the finite-width mean recursion: mu(theta(x), n).
double finite_step_full(double x, Width n);

/// Law-of-large-numbers angle map, cos theta' = (sin t + (pi - t) cos t) / pi.
/// Result lies in [0, pi/2].
double infinite_step(double theta);

}  // namespace depthdegen
