#include "depthdegen/angle_math.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "depthdegen/errors.hpp"

namespace depthdegen {
namespace {

constexpr double kTwoOverThreePi = 2.0 / (3.0 * kPi);

void require_angle_range(double theta, double hi, const char* what) {
    if (!(theta >= 0.0 && theta <= hi)) {
        throw ValidationError(std::string(what) + ": angle " + std::to_string(theta) +
                              " outside [0, " + std::to_string(hi) + "]");
    }
}

void require_log_sin_sq(double x, const char* what) {
    if (std::isnan(x) || x > 0.0) {
        throw ValidationError(std::string(what) + ": ln sin^2 value " + std::to_string(x) +
                              " must be <= 0");
    }
}

// mu written in terms of both coordinates so the ln sin^2 term is not
// recomputed from a rounded angle.
double mu_terms(double x, double theta, Width n) {
    const double nn = n.as_double();
    const double theta_sq_coeff = 2.0 / (9.0 * kPi * kPi) - 68.0 / (45.0 * kPi * kPi * nn);
    return x - kTwoOverThreePi * theta - rho(n) - 8.0 * theta / (15.0 * kPi * nn) -
           theta_sq_coeff * theta * theta;
}

// theta cos(theta) - sin(theta) without cancellation for small theta.
double theta_cos_minus_sin(double theta) {
    if (theta >= 0.5) {
        return theta * std::cos(theta) - std::sin(theta);
    }
    // sum_{k>=1} (-1)^k 2k theta^{2k+1} / (2k+1)!
    const double t2 = theta * theta;
    double power = theta;  // theta^{2k+1} / (2k+1)!
    double sum = 0.0;
    for (int k = 1; k <= 12; ++k) {
        power *= t2 / ((2.0 * k) * (2.0 * k + 1.0));
        const double term = 2.0 * k * power;
        sum += (k % 2 == 1) ? -term : term;
    }
    return sum;
}

}  // namespace

Width::Width(long long n) : n_(0) {
    if (n < 2) {
        throw ValidationError("width " + std::to_string(n) +
                              " is below 2 (rho(n) has a pole at n = 1)");
    }
    if (n > 1'000'000'000LL) {
        throw ValidationError("width " + std::to_string(n) + " is unreasonably large");
    }
    n_ = static_cast<int>(n);
}

double to_log_sin_sq(double theta) {
    require_angle_range(theta, kPi, "to_log_sin_sq");
    if (theta == 0.0 || theta == kPi) {
        return kAbsorbed;
    }
    const double s = std::sin(theta);
    if (s * s < 0.5) {
        return 2.0 * std::log(s);
    }
    const double c = std::cos(theta);
    return std::log1p(-c * c);
}

double angle_from_log_sin_sq(double x) {
    require_log_sin_sq(x, "angle_from_log_sin_sq");
    if (is_absorbed(x)) {
        return 0.0;
    }
    return std::atan2(std::exp(0.5 * x), std::sqrt(-std::expm1(x)));
}

double rho(Width n) {
    const double nn = n.as_double();
    const double a = nn + 5.0;
    const double b = nn - 1.0;
    return std::log(a / b) - 10.0 * nn / (a * a) + 6.0 * nn / (b * b);
}

double mu(double theta, Width n) {
    require_angle_range(theta, kHalfPi, "mu");
    if (theta == 0.0) {
        return kAbsorbed;
    }
    return mu_terms(to_log_sin_sq(theta), theta, n);
}

double sigma_sq_unclamped(double theta, Width n) {
    require_angle_range(theta, kHalfPi, "sigma_sq");
    const double nn = n.as_double();
    return 8.0 / nn - (64.0 / (15.0 * kPi)) * theta / nn -
           (8.0 + 296.0 / (45.0 * kPi)) * theta * theta / nn;
}

double sigma_sq(double theta, Width n) {
    return std::max(0.0, sigma_sq_unclamped(theta, n));
}

bool sigma_sq_is_clamped(double theta, Width n) {
    return sigma_sq_unclamped(theta, n) < 0.0;
}

double finite_step_simple(double x, Width n) {
    require_log_sin_sq(x, "finite_step_simple");
    if (is_absorbed(x)) {
        return kAbsorbed;
    }
    return x - kTwoOverThreePi * angle_from_log_sin_sq(x) - rho(n);
}

double finite_step_full(double x, Width n) {
    require_log_sin_sq(x, "finite_step_full");
    if (is_absorbed(x)) {
        return kAbsorbed;
    }
    const double theta = angle_from_log_sin_sq(x);
    if (theta == 0.0) {
        return kAbsorbed;
    }
    return mu_terms(x, theta, n);
}

double infinite_step(double theta) {
    require_angle_range(theta, kPi, "infinite_step");
    if (theta == 0.0) {
        return 0.0;
    }
    // 1 - cos(theta') = (pi (1 - cos t) + t cos t - sin t) / pi
    const double half_sin = std::sin(0.5 * theta);
    const double one_minus_cos =
        (kPi * 2.0 * half_sin * half_sin + theta_cos_minus_sin(theta)) / kPi;
    const double clamped = std::clamp(one_minus_cos, 0.0, 1.0);
    const double next = 2.0 * std::asin(std::sqrt(0.5 * clamped));
    return std::min(next, kHalfPi);
}

}  // namespace depthdegen
