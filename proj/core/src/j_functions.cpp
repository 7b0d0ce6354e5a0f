#include "depthdegen/j_functions.hpp"

#include <cmath>
#include <string>

#include "depthdegen/angle_math.hpp"
#include "depthdegen/errors.hpp"
#include "depthdegen/quadrature.hpp"

namespace depthdegen {
namespace {

constexpr std::size_t kAngularOrder = 64;

const QuadratureRule& angular_rule() {
    static const QuadratureRule rule = gauss_legendre(kAngularOrder);
    return rule;
}

void validate(const JQuery& q) {
    if (q.a < 0 || q.b < 0 || q.a + q.b > kMaxJOrder) {
        throw ValidationError("J exponents (" + std::to_string(q.a) + ", " + std::to_string(q.b) +
                              ") outside the budget a, b >= 0, a + b <= " +
                              std::to_string(kMaxJOrder));
    }
    if (!(q.theta >= 0.0 && q.theta <= kPi)) {
        throw ValidationError("J angle " + std::to_string(q.theta) + " outside [0, pi]");
    }
}

// int_0^inf r^{k+1} exp(-r^2/2) dr
double radial_moment(int k) {
    const double half_k = 0.5 * static_cast<double>(k);
    return std::pow(2.0, half_k) * std::tgamma(half_k + 1.0);
}

}  // namespace

double relu_moment(int k) {
    if (k < 0) {
        throw ValidationError("negative moment order");
    }
    if (k == 0) {
        return 1.0;
    }
    const double kk = static_cast<double>(k);
    return std::pow(2.0, 0.5 * kk) * std::tgamma(0.5 * (kk + 1.0)) / (2.0 * std::sqrt(kPi));
}

double j_numeric(const JQuery& q) {
    validate(q);
    if (q.a == 0) {
        return relu_moment(q.b);
    }
    if (q.b == 0) {
        return relu_moment(q.a);
    }
    const double lo = q.theta - kHalfPi;
    const double hi = kHalfPi;
    if (!(hi > lo)) {
        return 0.0;
    }
    const auto& rule = angular_rule();
    const double half_len = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double angular = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double psi = mid + half_len * rule.nodes[i];
        const double c1 = std::cos(psi);
        const double c2 = std::cos(psi - q.theta);
        angular += rule.weights[i] * std::pow(c1, q.a) * std::pow(c2, q.b);
    }
    angular *= half_len;
    return radial_moment(q.a + q.b) * angular / (2.0 * kPi);
}

double j11_closed(double theta) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw ValidationError("J angle " + std::to_string(theta) + " outside [0, pi]");
    }
    return (std::sin(theta) + (kPi - theta) * std::cos(theta)) / (2.0 * kPi);
}

}  // namespace depthdegen
