#pragma once

// Joint moments of rectified correlated Gaussians,
//
//   J_{a,b}(theta) = E[relu(G)^a relu(G')^b],   G, G' ~ N(0, 1), corr cos(theta).
//
// J_{1,1} drives the infinite-width angle map (cos theta' = 2 J_{1,1}(theta));
// higher orders enter the 1/n corrections.

namespace depthdegen {

inline constexpr int kMaxJOrder = 8;

struct JQuery {
    int a = 1;
    int b = 1;
    double theta = 0.0;  // radians, [0, pi]
};

/// Numerical J_{a,b}(theta) for a + b <= kMaxJOrder.
///
/// Writes the pair as G = r cos(psi), G' = r cos(psi - theta) over the
/// whitened plane. Both rectifiers are active on the wedge
/// psi in (theta - pi/2, pi/2), so the integral factors into a closed-form
/// half-range Gaussian moment in r and a smooth trigonometric integral in
/// psi, done with 64-point Gauss-Legendre. Absolute error is at roundoff.
double j_numeric(const JQuery& q);

/// E[relu(G)^k] = 2^{k/2} Gamma((k + 1) / 2) / (2 sqrt(pi)); 1 for k = 0.
double relu_moment(int k);

/// Closed form (sin t + (pi - t) cos t) / (2 pi).
double j11_closed(double theta);

}  // namespace depthdegen
