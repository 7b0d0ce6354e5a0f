#pragma once

#include <cstddef>
#include <vector>

namespace depthdegen {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_n.
QuadratureRule gauss_legendre(std::size_t order);

}  // namespace depthdegen
