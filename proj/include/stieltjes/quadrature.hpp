#pragma once

#include <vector>

namespace stieltjes {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Jacobi rule for the weight (1-t)^alpha (1+t)^beta on [-1, 1],
// by Golub-Welsch. alpha, beta > -1.
QuadratureRule gauss_jacobi(int n, double alpha, double beta);
QuadratureRule gauss_legendre(int n);

} // namespace stieltjes
