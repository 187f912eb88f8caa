#include "stieltjes/quadrature.hpp"

#include "stieltjes/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace stieltjes {

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) fail("DomainError", "quadrature needs at least one node");
    if (alpha <= -1 || beta <= -1) fail("DomainError", "Jacobi exponents must exceed -1");
    const double ab = alpha + beta;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 1));
    diag(0) = (beta - alpha) / (ab + 2);
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        double b;
        if (k == 1) b = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) * (2 + ab) * (3 + ab));
        else b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1) * (s - 1));
        sub(k - 1) = std::sqrt(b);
    }
    QuadratureRule rule;
    const double mu0 = std::exp((ab + 1) * std::log(2.0) + std::lgamma(alpha + 1) + std::lgamma(beta + 1) - std::lgamma(ab + 2));
    if (n == 1) {
        rule.nodes = {diag(0)};
        rule.weights = {mu0};
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) fail("QuadratureFail", "Jacobi matrix eigenproblem failed");
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        const double v = solver.eigenvectors()(0, i);
        rule.weights[static_cast<std::size_t>(i)] = mu0 * v * v;
    }
    return rule;
}

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0, 0); }

} // namespace stieltjes
