#include "tricomi/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "tricomi/errors.hpp"

namespace tricomi::quad {

Rule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1 || alpha <= -1.0 || beta <= -1.0) throw DomainError("bad Gauss-Jacobi parameters");
    const double ab = alpha + beta;
    Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            diag(k) = (beta - alpha) / (ab + 2.0);
        } else {
            const double s = 2.0 * k + ab;
            diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
        }
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        const double b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        off(k - 1) = std::sqrt(b);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericalFailure("Golub-Welsch eigensolve failed");
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                                std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        r.weights[i] = mu0 * v * v;
    }
    return r;
}

Rule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

Rule mapped(const Rule& r, double a, double b) {
    Rule out = r;
    const double h = 0.5 * (b - a), c = 0.5 * (b + a);
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        out.nodes[i] = c + h * r.nodes[i];
        out.weights[i] = h * r.weights[i];
    }
    return out;
}

}  // namespace tricomi::quad
