#pragma once
#include <vector>

namespace tricomi::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point rule on [-1,1] for the weight (1-x)^alpha (1+x)^beta (Golub-Welsch).
Rule gauss_jacobi(int n, double alpha, double beta);
Rule gauss_legendre(int n);

// Affine map of a [-1,1] rule onto [a,b] with the weight left unscaled except for the Jacobian.
Rule mapped(const Rule& r, double a, double b);

}  // namespace tricomi::quad
