#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qgroove {

/// Gauss-Hermite rule for integrals of exp(-t^2) f(t) over the real line,
/// via the Golub-Welsch eigenvalue method on the Jacobi matrix.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussHermiteRule(int n) {
    if (n < 1) throw std::invalid_argument("GaussHermiteRule: need n >= 1");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd off(n - 1 > 0 ? n - 1 : 0);
    for (int j = 1; j < n; ++j) off(j - 1) = std::sqrt(0.5 * j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off);
    const double sqrt_pi = 1.7724538509055160;
    nodes.resize(n);
    weights.resize(n);
    for (int j = 0; j < n; ++j) {
      nodes[j] = es.eigenvalues()(j);
      const double v0 = es.eigenvectors()(0, j);
      weights[j] = sqrt_pi * v0 * v0;
    }
  }
};

}  // namespace qgroove
