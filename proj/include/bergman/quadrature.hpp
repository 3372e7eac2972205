#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace bergman {

/// Gauss-Legendre nodes and weights on [a, b] via the Golub-Welsch eigenproblem.
template <typename Scalar = double>
std::pair<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>
gauss_legendre(int n, Scalar a, Scalar b) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  Matrix jacobi = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const Scalar beta = Scalar(k) / std::sqrt(Scalar(4 * k * k - 1));
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  const Scalar half = (b - a) / Scalar(2);
  const Scalar mid = (b + a) / Scalar(2);
  Vector nodes = (solver.eigenvalues().array() * half + mid).matrix();
  Vector weights = (Scalar(2) * solver.eigenvectors().row(0).transpose().array().square() * half).matrix();
  return {std::move(nodes), std::move(weights)};
}

}  // namespace bergman
