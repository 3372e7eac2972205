#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace bergman {

/// Growing orthonormal set {e_1, ..., e_k} in C^d (or R^d), stored as the
/// leading columns of a d x d matrix.
///
/// New vectors are orthogonalized by modified Gram-Schmidt followed by one
/// full re-orthogonalization pass. Nearly parallel inputs otherwise leave the
/// basis visibly non-orthogonal after a few dozen steps.
template <typename Scalar>
class OrthonormalBasis {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Real = typename Eigen::NumTraits<Scalar>::Real;

  explicit OrthonormalBasis(Eigen::Index dimension)
      : basis_(Matrix::Zero(dimension, dimension)) {}

  Eigen::Index dimension() const { return basis_.rows(); }
  Eigen::Index size() const { return size_; }
  auto vectors() const { return basis_.leftCols(size_); }

  /// ||v||^2 - sum_k |<e_k, v>|^2, clamped at 0.
  template <typename Derived>
  Real residual_norm2(const Eigen::MatrixBase<Derived>& v) const {
    const Real total = v.squaredNorm();
    if (size_ == 0) return total;
    const Real projected = (vectors().adjoint() * v).squaredNorm();
    return total > projected ? total - projected : Real(0);
  }

  /// Appends the normalized component of v orthogonal to the current span.
  /// Throws std::runtime_error when that component has norm below min_norm.
  template <typename Derived>
  void append(const Eigen::MatrixBase<Derived>& v, Real min_norm = Real(1e-12)) {
    if (size_ == dimension()) throw std::runtime_error("gram-schmidt: basis is already complete");
    Vector u = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < size_; ++k) {
        const Scalar c = basis_.col(k).dot(u);  // conj(e_k)^T u
        u -= c * basis_.col(k);
      }
    }
    const Real norm = u.norm();
    if (!(norm >= min_norm)) {
      throw std::runtime_error("gram-schmidt: residual norm " + std::to_string(double(norm)) +
                               " below threshold; the new point nearly duplicates earlier ones");
    }
    basis_.col(size_++) = u / norm;
  }

 private:
  Matrix basis_;
  Eigen::Index size_ = 0;
};

}  // namespace bergman
