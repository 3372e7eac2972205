#pragma once

#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Core>

#include "bergman/regions.hpp"

namespace bergman {

using ComplexPoint = std::complex<double>;

/// Eigenvalues below this are reported as 0; such indices are never drawn.
inline constexpr double kEigenvalueFloor = 1e-300;

/// Bergman kernel (1/pi) (1 - x conj(y))^{-2} on the open unit disc.
std::complex<double> bergman_kernel(ComplexPoint x, ComplexPoint y);

enum class SpectrumKind { bergman_disc, bergman_annulus, bergman_region, ginibre_disc };

/// Mercer decomposition of a restricted kernel. Immutable; every Bergman kind
/// is backed by a RadialRegion (a disc is [0, R], an annulus [r, R]).
class RestrictedSpectrum {
 public:
  static RestrictedSpectrum disc(double radius);
  static RestrictedSpectrum annulus(double inner, double outer);
  static RestrictedSpectrum region(RadialRegion region, std::string label = {});
  static RestrictedSpectrum ginibre(double radius);

  SpectrumKind kind() const { return kind_; }
  bool is_bergman() const { return kind_ != SpectrumKind::ginibre_disc; }
  /// Outer radius R (sup of the region for Bergman kinds).
  double radius() const { return radius_; }
  /// Only meaningful for Bergman kinds.
  const RadialRegion& support() const { return region_; }
  /// Literal in the CLI region grammar.
  const std::string& label() const { return label_; }

  bool contains(ComplexPoint x, double tolerance = 1e-12) const;

 private:
  RestrictedSpectrum() = default;
  SpectrumKind kind_ = SpectrumKind::bergman_disc;
  double radius_ = 0.0;
  RadialRegion region_;
  std::string label_;
};

/// Ginibre eigenvalue P(n + 1, R^2).
double ginibre_eigenvalue(double radius, std::size_t n);

/// lambda_n; values below kEigenvalueFloor are clamped to 0.
double eigenvalue(const RestrictedSpectrum& spectrum, std::size_t n);
/// log lambda_n, finite even where eigenvalue() clamps.
double log_eigenvalue(const RestrictedSpectrum& spectrum, std::size_t n);
bool eigenvalue_underflows(const RestrictedSpectrum& spectrum, std::size_t n);

/// First N eigenvalues.
Eigen::VectorXd eigenvalues(const RestrictedSpectrum& spectrum, std::size_t count);

/// log c_n such that phi_n(x) = c_n (x / R)^n with R the outer radius.
double eigenfunction_log_scale(const RestrictedSpectrum& spectrum, std::size_t n);

/// Normalized monomial phi_n(x) = x^n / sqrt(pi lambda_n / (n + 1)).
/// Throws std::domain_error when x lies outside the region.
std::complex<double> eigenfunction(const RestrictedSpectrum& spectrum, std::size_t n,
                                   ComplexPoint x);

/// sum_{n<N} lambda_n phi_n(x) conj(phi_n(y)).
std::complex<double> truncated_kernel(const RestrictedSpectrum& spectrum, std::size_t truncation,
                                      ComplexPoint x, ComplexPoint y);

/// Closed form for Bergman kinds; certified partial sum for Ginibre.
double trace(const RestrictedSpectrum& spectrum, double tolerance = 1e-10);

/// sum_{n >= N} lambda_n: mass discarded by truncating to N eigenvalues.
double truncation_tail(const RestrictedSpectrum& spectrum, std::size_t truncation,
                       double tolerance = 1e-12);

}  // namespace bergman
