#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bergman/bounds.hpp"
#include "bergman/sampler.hpp"
#include "bergman/spectral.hpp"
#include "bergman/statistics.hpp"

namespace bergman {

inline constexpr double kSignificance = 1e-3;

/// Exact law of S = sum_n B_n with B_n ~ Bernoulli(lambda_n) independent.
struct CountDistribution {
  std::vector<double> pmf;  // pmf[k] = P(S = k)

  double mean() const;
  double variance() const;
  double cdf(std::size_t k) const;
  /// P(S <= x) for real x.
  double cdf_at(double x) const;
  /// P(S >= x) for real x.
  double upper_tail_at(double x) const;
};

/// Poisson-binomial pmf by sequential convolution; trailing entries that
/// underflow to exactly zero are dropped.
CountDistribution count_pmf(std::span<const double> eigenvalues);
CountDistribution count_pmf(const Eigen::VectorXd& eigenvalues);

/// Smallest k with CDF(k) >= p, for each p.
std::vector<std::size_t> count_quantiles(const CountDistribution& dist, std::span<const double> probs);

struct GofReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::size_t sample_size = 0;
  bool passed = false;
};

inline GofReport make_gof(std::string name, double statistic, double threshold, std::size_t n) {
  return {std::move(name), statistic, threshold, n, statistic <= threshold};
}

struct CountStats {
  double mean = 0.0;
  double variance = 0.0;
  double standard_error = 0.0;
  std::vector<std::size_t> histogram;  // histogram[k] = replicas with k points
  std::size_t reps = 0;
};

enum class CountSource { bernoulli_phase, full_sample };

/// Monte Carlo point-count statistics over `reps` independent replicas.
/// Replicas are spread over `threads` workers; results do not depend on it.
CountStats mc_count_stats(const RestrictedSpectrum& spectrum, const SamplerConfig& config,
                          std::size_t reps, CountSource source = CountSource::bernoulli_phase,
                          unsigned threads = 0);

/// Pearson chi-square of a count histogram against an exact pmf. Cells with
/// expected count below 5 are merged into their neighbours.
GofReport chi_square_count_test(std::span<const std::size_t> histogram,
                                const CountDistribution& dist, double alpha = kSignificance);

struct RadialBin {
  double inner = 0.0;
  double outer = 0.0;
};

/// Expected points with modulus in [r1, r2] at truncation N:
/// sum_{n<N} (r2^{2n+2} - r1^{2n+2}), independent of the region containing the bin.
double truncated_bin_expectation(const RadialBin& bin, std::size_t truncation);
/// Untruncated limit 1/(1 - r2^2) - 1/(1 - r1^2).
double untruncated_bin_expectation(const RadialBin& bin);

struct IntensityBinRow {
  RadialBin bin;
  double empirical_mean = 0.0;
  double expected = 0.0;
  double untruncated = 0.0;
  double standard_error = 0.0;
};

struct IntensityReport {
  GofReport gof;
  std::vector<IntensityBinRow> rows;
};

/// Compares per-bin mean counts with their truncated expectations through the
/// Hotelling statistic reps (m - E)^T S^{-1} (m - E) with the empirical
/// covariance S, referred to chi-square with one degree of freedom per bin.
IntensityReport intensity_profile_test(std::span<const PointConfiguration> configs,
                                       const RestrictedSpectrum& spectrum,
                                       std::span<const RadialBin> bins,
                                       double alpha = kSignificance);

/// Gram matrix int_{Z(A)} phi_n conj(phi_m) for n, m < count by product
/// quadrature: Gauss-Legendre in the radius, trapezoid in the angle.
Eigen::MatrixXcd orthonormality_gram(const RestrictedSpectrum& spectrum, std::size_t count,
                                     int radial_nodes = 48, int angular_nodes = 64);

/// sum_n lambda_n summed per interval in the order of the index n, by
/// doubling blocks: sum_{n<2M} x^{n+1} = (1 + x^M) sum_{n<M} x^{n+1}.
double eigenvalue_series_sum(const RadialRegion& region);

/// sum_{n < max_terms} eigenvalue(spectrum, n), stopped once terms fall below tolerance.
double direct_eigenvalue_sum(const RestrictedSpectrum& spectrum, double tolerance,
                             std::size_t max_terms);

struct ChernoffCheck {
  double c = 0.0;
  double lower_exact = 0.0;  // P(S <= (1 - c) m)
  double lower_bound = 1.0;
  double upper_exact = 0.0;  // P(S >= (1 + c) m)
  double upper_bound = 1.0;
  bool holds() const { return lower_exact <= lower_bound && upper_exact <= upper_bound; }
};

std::vector<ChernoffCheck> chernoff_audit(const CountDistribution& dist, std::span<const double> cs);

struct AuditRow {
  BoundReport report;
  double truncated_mean = 0.0;
  std::vector<ChernoffCheck> chernoff;
  bool passed = false;
};

inline const std::vector<double> kAuditRadii = {0.5, 0.7, 0.9, 0.99};
inline const std::vector<double> kAuditBetas = {1.0, 2.0, 3.0, 5.0};
inline const std::vector<double> kChernoffGrid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

/// Dominance chain and Chernoff-versus-exact checks on a (R, beta) grid.
std::vector<AuditRow> bound_audit(std::span<const double> radii, std::span<const double> betas);

}  // namespace bergman
