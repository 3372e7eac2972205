#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "bergman/rng.hpp"
#include "bergman/spectral.hpp"

namespace bergman {

struct FixedTruncation {
  std::size_t count = 1;
};
/// N = ceil(beta * trace).
struct ProportionalTruncation {
  double beta = 5.0;
};
using Truncation = std::variant<FixedTruncation, ProportionalTruncation>;

struct SamplerConfig {
  Truncation truncation = ProportionalTruncation{};
  std::uint64_t seed = 0;
  std::uint64_t max_rejections = 10'000'000;
};

/// Indices n < N whose Bernoulli(lambda_n) variable fired; sorted, distinct.
struct ActiveIndexSet {
  std::vector<std::size_t> indices;
  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

struct SampleMeta {
  std::string region;
  std::size_t truncation = 0;
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  std::vector<std::size_t> active;
  std::vector<std::uint64_t> rejections;  // per point
  std::uint64_t total_proposals = 0;
  std::uint64_t envelope_violations = 0;

  double acceptance_rate() const {
    return total_proposals == 0 ? 1.0 : double(active.size()) / double(total_proposals);
  }
  bool operator==(const SampleMeta&) const = default;
};

struct PointConfiguration {
  std::vector<ComplexPoint> points;
  SampleMeta meta;
  bool operator==(const PointConfiguration&) const = default;
};

/// ceil(beta * trace(spectrum)), at least 1.
std::size_t default_truncation(const RestrictedSpectrum& spectrum, double beta);
std::size_t resolve_truncation(const RestrictedSpectrum& spectrum, const SamplerConfig& config);

ActiveIndexSet bernoulli_phase(std::span<const double> eigenvalues, RandomStream& rng);
ActiveIndexSet bernoulli_phase(const RestrictedSpectrum& spectrum, std::size_t truncation,
                               RandomStream& rng);

/// Feature map x -> (phi_i(x))_{i in I} for a fixed active set.
class FeatureMap {
 public:
  FeatureMap(const RestrictedSpectrum& spectrum, std::vector<std::size_t> indices);

  Eigen::VectorXcd operator()(ComplexPoint x) const;
  /// sup over the region of ||phi_I(x)||^2, attained on the outer circle.
  double sup_norm2() const { return sup_norm2_; }
  std::size_t size() const { return indices_.size(); }

 private:
  std::vector<std::size_t> indices_;
  Eigen::VectorXd scales_;
  double radius_;
  double sup_norm2_ = 0.0;
};

/// Positions of the points given the active set: sequential residual-density
/// draws by rejection from the uniform law on the region, with Gram-Schmidt
/// updates of the explored directions.
PointConfiguration hkpv_sample(const RestrictedSpectrum& spectrum, const ActiveIndexSet& active,
                               RandomStream& rng,
                               std::uint64_t max_rejections = 10'000'000);

/// Bernoulli phase followed by hkpv_sample; deterministic in (spectrum, config, replica).
PointConfiguration sample(const RestrictedSpectrum& spectrum, const SamplerConfig& config,
                          std::uint64_t replica = 0);

/// Uniform point on the region: interval chosen by area, then radius and angle.
ComplexPoint uniform_point(const RadialRegion& region, RandomStream& rng);

/// {U_k^{1/(2k)} : k = 1..n}: first n moduli of the unrestricted process.
std::vector<double> moduli_sample(std::size_t count, RandomStream& rng);

/// P(min_{k<=n} U_k^{1/(2k)} <= x) = 1 - prod_{k=1}^n (1 - x^{2k}).
double min_radius_cdf(std::size_t count, double x);

struct QuantileRow {
  std::size_t order = 0;  // j-th smallest modulus
  double probability = 0.0;
  double sampled = 0.0;
  double literal = 0.0;
  double capped = 0.0;
  std::size_t support = 0;  // replicas with at least `order` points
};

/// Side-by-side comparison of sampled restricted moduli with two readings of
/// the conjectured product law. Exploratory; carries no verdict.
struct ConjectureReport {
  double radius = 0.0;
  std::size_t reps = 0;
  std::size_t nonempty = 0;
  double ks_min_literal = 0.0;  // U_k ~ Unif[0, R], modulus U_k^{1/(2k)}
  double ks_min_capped = 0.0;   // modulus R V_k^{1/(2k)}, V_k ~ Unif[0, 1]
  std::vector<QuantileRow> quantiles;
};

ConjectureReport conjecture_experiment(double radius, const SamplerConfig& config,
                                       std::size_t reps);

}  // namespace bergman
