#include "bergman/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bergman/gram_schmidt.hpp"
#include "bergman/statistics.hpp"

namespace bergman {

std::size_t default_truncation(const RestrictedSpectrum& spectrum, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("default_truncation: beta must be positive");
  }
  const double n = std::ceil(beta * trace(spectrum));
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

std::size_t resolve_truncation(const RestrictedSpectrum& spectrum, const SamplerConfig& config) {
  if (const auto* fixed = std::get_if<FixedTruncation>(&config.truncation)) {
    if (fixed->count == 0) throw std::invalid_argument("sampler: truncation N must be >= 1");
    return fixed->count;
  }
  return default_truncation(spectrum, std::get<ProportionalTruncation>(config.truncation).beta);
}

ActiveIndexSet bernoulli_phase(std::span<const double> eigenvalues, RandomStream& rng) {
  ActiveIndexSet active;
  for (std::size_t n = 0; n < eigenvalues.size(); ++n) {
    const double lambda = eigenvalues[n];
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw std::domain_error("bernoulli_phase: eigenvalues must lie in [0, 1]");
    }
    if (rng.uniform() < lambda) active.indices.push_back(n);
  }
  return active;
}

ActiveIndexSet bernoulli_phase(const RestrictedSpectrum& spectrum, std::size_t truncation,
                               RandomStream& rng) {
  if (truncation == 0) throw std::invalid_argument("bernoulli_phase: truncation must be >= 1");
  const Eigen::VectorXd lambda = eigenvalues(spectrum, truncation);
  return bernoulli_phase(std::span<const double>(lambda.data(), truncation), rng);
}

FeatureMap::FeatureMap(const RestrictedSpectrum& spectrum, std::vector<std::size_t> indices)
    : indices_(std::move(indices)), radius_(spectrum.radius()) {
  if (!std::is_sorted(indices_.begin(), indices_.end()) ||
      std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw std::invalid_argument("feature map: active indices must be sorted and distinct");
  }
  scales_.resize(static_cast<Eigen::Index>(indices_.size()));
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    scales_[static_cast<Eigen::Index>(i)] =
        std::exp(eigenfunction_log_scale(spectrum, indices_[i]));
  }
  sup_norm2_ = scales_.squaredNorm();
}

Eigen::VectorXcd FeatureMap::operator()(ComplexPoint x) const {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(indices_.size()));
  const std::complex<double> z = x / radius_;
  std::complex<double> power = 1.0;
  std::size_t degree = 0;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    for (; degree < indices_[i]; ++degree) power *= z;
    out[static_cast<Eigen::Index>(i)] = scales_[static_cast<Eigen::Index>(i)] * power;
  }
  return out;
}

ComplexPoint uniform_point(const RadialRegion& region, RandomStream& rng) {
  const auto& ivs = region.intervals();
  double total = 0.0;
  for (const auto& iv : ivs) total += iv.width;
  double pick = rng.uniform() * total;
  std::size_t j = 0;
  for (; j + 1 < ivs.size() && pick >= ivs[j].width; ++j) pick -= ivs[j].width;
  const Interval& iv = ivs[j];
  const double r2 = (1.0 - iv.inner_gap) + rng.uniform() * iv.width;
  const double r = std::clamp(std::sqrt(r2), iv.inner, iv.outer);
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  return std::polar(r, angle);
}

PointConfiguration hkpv_sample(const RestrictedSpectrum& spectrum, const ActiveIndexSet& active,
                               RandomStream& rng, std::uint64_t max_rejections) {
  if (!spectrum.is_bergman()) {
    throw std::domain_error("hkpv_sample: positional sampling needs a Bergman spectrum");
  }
  PointConfiguration config;
  config.meta.region = spectrum.label();
  config.meta.active = active.indices;
  if (active.empty()) return config;

  const FeatureMap features(spectrum, active.indices);
  const double envelope = features.sup_norm2();
  const auto k = static_cast<Eigen::Index>(active.size());
  OrthonormalBasis<std::complex<double>> basis(k);
  config.points.reserve(active.size());

  for (Eigen::Index i = 0; i < k; ++i) {
    std::uint64_t proposals = 0;
    for (;;) {
      if (proposals == max_rejections) {
        throw std::runtime_error("hkpv_sample: rejection budget of " +
                                 std::to_string(max_rejections) + " exhausted at point " +
                                 std::to_string(i + 1) + " of " + std::to_string(k));
      }
      ++proposals;
      const ComplexPoint x = uniform_point(spectrum.support(), rng);
      const Eigen::VectorXcd v = features(x);
      const double residual = basis.residual_norm2(v);
      if (residual > envelope * (1.0 + 1e-9)) ++config.meta.envelope_violations;
      if (rng.uniform() * envelope < residual) {
        basis.append(v);
        config.points.push_back(x);
        break;
      }
    }
    config.meta.rejections.push_back(proposals - 1);
    config.meta.total_proposals += proposals;
  }
  return config;
}

PointConfiguration sample(const RestrictedSpectrum& spectrum, const SamplerConfig& config,
                          std::uint64_t replica) {
  const std::size_t truncation = resolve_truncation(spectrum, config);
  RandomStream bernoulli(config.seed, replica, StreamPhase::bernoulli);
  RandomStream positions(config.seed, replica, StreamPhase::positions);
  const ActiveIndexSet active = bernoulli_phase(spectrum, truncation, bernoulli);
  PointConfiguration out = hkpv_sample(spectrum, active, positions, config.max_rejections);
  out.meta.truncation = truncation;
  out.meta.seed = config.seed;
  out.meta.replica = replica;
  return out;
}

std::vector<double> moduli_sample(std::size_t count, RandomStream& rng) {
  if (count == 0) throw std::invalid_argument("moduli_sample: count must be >= 1");
  std::vector<double> moduli(count);
  for (std::size_t k = 1; k <= count; ++k) {
    moduli[k - 1] = std::pow(rng.uniform(), 1.0 / (2.0 * static_cast<double>(k)));
  }
  return moduli;
}

double min_radius_cdf(std::size_t count, double x) {
  if (count == 0) throw std::invalid_argument("min_radius_cdf: count must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("min_radius_cdf: x must lie in [0, 1]");
  // 1 - prod (1 - t_k) = sum_k t_k prod_{j<k} (1 - t_j): positive terms only.
  const double x2 = x * x;
  double t = 1.0;
  double survival = 1.0;
  double sum = 0.0;
  for (std::size_t k = 1; k <= count; ++k) {
    t *= x2;
    sum += t * survival;
    survival *= 1.0 - t;
    if (survival == 0.0 || t == 0.0) break;
  }
  return std::min(sum, 1.0);
}

ConjectureReport conjecture_experiment(double radius, const SamplerConfig& config,
                                       std::size_t reps) {
  if (reps == 0) throw std::invalid_argument("conjecture_experiment: reps must be >= 1");
  const RestrictedSpectrum spectrum = RestrictedSpectrum::disc(radius);
  constexpr std::size_t kOrders = 5;
  std::vector<double> min_sampled, min_literal, min_capped;
  std::vector<std::vector<double>> ord_sampled(kOrders), ord_literal(kOrders), ord_capped(kOrders);

  for (std::size_t r = 0; r < reps; ++r) {
    const PointConfiguration pc = sample(spectrum, config, r);
    if (pc.points.empty()) continue;
    RandomStream rng(config.seed, r, StreamPhase::conjecture);
    std::vector<double> sampled, literal, capped;
    for (const auto& p : pc.points) sampled.push_back(std::abs(p));
    for (std::size_t n : pc.meta.active) {
      const double exponent = 1.0 / (2.0 * static_cast<double>(n + 1));
      literal.push_back(std::pow(radius * rng.uniform(), exponent));
      capped.push_back(radius * std::pow(rng.uniform(), exponent));
    }
    std::sort(sampled.begin(), sampled.end());
    std::sort(literal.begin(), literal.end());
    std::sort(capped.begin(), capped.end());
    min_sampled.push_back(sampled.front());
    min_literal.push_back(literal.front());
    min_capped.push_back(capped.front());
    for (std::size_t j = 0; j < std::min(kOrders, sampled.size()); ++j) {
      ord_sampled[j].push_back(sampled[j]);
      ord_literal[j].push_back(literal[j]);
      ord_capped[j].push_back(capped[j]);
    }
  }

  ConjectureReport report;
  report.radius = radius;
  report.reps = reps;
  report.nonempty = min_sampled.size();
  if (min_sampled.empty()) return report;
  report.ks_min_literal = two_sample_ks(min_sampled, min_literal);
  report.ks_min_capped = two_sample_ks(min_sampled, min_capped);
  for (std::size_t j = 0; j < kOrders; ++j) {
    if (ord_sampled[j].empty()) break;
    std::sort(ord_sampled[j].begin(), ord_sampled[j].end());
    std::sort(ord_literal[j].begin(), ord_literal[j].end());
    std::sort(ord_capped[j].begin(), ord_capped[j].end());
    for (double p : {0.1, 0.5, 0.9}) {
      report.quantiles.push_back({j + 1, p, empirical_quantile(ord_sampled[j], p),
                                  empirical_quantile(ord_literal[j], p),
                                  empirical_quantile(ord_capped[j], p), ord_sampled[j].size()});
    }
  }
  return report;
}

}  // namespace bergman
