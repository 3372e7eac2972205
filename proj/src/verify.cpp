#include "bergman/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "bergman/quadrature.hpp"

namespace bergman {

// ---------------------------------------------------------------------------
// Exact count law.

double CountDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) m += static_cast<double>(k) * pmf[k];
  return m;
}

double CountDistribution::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double d = static_cast<double>(k) - m;
    v += d * d * pmf[k];
  }
  return v;
}

double CountDistribution::cdf(std::size_t k) const {
  double c = 0.0;
  for (std::size_t j = 0; j <= k && j < pmf.size(); ++j) c += pmf[j];
  return std::min(c, 1.0);
}

double CountDistribution::cdf_at(double x) const {
  if (x < 0.0) return 0.0;
  return cdf(static_cast<std::size_t>(std::floor(x)));
}

double CountDistribution::upper_tail_at(double x) const {
  const auto from = static_cast<std::size_t>(std::max(0.0, std::ceil(x)));
  double t = 0.0;
  for (std::size_t k = from; k < pmf.size(); ++k) t += pmf[k];
  return std::min(t, 1.0);
}

CountDistribution count_pmf(std::span<const double> eigenvalues) {
  constexpr std::size_t kRenormalizeEvery = 1024;
  CountDistribution dist;
  dist.pmf.reserve(eigenvalues.size() + 1);
  dist.pmf.push_back(1.0);
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const double lambda = eigenvalues[i];
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw std::domain_error("count_pmf: eigenvalues must lie in [0, 1]");
    }
    auto& p = dist.pmf;
    p.push_back(0.0);
    for (std::size_t k = p.size() - 1; k > 0; --k) p[k] = p[k] * (1.0 - lambda) + p[k - 1] * lambda;
    p[0] *= 1.0 - lambda;
    while (p.size() > 1 && p.back() == 0.0) p.pop_back();
    if ((i + 1) % kRenormalizeEvery == 0) {
      const double total = std::accumulate(p.begin(), p.end(), 0.0);
      for (double& x : p) x /= total;
    }
  }
  return dist;
}

CountDistribution count_pmf(const Eigen::VectorXd& eigenvalues) {
  return count_pmf(std::span<const double>(eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())));
}

std::vector<std::size_t> count_quantiles(const CountDistribution& dist, std::span<const double> probs) {
  std::vector<std::size_t> out;
  out.reserve(probs.size());
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("count_quantiles: p must lie in [0, 1]");
    std::size_t k = dist.pmf.size() - 1;
    if (p < 1.0) {
      double c = 0.0;
      for (std::size_t j = 0; j < dist.pmf.size(); ++j) {
        c += dist.pmf[j];
        if (c >= p) {
          k = j;
          break;
        }
      }
    }
    out.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo counts.

CountStats mc_count_stats(const RestrictedSpectrum& spectrum, const SamplerConfig& config,
                          std::size_t reps, CountSource source, unsigned threads) {
  if (reps < 2) throw std::invalid_argument("mc_count_stats: reps must be >= 2");
  const std::size_t truncation = resolve_truncation(spectrum, config);
  const Eigen::VectorXd lambda = eigenvalues(spectrum, truncation);
  const std::span<const double> lambdas(lambda.data(), truncation);

  std::vector<std::size_t> counts(reps);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t r = first; r < reps; r += stride) {
      if (source == CountSource::bernoulli_phase) {
        RandomStream rng(config.seed, r, StreamPhase::bernoulli);
        counts[r] = bernoulli_phase(lambdas, rng).size();
      } else {
        counts[r] = sample(spectrum, config, r).points.size();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }

  CountStats stats;
  stats.reps = reps;
  const std::size_t top = *std::max_element(counts.begin(), counts.end());
  stats.histogram.assign(top + 1, 0);
  double sum = 0.0;
  for (std::size_t c : counts) {
    ++stats.histogram[c];
    sum += static_cast<double>(c);
  }
  stats.mean = sum / static_cast<double>(reps);
  double ss = 0.0;
  for (std::size_t c : counts) ss += (static_cast<double>(c) - stats.mean) * (static_cast<double>(c) - stats.mean);
  stats.variance = ss / static_cast<double>(reps - 1);
  stats.standard_error = std::sqrt(stats.variance / static_cast<double>(reps));
  return stats;
}

GofReport chi_square_count_test(std::span<const std::size_t> histogram,
                                const CountDistribution& dist, double alpha) {
  const std::size_t reps = std::accumulate(histogram.begin(), histogram.end(), std::size_t{0});
  if (reps == 0) throw std::invalid_argument("chi_square_count_test: empty histogram");
  const std::string name = "count-law chi-square";
  // A count the exact law gives probability zero rejects outright; merging
  // would otherwise hide it inside a neighbouring cell.
  for (std::size_t k = 0; k < histogram.size(); ++k) {
    if (histogram[k] > 0 && (k >= dist.pmf.size() || dist.pmf[k] == 0.0)) {
      const double dof = std::max<double>(1.0, static_cast<double>(dist.pmf.size()) - 1.0);
      return make_gof(name, std::numeric_limits<double>::infinity(),
                      chi_square_critical_value(dof, alpha), reps);
    }
  }
  const std::size_t cells = std::max(histogram.size(), dist.pmf.size());
  std::vector<double> observed, expected;
  double o = 0.0;
  double e = 0.0;
  for (std::size_t k = 0; k < cells; ++k) {
    o += k < histogram.size() ? static_cast<double>(histogram[k]) : 0.0;
    e += k < dist.pmf.size() ? dist.pmf[k] * static_cast<double>(reps) : 0.0;
    if (e >= 5.0) {
      observed.push_back(o);
      expected.push_back(e);
      o = e = 0.0;
    }
  }
  if (o > 0.0 || e > 0.0) {
    if (expected.empty()) {
      observed.push_back(o);
      expected.push_back(e);
    } else {
      observed.back() += o;
      expected.back() += e;
    }
  }
  if (expected.size() < 2) return make_gof(name, 0.0, 0.0, reps);
  double stat = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  const double threshold = chi_square_critical_value(static_cast<double>(expected.size() - 1), alpha);
  return make_gof(name, stat, threshold, reps);
}

// ---------------------------------------------------------------------------
// Intensity.

double truncated_bin_expectation(const RadialBin& bin, std::size_t truncation) {
  const double a2 = bin.inner * bin.inner;
  const double b2 = bin.outer * bin.outer;
  double pa = a2;
  double pb = b2;
  double sum = 0.0;
  for (std::size_t n = 0; n < truncation; ++n) {
    sum += pb - pa;
    pa *= a2;
    pb *= b2;
  }
  return sum;
}

double untruncated_bin_expectation(const RadialBin& bin) {
  return 1.0 / ((1.0 - bin.outer) * (1.0 + bin.outer)) -
         1.0 / ((1.0 - bin.inner) * (1.0 + bin.inner));
}

IntensityReport intensity_profile_test(std::span<const PointConfiguration> configs,
                                       const RestrictedSpectrum& spectrum,
                                       std::span<const RadialBin> bins, double alpha) {
  if (configs.empty()) throw std::invalid_argument("intensity_profile_test: empty configuration list");
  if (bins.empty()) throw std::invalid_argument("intensity_profile_test: no bins");
  const std::size_t truncation = configs.front().meta.truncation;
  for (const auto& c : configs) {
    if (c.meta.truncation != truncation) {
      throw std::invalid_argument("intensity_profile_test: configurations mix truncations");
    }
  }
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const RadialBin& b = bins[i];
    bool inside = false;
    for (const auto& iv : spectrum.support().intervals()) {
      inside = inside || (b.inner >= iv.inner && b.outer <= iv.outer && b.inner < b.outer);
    }
    if (!inside) throw std::invalid_argument("intensity_profile_test: bin outside region");
    for (std::size_t j = 0; j < i; ++j) {
      if (b.inner < bins[j].outer && bins[j].inner < b.outer) {
        throw std::invalid_argument("intensity_profile_test: bins overlap");
      }
    }
  }

  const auto reps = static_cast<Eigen::Index>(configs.size());
  const auto nb = static_cast<Eigen::Index>(bins.size());
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(reps, nb);
  for (Eigen::Index r = 0; r < reps; ++r) {
    for (const auto& p : configs[static_cast<std::size_t>(r)].points) {
      const double m = std::abs(p);
      for (Eigen::Index b = 0; b < nb; ++b) {
        const RadialBin& bin = bins[static_cast<std::size_t>(b)];
        if (m >= bin.inner && m < bin.outer) counts(r, b) += 1.0;
      }
    }
  }
  const Eigen::RowVectorXd mean = counts.colwise().mean();
  const Eigen::MatrixXd centered = counts.rowwise() - mean;
  const Eigen::MatrixXd cov = (centered.adjoint() * centered) / static_cast<double>(reps - 1);

  IntensityReport report;
  Eigen::VectorXd diff(nb);
  for (Eigen::Index b = 0; b < nb; ++b) {
    const RadialBin& bin = bins[static_cast<std::size_t>(b)];
    IntensityBinRow row;
    row.bin = bin;
    row.empirical_mean = mean[b];
    row.expected = truncated_bin_expectation(bin, truncation);
    row.untruncated = untruncated_bin_expectation(bin);
    row.standard_error = std::sqrt(cov(b, b) / static_cast<double>(reps));
    diff[b] = row.empirical_mean - row.expected;
    report.rows.push_back(row);
  }
  const double stat = static_cast<double>(reps) * diff.dot(cov.ldlt().solve(diff));
  report.gof = make_gof("intensity-profile hotelling", stat,
                        chi_square_critical_value(static_cast<double>(nb), alpha),
                        configs.size());
  return report;
}

// ---------------------------------------------------------------------------
// Quadrature and series oracles.

Eigen::MatrixXcd orthonormality_gram(const RestrictedSpectrum& spectrum, std::size_t count,
                                     int radial_nodes, int angular_nodes) {
  const auto n = static_cast<Eigen::Index>(count);
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
  const double dtheta = 2.0 * std::numbers::pi / angular_nodes;
  Eigen::VectorXcd phi(n);
  for (const auto& iv : spectrum.support().intervals()) {
    const auto [nodes, weights] = gauss_legendre<double>(radial_nodes, iv.inner, iv.outer);
    for (Eigen::Index q = 0; q < nodes.size(); ++q) {
      for (int j = 0; j < angular_nodes; ++j) {
        const ComplexPoint x = std::polar(nodes[q], j * dtheta);
        for (Eigen::Index k = 0; k < n; ++k) phi[k] = eigenfunction(spectrum, static_cast<std::size_t>(k), x);
        gram.noalias() += (weights[q] * nodes[q] * dtheta) * (phi * phi.adjoint());
      }
    }
  }
  return gram;
}

double eigenvalue_series_sum(const RadialRegion& region) {
  double total = 0.0;
  for (const auto& iv : region.intervals()) {
    // Block of length M: gb = sum_{n<M} B^{n+1}, ga likewise, d = gb - ga,
    // pb = B^M, delta = B^M - A^M, with B = b^2 and A = a^2.
    const double log_b = std::log1p(-iv.outer_gap);
    const double log_ratio = iv.inner_gap == 1.0 ? -std::numeric_limits<double>::infinity()
                                                 : std::log1p(-iv.width / (1.0 - iv.outer_gap));
    double m = 1.0;
    double gb = 1.0 - iv.outer_gap;
    double ga = 1.0 - iv.inner_gap;
    double d = iv.width;
    for (int step = 0; step < 2000; ++step) {
      const double pb = std::exp(m * log_b);
      if (pb < 1e-18) break;
      const double pa = std::exp(m * (log_b + log_ratio));
      const double delta = pb * -std::expm1(m * log_ratio);
      d = d * (1.0 + pb) + delta * ga;
      gb *= 1.0 + pb;
      ga *= 1.0 + pa;
      m *= 2.0;
    }
    total += d;
  }
  return total;
}

double direct_eigenvalue_sum(const RestrictedSpectrum& spectrum, double tolerance,
                             std::size_t max_terms) {
  const double decay = spectrum.is_bergman() ? spectrum.support().outer_gap() : 1.0;
  double sum = 0.0;
  for (std::size_t n = 0; n < max_terms; ++n) {
    const double term = eigenvalue(spectrum, n);
    sum += term;
    if (term < tolerance * decay) break;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Bound audits.

std::vector<ChernoffCheck> chernoff_audit(const CountDistribution& dist, std::span<const double> cs) {
  const double m = dist.mean();
  std::vector<ChernoffCheck> out;
  for (double c : cs) {
    ChernoffCheck check;
    check.c = c;
    check.lower_exact = dist.cdf_at((1.0 - c) * m);
    check.lower_bound = chernoff_lower_tail(m, c);
    check.upper_exact = dist.upper_tail_at((1.0 + c) * m);
    check.upper_bound = chernoff_upper_tail(m, c);
    out.push_back(check);
  }
  return out;
}

std::vector<AuditRow> bound_audit(std::span<const double> radii, std::span<const double> betas) {
  std::vector<AuditRow> rows;
  for (double radius : radii) {
    for (double beta : betas) {
      AuditRow row;
      row.report = make_bound_report(radius, beta);
      const auto spectrum = RestrictedSpectrum::disc(radius);
      const CountDistribution dist = count_pmf(eigenvalues(spectrum, row.report.truncation));
      row.truncated_mean = dist.mean();
      row.chernoff = chernoff_audit(dist, kChernoffGrid);
      row.passed = row.report.dominance_holds() &&
                   std::all_of(row.chernoff.begin(), row.chernoff.end(),
                               [](const ChernoffCheck& c) { return c.holds(); });
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace bergman
