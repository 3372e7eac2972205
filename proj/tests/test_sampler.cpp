#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

#include "bergman/gram_schmidt.hpp"
#include "bergman/rng.hpp"
#include "bergman/sampler.hpp"

using namespace bergman;

TEST_CASE("random streams") {
  RandomStream a(7, 3, StreamPhase::positions), b(7, 3, StreamPhase::positions);
  RandomStream other_replica(7, 4, StreamPhase::positions), other_phase(7, 3, StreamPhase::bernoulli);
  bool differs_r = false, differs_p = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs_r = differs_r || x != other_replica();
    differs_p = differs_p || x != other_phase();
  }
  CHECK(differs_r);
  CHECK(differs_p);
  CHECK(a.position() == 100);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = a.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("truncation defaults") {
  const auto d = RestrictedSpectrum::disc(0.9);
  CHECK(default_truncation(d, 2.0) == 9);
  CHECK(default_truncation(d, 1.0) == 5);
  CHECK(default_truncation(d, 5.0) == 22);
  CHECK(default_truncation(RestrictedSpectrum::disc(0.01), 1.0) == 1);
  CHECK(resolve_truncation(d, SamplerConfig{FixedTruncation{13}}) == 13);
  CHECK_THROWS(default_truncation(d, 0.0));
}

TEST_CASE("bernoulli phase") {
  RandomStream rng(0, 0, StreamPhase::bernoulli);
  const std::vector<double> ones(12, 1.0), zeros(12, 0.0);
  CHECK(bernoulli_phase(ones, rng).size() == 12);
  CHECK(bernoulli_phase(zeros, rng).empty());
  const auto active = bernoulli_phase(RestrictedSpectrum::disc(0.9), 22, rng);
  CHECK(std::is_sorted(active.indices.begin(), active.indices.end()));
  CHECK(std::adjacent_find(active.indices.begin(), active.indices.end()) == active.indices.end());
}

TEST_CASE("gram-schmidt basis") {
  OrthonormalBasis<std::complex<double>> basis(4);
  Eigen::VectorXcd v(4);
  v << 1.0, std::complex<double>(0, 1), 2.0, 0.5;
  basis.append(v);
  Eigen::VectorXcd w(4);
  w << 1.0, 1.0, 1.0, std::complex<double>(0, -1);
  basis.append(w);
  const Eigen::MatrixXcd g = basis.vectors().adjoint() * basis.vectors();
  CHECK((g - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-14);
  CHECK(basis.residual_norm2(v) < 1e-26);
  CHECK_THROWS_AS(basis.append(Eigen::VectorXcd(2.0 * v - w)), std::runtime_error);
}

TEST_CASE("samples are deterministic and inside the region") {
  const auto spec = RestrictedSpectrum::annulus(0.3, 0.9);
  SamplerConfig config{ProportionalTruncation{5.0}, 42};
  const auto a = sample(spec, config, 0);
  const auto b = sample(spec, config, 0);
  CHECK(a == b);
  CHECK(a.meta.seed == 42);
  CHECK(a.meta.truncation == default_truncation(spec, 5.0));
  CHECK(a.points.size() == a.meta.active.size());
  CHECK(a.meta.rejections.size() == a.points.size());
  CHECK(a.meta.envelope_violations == 0);
  for (std::uint64_t r = 0; r < 50; ++r) {
    const auto pc = sample(spec, config, r);
    for (const auto& p : pc.points) CHECK(spec.contains(p));
  }
  CHECK_FALSE(sample(spec, config, 1) == a);
}

TEST_CASE("point count equals the bernoulli phase on the same stream") {
  const auto d = RestrictedSpectrum::disc(0.9);
  SamplerConfig config{ProportionalTruncation{5.0}, 3};
  const auto lambda = eigenvalues(d, 22);
  for (std::uint64_t r = 0; r < 20; ++r) {
    RandomStream rng(3, r, StreamPhase::bernoulli);
    const auto active = bernoulli_phase(std::span<const double>(lambda.data(), 22), rng);
    CHECK(sample(d, config, r).meta.active == active.indices);
  }
}

TEST_CASE("feature map envelope") {
  const auto d = RestrictedSpectrum::disc(0.8);
  FeatureMap phi(d, {0, 2, 5});
  RandomStream rng(1, 0, StreamPhase::oracle);
  for (int i = 0; i < 1000; ++i) {
    const auto x = uniform_point(d.support(), rng);
    CHECK(phi(x).squaredNorm() <= phi.sup_norm2() * (1.0 + 1e-12));
  }
  CHECK(phi(std::polar(0.8, 1.0)).squaredNorm() == doctest::Approx(phi.sup_norm2()).epsilon(1e-12));
}

TEST_CASE("uniform point law on an annulus") {
  const auto reg = RestrictedSpectrum::annulus(0.5, 0.9).support();
  RandomStream rng(9, 0, StreamPhase::oracle);
  int below = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const double r = std::abs(uniform_point(reg, rng));
    CHECK(r >= 0.5 - 1e-15);
    CHECK(r <= 0.9 + 1e-15);
    below += r < 0.7;
  }
  // area fraction of [0.5, 0.7]: (0.49 - 0.25)/(0.81 - 0.25)
  CHECK(double(below) / n == doctest::Approx(0.24 / 0.56).epsilon(0.02));
}

TEST_CASE("projection samples have distinct points") {
  const auto d = RestrictedSpectrum::disc(0.95);
  RandomStream rng(5, 0, StreamPhase::positions);
  ActiveIndexSet active{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}};
  const auto pc = hkpv_sample(d, active, rng);
  REQUIRE(pc.points.size() == 12);
  for (std::size_t i = 0; i < pc.points.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(pc.points[i] - pc.points[j]) > 1e-6);
  }
  CHECK(pc.meta.total_proposals >= 12);
  CHECK(pc.meta.acceptance_rate() <= 1.0);
}

TEST_CASE("moduli and the min-radius law") {
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.99, 1.0}) CHECK(min_radius_cdf(1, x) == x * x);
  CHECK(min_radius_cdf(2, 0.5) == 0.296875);
  for (std::size_t n : {1u, 5u, 20u, 50u}) {
    for (double x : {1e-4, 0.01, 0.03, 0.05}) {
      // x^2 <= 1 - prod(1 - x^{2k}) <= sum x^{2k} <= x^2 / (1 - x^2)
      const double ratio = min_radius_cdf(n, x) / (x * x);
      CHECK(ratio >= 1.0 - 10.0 * x * x);
      CHECK(ratio >= 1.0 - 1e-15);
      CHECK(ratio <= 1.0 / (1.0 - x * x) + 1e-15);
      if (n == 1) CHECK(ratio == 1.0);
    }
  }
  RandomStream rng(0, 0, StreamPhase::moduli);
  const auto m = moduli_sample(20, rng);
  CHECK(m.size() == 20);
  for (double v : m) CHECK((v > 0.0 && v < 1.0));
  CHECK_THROWS(moduli_sample(0, rng));
  CHECK_THROWS(min_radius_cdf(3, 1.5));
}

TEST_CASE("conjecture experiment is exploratory") {
  SamplerConfig config{ProportionalTruncation{5.0}, 0};
  CHECK_THROWS_AS(conjecture_experiment(0.9, config, 0), std::invalid_argument);
  const auto rep = conjecture_experiment(0.9, config, 200);
  CHECK(rep.reps == 200);
  CHECK(rep.nonempty <= 200);
  CHECK(rep.nonempty > 150);
  CHECK(!rep.quantiles.empty());
  CHECK((rep.ks_min_literal >= 0.0 && rep.ks_min_literal <= 1.0));
  for (const auto& q : rep.quantiles) CHECK((q.sampled > 0.0 && q.sampled <= 0.9));
}
