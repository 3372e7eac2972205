#include "bergman/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bergman/format.hpp"
#include "bergman/gamma.hpp"

namespace bergman {
namespace {

const double kLogFloor = std::log(kEigenvalueFloor);
const double kLogPi = std::log(std::numbers::pi);

void require_bergman(const RestrictedSpectrum& spectrum, const char* what) {
  if (!spectrum.is_bergman()) {
    throw std::domain_error(std::string(what) + ": only available for Bergman spectra");
  }
}

// b^{2n+2} - a^{2n+2} for one interval. The difference is formed as
// b^{2n+2} (1 - (a/b)^{2n+2}) so narrow intervals keep relative accuracy;
// when (a/b)^{2n+2} <= 1/2 the plain difference loses nothing and is used.
double interval_term(const Interval& iv, std::size_t n) {
  const double power = std::pow(iv.outer, 2.0 * static_cast<double>(n) + 2.0);
  if (iv.inner_gap == 1.0) return power;
  const double log_ratio = std::log1p(-iv.width / (1.0 - iv.outer_gap));
  const double k = static_cast<double>(n + 1);
  if (k * log_ratio <= -std::numbers::ln2) return power - std::pow(iv.inner, 2.0 * k);
  return power * -std::expm1(k * log_ratio);
}

double log_interval_term(const Interval& iv, std::size_t n) {
  const double k = static_cast<double>(n + 1);
  const double log_power = k * std::log1p(-iv.outer_gap);
  if (iv.inner_gap == 1.0) return log_power;
  const double log_ratio = std::log1p(-iv.width / (1.0 - iv.outer_gap));
  return log_power + std::log(-std::expm1(k * log_ratio));
}

// sum_{n >= from} P(n + 1, x), stopped once the geometric tail bound
// P(n+1,x) (x/(n+2)) / (1 - x/(n+3)) on the remainder falls below tol.
double ginibre_sum(double x, std::size_t from, double tolerance) {
  const double stop_after = x + 10.0 * std::sqrt(x) + 20.0;
  double sum = 0.0;
  for (std::size_t n = from;; ++n) {
    const double term = lower_regularized_gamma(static_cast<double>(n + 1), x);
    sum += term;
    const double nd = static_cast<double>(n);
    if (nd > stop_after && term < tolerance / 10.0) {
      const double bound = term * (x / (nd + 2.0)) / (1.0 - x / (nd + 3.0));
      if (bound < tolerance) return sum;
    }
  }
}

}  // namespace

std::complex<double> bergman_kernel(ComplexPoint x, ComplexPoint y) {
  if (!(std::abs(x) < 1.0) || !(std::abs(y) < 1.0)) {
    throw std::domain_error("bergman_kernel: points must lie in the open unit disc");
  }
  const std::complex<double> d = 1.0 - x * std::conj(y);
  return 1.0 / (std::numbers::pi * d * d);
}

RestrictedSpectrum RestrictedSpectrum::disc(double radius) {
  if (!(radius > 0.0 && radius < 1.0)) {
    throw std::domain_error("disc spectrum: radius must lie in (0, 1); radius 1 has infinite trace");
  }
  RestrictedSpectrum s;
  s.kind_ = SpectrumKind::bergman_disc;
  s.radius_ = radius;
  s.region_ = disc_region(radius);
  s.label_ = "disc:" + format_real(radius);
  return s;
}

RestrictedSpectrum RestrictedSpectrum::annulus(double inner, double outer) {
  if (!(inner >= 0.0 && inner < outer && outer < 1.0)) {
    throw std::domain_error("annulus spectrum: requires 0 <= r < R < 1");
  }
  RestrictedSpectrum s;
  s.kind_ = SpectrumKind::bergman_annulus;
  s.radius_ = outer;
  s.region_ = annulus_region(inner, outer);
  s.label_ = "annulus:" + format_real(inner) + ":" + format_real(outer);
  return s;
}

RestrictedSpectrum RestrictedSpectrum::region(RadialRegion region, std::string label) {
  if (region.empty()) throw std::domain_error("region spectrum: region must be nonempty");
  RestrictedSpectrum s;
  s.kind_ = SpectrumKind::bergman_region;
  s.radius_ = region.outer_radius();
  if (label.empty()) {
    label = "intervals:";
    for (std::size_t j = 0; j < region.size(); ++j) {
      if (j) label += ',';
      label += format_real(region.intervals()[j].inner) + "-" +
               format_real(region.intervals()[j].outer);
    }
  }
  s.region_ = std::move(region);
  s.label_ = std::move(label);
  return s;
}

RestrictedSpectrum RestrictedSpectrum::ginibre(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::domain_error("ginibre spectrum: radius must be positive");
  }
  RestrictedSpectrum s;
  s.kind_ = SpectrumKind::ginibre_disc;
  s.radius_ = radius;
  s.label_ = "ginibre:" + format_real(radius);
  return s;
}

bool RestrictedSpectrum::contains(ComplexPoint x, double tolerance) const {
  const double r = std::abs(x);
  if (!std::isfinite(r)) return false;
  if (!is_bergman()) return r <= radius_ + tolerance;
  return region_.contains_radius(r, tolerance);
}

double ginibre_eigenvalue(double radius, std::size_t n) {
  if (!(radius > 0.0)) throw std::domain_error("ginibre_eigenvalue: radius must be positive");
  return lower_regularized_gamma(static_cast<double>(n + 1), radius * radius);
}

double log_eigenvalue(const RestrictedSpectrum& spectrum, std::size_t n) {
  if (!spectrum.is_bergman()) {
    const double r = spectrum.radius();
    return log_lower_regularized_gamma(static_cast<double>(n + 1), r * r);
  }
  double peak = -std::numeric_limits<double>::infinity();
  const auto& ivs = spectrum.support().intervals();
  std::vector<double> logs(ivs.size());
  for (std::size_t j = 0; j < ivs.size(); ++j) {
    logs[j] = log_interval_term(ivs[j], n);
    peak = std::max(peak, logs[j]);
  }
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - peak);
  return peak + std::log(sum);
}

bool eigenvalue_underflows(const RestrictedSpectrum& spectrum, std::size_t n) {
  return log_eigenvalue(spectrum, n) < kLogFloor;
}

double eigenvalue(const RestrictedSpectrum& spectrum, std::size_t n) {
  if (!spectrum.is_bergman()) {
    const double value = ginibre_eigenvalue(spectrum.radius(), n);
    return value < kEigenvalueFloor ? 0.0 : value;
  }
  // Cheap underflow screen: lambda_n <= R^{2n+2}.
  const double bound = static_cast<double>(n + 1) * std::log1p(-spectrum.support().outer_gap());
  if (bound < kLogFloor && eigenvalue_underflows(spectrum, n)) return 0.0;
  double value = 0.0;
  for (const auto& iv : spectrum.support().intervals()) value += interval_term(iv, n);
  return value < kEigenvalueFloor ? 0.0 : value;
}

Eigen::VectorXd eigenvalues(const RestrictedSpectrum& spectrum, std::size_t count) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(count));
  for (std::size_t n = 0; n < count; ++n) out[static_cast<Eigen::Index>(n)] = eigenvalue(spectrum, n);
  return out;
}

double eigenfunction_log_scale(const RestrictedSpectrum& spectrum, std::size_t n) {
  require_bergman(spectrum, "eigenfunction");
  const double log_radius = 0.5 * std::log1p(-spectrum.support().outer_gap());
  const double nd = static_cast<double>(n);
  return nd * log_radius + 0.5 * (std::log(nd + 1.0) - kLogPi - log_eigenvalue(spectrum, n));
}

std::complex<double> eigenfunction(const RestrictedSpectrum& spectrum, std::size_t n,
                                   ComplexPoint x) {
  require_bergman(spectrum, "eigenfunction");
  if (!spectrum.contains(x)) {
    throw std::domain_error("eigenfunction: point outside the region " + spectrum.label());
  }
  const std::complex<double> z = x / spectrum.radius();
  std::complex<double> power = 1.0;
  for (std::size_t k = 0; k < n; ++k) power *= z;
  return power * std::exp(eigenfunction_log_scale(spectrum, n));
}

std::complex<double> truncated_kernel(const RestrictedSpectrum& spectrum, std::size_t truncation,
                                      ComplexPoint x, ComplexPoint y) {
  require_bergman(spectrum, "truncated_kernel");
  if (!spectrum.contains(x) || !spectrum.contains(y)) {
    throw std::domain_error("truncated_kernel: point outside the region " + spectrum.label());
  }
  const double radius = spectrum.radius();
  const std::complex<double> zx = x / radius;
  const std::complex<double> zy = std::conj(y) / radius;
  std::complex<double> px = 1.0;
  std::complex<double> py = 1.0;
  std::complex<double> sum = 0.0;
  for (std::size_t n = 0; n < truncation; ++n) {
    const double lambda = eigenvalue(spectrum, n);
    if (lambda > 0.0) {
      const double scale = std::exp(2.0 * eigenfunction_log_scale(spectrum, n));
      sum += lambda * scale * px * py;
    }
    px *= zx;
    py *= zy;
  }
  return sum;
}

double trace(const RestrictedSpectrum& spectrum, double tolerance) {
  if (spectrum.is_bergman()) return region_trace(spectrum.support());
  if (!(tolerance > 0.0)) throw std::domain_error("trace: tolerance must be positive");
  const double r = spectrum.radius();
  return ginibre_sum(r * r, 0, tolerance);
}

double truncation_tail(const RestrictedSpectrum& spectrum, std::size_t truncation,
                       double tolerance) {
  if (!spectrum.is_bergman()) {
    const double r = spectrum.radius();
    return ginibre_sum(r * r, truncation, tolerance);
  }
  // b^{2N+2}/(1-b^2) - a^{2N+2}/(1-a^2)
  //   = B w / (sa sb) + B (1 - (a/b)^{2N+2}) / sa,   B = b^{2N+2}.
  double tail = 0.0;
  for (const auto& iv : spectrum.support().intervals()) {
    const double power = std::pow(iv.outer, 2.0 * static_cast<double>(truncation) + 2.0);
    tail += power * logit_increment(iv);
    if (iv.inner_gap != 1.0) {
      const double log_ratio = std::log1p(-iv.width / (1.0 - iv.outer_gap));
      tail += power * -std::expm1(static_cast<double>(truncation + 1) * log_ratio) / iv.inner_gap;
    } else {
      tail += power;
    }
  }
  return tail;
}

}  // namespace bergman
