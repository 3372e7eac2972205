#include "bergman/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bergman {
namespace {

constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

// log(x^s e^{-x} / Gamma(s)), the common prefactor of both expansions.
double log_prefactor(double s, double x) {
  return s * std::log(x) - x - std::lgamma(s);
}

// sum_k x^k / (s (s+1) ... (s+k)).
double series_sum(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= x / (s + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEpsilon) break;
  }
  return sum;
}

double series(double s, double x) { return series_sum(s, x) * std::exp(log_prefactor(s, x)); }

// Modified Lentz evaluation of the continued fraction for Q(s, x).
double upper_continued_fraction(double s, double x) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) break;
  }
  return std::exp(log_prefactor(s, x)) * h;
}

}  // namespace

double lower_regularized_gamma(double s, double x) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::domain_error("lower_regularized_gamma: shape s must be positive and finite");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("lower_regularized_gamma: argument x must be >= 0");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < s + 1.0) return std::min(1.0, series(s, x));
  return std::max(0.0, 1.0 - upper_continued_fraction(s, x));
}

double log_lower_regularized_gamma(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0)) {
    throw std::domain_error("log_lower_regularized_gamma: requires s > 0 and x >= 0");
  }
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x < s + 1.0) return log_prefactor(s, x) + std::log(series_sum(s, x));
  return std::log(lower_regularized_gamma(s, x));
}

}  // namespace bergman
