#include "bergman/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace bergman {
namespace {

void require_radius(double radius, const char* what) {
  if (!(radius > 0.0 && radius < 1.0)) {
    throw std::domain_error(std::string(what) + ": radius must lie in (0, 1)");
  }
}

}  // namespace

BoundConstants bound_constants(double radius) {
  require_radius(radius, "bound_constants");
  const double r2 = radius * radius;
  return {r2 / ((1.0 - radius) * (1.0 + radius)), r2 / (1.0 + radius)};
}

double wkr_theorem_bound(double radius, double beta) {
  require_radius(radius, "wkr_theorem_bound");
  if (!(beta > 0.0)) throw std::domain_error("wkr_theorem_bound: beta must be positive");
  const BoundConstants c = bound_constants(radius);
  return c.expected_count * std::exp(-2.0 * beta * c.rate);
}

double wkr_exact_tail(double radius, std::size_t n) {
  require_radius(radius, "wkr_exact_tail");
  return std::pow(radius, 2.0 * static_cast<double>(n) + 4.0) /
         ((1.0 - radius) * (1.0 + radius));
}

double coincidence_exact(double radius, std::size_t n, double tolerance) {
  require_radius(radius, "coincidence_exact");
  if (!(tolerance > 0.0)) throw std::domain_error("coincidence_exact: tolerance must be positive");
  const double log_r2 = 2.0 * std::log(radius);
  double log_survival = 0.0;
  for (std::size_t k = n + 1;; ++k) {
    const double lambda = std::exp(static_cast<double>(k + 1) * log_r2);
    log_survival += std::log1p(-lambda);
    if (wkr_exact_tail(radius, k) < tolerance) break;
  }
  return -std::expm1(log_survival);
}

double chernoff_lower_tail(double mean, double c) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw std::domain_error("chernoff: mean must be positive and finite");
  }
  if (!(c > 0.0 && c < 1.0)) throw std::domain_error("chernoff lower tail: c must lie in (0, 1)");
  return std::exp(-mean * (c + (1.0 - c) * std::log1p(-c)));
}

double chernoff_upper_tail(double mean, double c) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw std::domain_error("chernoff: mean must be positive and finite");
  }
  if (!(c > 0.0)) throw std::domain_error("chernoff upper tail: c must be positive");
  return std::exp(-mean * ((1.0 + c) * std::log1p(c) - c));
}

ChernoffBounds chernoff_tail_bounds(double mean, double c) {
  return {chernoff_lower_tail(mean, c), chernoff_upper_tail(mean, c)};
}

double convergence_margin(double epsilon, double n) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error("convergence_margin: epsilon must lie in (0, 1)");
  }
  if (!(n >= 0.0)) throw std::domain_error("convergence_margin: N must be >= 0");
  return 2.0 * n * std::log1p(-epsilon) - std::log(epsilon);
}

double ginibre_expected_count(double radius) {
  if (!(radius >= 0.0)) throw std::domain_error("ginibre_expected_count: radius must be >= 0");
  return radius * radius;
}

BoundReport make_bound_report(double radius, double beta, double tolerance) {
  BoundReport r;
  r.radius = radius;
  r.beta = beta;
  r.constants = bound_constants(radius);
  r.truncation = static_cast<std::size_t>(std::ceil(beta * r.constants.expected_count));
  r.wkr_theorem = wkr_theorem_bound(radius, beta);
  r.wkr_exact_tail = wkr_exact_tail(radius, r.truncation);
  r.coincidence_exact = coincidence_exact(radius, r.truncation, tolerance);
  return r;
}

}  // namespace bergman
