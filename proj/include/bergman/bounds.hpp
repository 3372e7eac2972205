#pragma once

#include <cstddef>

namespace bergman {

/// N_R = R^2/(1 - R^2), the expected count on the disc of radius R, and the
/// exponent rate g(R) = R^2/(1 + R).
struct BoundConstants {
  double expected_count = 0.0;
  double rate = 0.0;
};

BoundConstants bound_constants(double radius);

/// Truncation bound N_R exp(-2 beta g(R)).
double wkr_theorem_bound(double radius, double beta);

/// Coupling tail sum_{k >= N+1} R^{2k+2} = R^{2N+4}/(1 - R^2).
double wkr_exact_tail(double radius, std::size_t n);

/// P(some B_k = 1 with k > N) = 1 - prod_{k>N} (1 - R^{2k+2}), evaluated up to
/// the index past which the neglected eigenvalue mass is below `tolerance`.
double coincidence_exact(double radius, std::size_t n, double tolerance = 1e-14);

struct ChernoffBounds {
  double lower = 1.0;  // bound on P(|S| <= (1 - c) m)
  double upper = 1.0;  // bound on P(|S| >= (1 + c) m)
};

/// exp(-m (c + (1 - c) log(1 - c))), c in (0, 1).
double chernoff_lower_tail(double mean, double c);
/// exp(-m ((1 + c) log(1 + c) - c)), c > 0.
double chernoff_upper_tail(double mean, double c);
/// Both tails; c in (0, 1).
ChernoffBounds chernoff_tail_bounds(double mean, double c);

/// 2 N log(1 - eps) - log(eps); large negative values mean the sufficient
/// condition for convergence of the truncation at radius 1 - eps is met.
double convergence_margin(double epsilon, double n);

/// Expected point count R^2 of the Ginibre process on the disc of radius R.
double ginibre_expected_count(double radius);

struct BoundReport {
  double radius = 0.0;
  double beta = 0.0;
  std::size_t truncation = 0;  // ceil(beta N_R)
  BoundConstants constants;
  double wkr_theorem = 0.0;
  double wkr_exact_tail = 0.0;
  double coincidence_exact = 0.0;

  /// coincidence_exact <= wkr_exact_tail <= wkr_theorem.
  bool dominance_holds() const {
    return coincidence_exact <= wkr_exact_tail && wkr_exact_tail <= wkr_theorem;
  }
};

BoundReport make_bound_report(double radius, double beta, double tolerance = 1e-14);

}  // namespace bergman
