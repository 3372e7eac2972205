#pragma once

namespace bergman {

/// Lower regularized incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
///
/// Power series below x = s + 1, Lentz continued fraction for the upper
/// function Q = 1 - P above it. Absolute accuracy is better than 1e-12 on the
/// whole domain s > 0, x >= 0. Throws std::domain_error outside it.
double lower_regularized_gamma(double s, double x);

/// log P(s, x), accurate where P itself underflows (x << s).
double log_lower_regularized_gamma(double s, double x);

}  // namespace bergman
