#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bergman {

/// sup_x |F_n(x) - F(x)| for the empirical CDF F_n of `samples`.
/// Throws std::invalid_argument on an empty sample.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// sup_x |F_n(x) - G_m(x)| between two empirical CDFs.
double two_sample_ks(std::span<const double> a, std::span<const double> b);

/// Asymptotic one-sample Kolmogorov critical value sqrt(-log(alpha/2)/2) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

/// Two-sample variant, scaled by sqrt((n + m)/(n m)).
double two_sample_ks_critical_value(std::size_t n, std::size_t m, double alpha);

/// Upper alpha quantile of the chi-square law with `dof` degrees of freedom.
double chi_square_critical_value(double dof, double alpha);

/// Type-1 empirical quantile of an ascending sample.
double empirical_quantile(std::span<const double> sorted, double p);

}  // namespace bergman
