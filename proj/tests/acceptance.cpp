// One line per acceptance criterion; exit status 1 if any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bergman/bounds.hpp"
#include "bergman/regions.hpp"
#include "bergman/sampler.hpp"
#include "bergman/spectral.hpp"
#include "bergman/statistics.hpp"
#include "bergman/verify.hpp"

using namespace bergman;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome spectrum_exactness() {
  const auto d = RestrictedSpectrum::disc(0.5);
  bool ok = eigenvalue(d, 0) == 0.25 && eigenvalue(d, 3) == 0.00390625 &&
            eigenvalue(RestrictedSpectrum::annulus(0.5, 0.9), 0) == 0.56;
  double worst = 0.0;
  for (double r : {0.5, 0.9, 0.99}) {
    const auto disc = RestrictedSpectrum::disc(r);
    const auto reg = RestrictedSpectrum::region(make_region(std::vector<std::pair<double, double>>{{0.0, r}}));
    for (std::size_t n = 0; n <= 200; ++n) {
      const double a = eigenvalue(disc, n), b = eigenvalue(reg, n);
      const double rel = a == b ? 0.0 : std::abs(a - b) / std::abs(a);
      worst = std::max(worst, rel);
    }
  }
  ok = ok && worst <= 2.220446049250313e-16;
  return {ok, "disc(0.5) n=0,3 and annulus n=0 exact; region-vs-disc max rel diff " + fmt("%.1e", worst)};
}

Outcome orthonormality() {
  double worst = 0.0;
  for (const auto& s : {RestrictedSpectrum::disc(0.8), RestrictedSpectrum::annulus(0.5, 0.9)}) {
    const Eigen::MatrixXcd g = orthonormality_gram(s, 10);
    worst = std::max(worst, (g - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff());
  }
  return {worst < 1e-8, "max |G - I| = " + fmt("%.2e", worst)};
}

Outcome trace_identities() {
  const double t = trace(RestrictedSpectrum::disc(0.9));
  bool ok = std::abs(t - 4.2631579) < 1e-7 && std::abs(t - 81.0 / 19.0) < 1e-12;
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(trace(RestrictedSpectrum::ginibre(r), 1e-12) - r * r));
  ok = ok && worst < 1e-8;
  return {ok, "trace disc(0.9) = " + fmt("%.12f", t) + ", max ginibre error " + fmt("%.1e", worst)};
}

Outcome bound_dominance() {
  bool ok = true;
  for (double r : kAuditRadii) {
    for (double beta : kAuditBetas) ok = ok && make_bound_report(r, beta).dominance_holds();
  }
  const auto spot = make_bound_report(0.9, 2.0);
  ok = ok && std::abs(spot.wkr_exact_tail - 0.5183) < 5e-5 && std::abs(spot.wkr_theorem - 0.7747) < 5e-5;
  return {ok, "16 grid points; (0.9, 2): " + fmt("%.4f", spot.coincidence_exact) + " <= " +
                  fmt("%.4f", spot.wkr_exact_tail) + " <= " + fmt("%.4f", spot.wkr_theorem)};
}

Outcome chernoff_validity() {
  const auto dist = count_pmf(eigenvalues(RestrictedSpectrum::disc(0.9), 50));
  const auto checks = chernoff_audit(dist, kChernoffGrid);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const ChernoffCheck& c) { return c.holds(); });
  const double m = dist.mean();
  const double lo = std::exp(-m * (0.5 + 0.5 * std::log(0.5)));
  const double hi = std::exp(-m * (1.5 * std::log(1.5) - 0.5));
  const ChernoffCheck& half = checks[4];
  const bool spot = std::abs(half.lower_bound - lo) < 1e-14 && std::abs(half.upper_bound - hi) < 1e-14 &&
                    half.lower_exact <= lo && half.upper_exact <= hi;
  return {ok && spot, "m = " + fmt("%.6f", m) + "; c=0.5: P(S<=m/2) = " + fmt("%.4f", half.lower_exact) +
                          " <= " + fmt("%.4f", lo) + ", P(S>=1.5m) = " + fmt("%.4f", half.upper_exact) +
                          " <= " + fmt("%.4f", hi)};
}

Outcome count_law() {
  const auto spec = RestrictedSpectrum::disc(0.9);
  SamplerConfig config{FixedTruncation{22}, 20240601};
  const std::size_t reps = 100000;
  const auto stats = mc_count_stats(spec, config, reps);
  const auto dist = count_pmf(eigenvalues(spec, 22));
  const auto gof = chi_square_count_test(stats.histogram, dist);
  const double m = dist.mean(), v = dist.variance();
  double mu4 = 0.0;
  for (std::size_t k = 0; k < dist.pmf.size(); ++k) mu4 += std::pow(double(k) - m, 4) * dist.pmf[k];
  const double var_se = std::sqrt((mu4 - v * v) / double(reps));
  const bool mean_ok = std::abs(stats.mean - m) <= 4.0 * stats.standard_error;
  const bool var_ok = v <= m && std::abs(stats.variance - v) <= 4.0 * var_se;
  return {gof.passed && mean_ok && var_ok,
          "chi2 " + fmt("%.2f", gof.statistic) + " <= " + fmt("%.2f", gof.threshold) + "; mean " +
              fmt("%.4f", stats.mean) + " vs " + fmt("%.4f", m) + " (se " + fmt("%.4f", stats.standard_error) +
              "); var " + fmt("%.4f", stats.variance) + " vs " + fmt("%.4f", v)};
}

Outcome positional_law() {
  const auto spec = RestrictedSpectrum::disc(0.8);
  const std::size_t reps = 100000;
  const double crit = ks_critical_value(reps, kSignificance);
  bool ok = true;
  std::string detail;
  for (std::size_t index : {std::size_t{0}, std::size_t{3}}) {
    std::vector<double> radii(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      RandomStream rng(77, r, StreamPhase::positions);
      radii[r] = std::abs(hkpv_sample(spec, ActiveIndexSet{{index}}, rng).points.at(0));
    }
    const double power = 2.0 * double(index) + 2.0;
    const double ks = ks_statistic(radii, [&](double x) { return std::pow(std::clamp(x / 0.8, 0.0, 1.0), power); });
    ok = ok && ks < crit;
    detail += "I={" + std::to_string(index) + "} KS " + fmt("%.5f", ks) + "; ";
  }
  return {ok, detail + "critical " + fmt("%.5f", crit)};
}

Outcome intensity_profile() {
  const auto spec = RestrictedSpectrum::disc(0.9);
  SamplerConfig config{ProportionalTruncation{5.0}, 8};
  std::vector<PointConfiguration> configs;
  for (std::size_t r = 0; r < 10000; ++r) configs.push_back(sample(spec, config, r));
  const std::vector<RadialBin> bins = {{0.0, 0.4}, {0.4, 0.6}, {0.6, 0.75}, {0.75, 0.85}, {0.85, 0.9}};
  const auto rep = intensity_profile_test(configs, spec, bins);
  const std::size_t n = configs.front().meta.truncation;
  const double tail = truncation_tail(spec, n);
  bool tails_ok = true;
  for (const auto& row : rep.rows) tails_ok = tails_ok && row.untruncated - row.expected >= -1e-12 && row.untruncated - row.expected <= tail + 1e-12;
  const RadialBin spot{0.5, 0.9};
  const double untr = untruncated_bin_expectation(spot);
  const double gap = untr - truncated_bin_expectation(spot, n);
  tails_ok = tails_ok && std::abs(untr - 3.9298246) < 1e-7 && gap >= -1e-12 && gap <= tail + 1e-12;  // rounding slack only
  return {rep.gof.passed && tails_ok, "N = " + std::to_string(n) + ", Hotelling " + fmt("%.2f", rep.gof.statistic) +
                                          " <= " + fmt("%.2f", rep.gof.threshold) + "; [0.5,0.9] untruncated " +
                                          fmt("%.7f", untr) + ", truncation gap " + fmt("%.6e", gap) +
                                          " <= tail " + fmt("%.6e", tail)};
}

Outcome figure_count() {
  const auto spec = RestrictedSpectrum::disc(0.9995);
  std::size_t n = 1000;
  while (truncation_tail(spec, n) >= 1e-9) n += 1000;
  const auto dist = count_pmf(eigenvalues(spec, n));
  const auto q = count_quantiles(dist, std::vector<double>{0.005, 0.995});
  const double m = dist.mean(), sd = std::sqrt(dist.variance());
  const bool ok = std::abs(m - 999.25) < 0.01 && std::abs(sd - 22.4) < 0.05 && q[0] <= 985 && 985 <= q[1];
  return {ok, "N = " + std::to_string(n) + ", mean " + fmt("%.4f", m) + ", sd " + fmt("%.3f", sd) + ", [q0.005, q0.995] = [" +
                  std::to_string(q[0]) + ", " + std::to_string(q[1]) + "] contains 985"};
}

Outcome min_radius_law() {
  const std::size_t reps = 100000, count = 20;
  std::vector<double> mins(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    RandomStream rng(31, r, StreamPhase::moduli);
    const auto m = moduli_sample(count, rng);
    mins[r] = *std::min_element(m.begin(), m.end());
  }
  const double ks = ks_statistic(mins, [&](double x) { return min_radius_cdf(count, std::clamp(x, 0.0, 1.0)); });
  const double crit = ks_critical_value(reps, kSignificance);
  bool exact = true;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    exact = exact && min_radius_cdf(1, x) == x * x;
  }
  return {ks < crit && exact, "KS " + fmt("%.5f", ks) + " < " + fmt("%.5f", crit) + "; cdf(1, x) == x^2 on 1001 points"};
}

Outcome family_construction() {
  FamilySpec spec;
  spec.a0 = 0.2;
  spec.b0 = 0.3;
  spec.increments = GeometricSequence{0.1, 0.5};
  spec.rule = MidpointRule{};
  spec.intervals = 50;
  const auto fc = construct_family(spec);
  const auto& iv = fc.region.intervals();
  bool interleaved = iv.size() == 50;
  double logit = 0.0;
  for (std::size_t j = 0; j + 1 < iv.size(); ++j) {
    interleaved = interleaved && iv[j].outer_gap > iv[j + 1].inner_gap && iv[j + 1].width > 0.0;
    logit = std::max(logit, std::abs(logit_increment(iv[j + 1]) - fc.increments[j]));
  }
  const double closed = family_trace_closed_form(spec);
  const double series = eigenvalue_series_sum(fc.region) + fc.tail_mass;
  const auto p = check_properties(spec, 0.01);
  const bool witness = p.boundary_witness && p.predicted_witness && *p.boundary_witness <= *p.predicted_witness;
  const bool ok = interleaved && logit < 1e-12 && std::abs(closed - 0.2572344) < 1e-7 &&
                  std::abs(closed - series) < 1e-8 && witness;
  return {ok, "trace " + fmt("%.10f", closed) + " vs series " + fmt("%.10f", series) + "; max logit error " +
                  fmt("%.1e", logit) + "; witness at step " +
                  (p.boundary_witness ? std::to_string(*p.boundary_witness) : std::string("none")) +
                  " (predicted <= " + (p.predicted_witness ? std::to_string(*p.predicted_witness) : std::string("?")) +
                  "); measure margin " + fmt("%.6f", p.measure_margin)};
}

Outcome margin_signs() {
  const double a = convergence_margin(0.01, 100.0);
  const double b = convergence_margin(0.01, 1e4);
  return {a > 0.0 && b < -190.0, "margin(0.01, 100) = " + fmt("%.4f", a) + ", margin(0.01, 1e4) = " + fmt("%.4f", b)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "spectrum exactness", 1, spectrum_exactness},
      {2, "orthonormality", 5, orthonormality},
      {3, "trace identities", 1, trace_identities},
      {4, "bound dominance", 1, bound_dominance},
      {5, "chernoff validity", 1, chernoff_validity},
      {6, "count-law agreement", 30, count_law},
      {7, "single-index positional law", 60, positional_law},
      {8, "intensity profile", 600, intensity_profile},
      {9, "large-disc count plausibility", 10, figure_count},
      {10, "min-radius law", 10, min_radius_law},
      {11, "nested family construction", 1, family_construction},
      {12, "convergence margin signs", 1, margin_signs},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %2d %-28s %s  [%.2fs / %.0fs%s]  %s\n", c.id, c.title.c_str(), pass ? "PASS" : "FAIL", secs,
                c.budget_seconds, in_time ? "" : " OVER BUDGET", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
