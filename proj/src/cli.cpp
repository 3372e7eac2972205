#include "bergman/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "bergman/bounds.hpp"
#include "bergman/format.hpp"
#include "bergman/literal.hpp"
#include "bergman/regions.hpp"
#include "bergman/report.hpp"
#include "bergman/sampler.hpp"
#include "bergman/spectral.hpp"
#include "bergman/statistics.hpp"
#include "bergman/verify.hpp"

namespace bergman::cli {

namespace {

struct Options {
  std::string region = "disc:0.9";
  std::optional<double> beta;
  std::optional<std::size_t> truncation;
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  std::optional<std::size_t> reps;
  std::size_t bins = 5;
  std::string out;
  std::string format;
  double tolerance = 1e-12;
  double radius = 0.9;
  std::vector<double> deltas = kDefaultDeltas;
  std::size_t count = 20;
  std::optional<double> epsilon;
  std::optional<double> conjecture_radius;
  std::vector<std::string> suites = {"all"};
  unsigned threads = 0;
};

Truncation truncation_of(const Options& o) {
  if (o.truncation) return FixedTruncation{*o.truncation};
  return ProportionalTruncation{o.beta.value_or(5.0)};
}

Json truncation_json(const Options& o) {
  if (o.truncation) return {{"N", *o.truncation}};
  return {{"beta", o.beta.value_or(5.0)}};
}

// Writes to --out when given, otherwise to the console stream.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file '" + o.out + "'");
  file << text;
}

std::string require_format(const std::string& format, const std::string& fallback) {
  const std::string f = format.empty() ? fallback : format;
  if (f != "csv" && f != "json") throw std::invalid_argument("--format must be csv or json");
  return f;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const auto spectrum = parse_spectrum_literal(o.region);
  if (!spectrum.is_bergman()) throw std::invalid_argument("sample: ginibre spectra have no sampler");
  SamplerConfig config{truncation_of(o), o.seed};
  const PointConfiguration pc = sample(spectrum, config, o.replica);
  if (require_format(o.format, "csv") == "csv") {
    std::ostringstream s;
    write_points_csv(s, pc.points);
    emit(o, out, s.str());
  } else {
    Json cfg = {{"subcommand", "sample"}, {"region", o.region}, {"seed", o.seed}, {"replica", o.replica}};
    cfg.update(truncation_json(o));
    Report report(cfg);
    report.add("configuration", to_json(pc));
    emit(o, out, report.dump() + "\n");
  }
  return kExitOk;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const auto spectrum = parse_spectrum_literal(o.region);
  const std::size_t n = o.truncation ? *o.truncation : default_truncation(spectrum, o.beta.value_or(5.0));
  const Eigen::VectorXd lambda = eigenvalues(spectrum, n);
  const double total = trace(spectrum, std::max(o.tolerance, 1e-15));
  const double tail = truncation_tail(spectrum, n, std::max(o.tolerance, 1e-15));
  if (require_format(o.format, "json") == "csv") {
    std::ostringstream s;
    s << "n,lambda\n";
    for (Eigen::Index i = 0; i < lambda.size(); ++i) s << i << ',' << format_real(lambda[i]) << '\n';
    emit(o, out, s.str());
    return kExitOk;
  }
  Json cfg = {{"subcommand", "spectrum"}, {"region", spectrum.label()}, {"N", n}, {"tol", o.tolerance}};
  Report report(cfg);
  report.add("eigenvalues", {{"lambda", std::vector<double>(lambda.data(), lambda.data() + lambda.size())}});
  report.add("trace", {{"trace", total}, {"truncated_sum", lambda.sum()}, {"truncation_tail", tail}});
  emit(o, out, report.dump() + "\n");
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const double beta = o.beta.value_or(5.0);
  const BoundReport b = make_bound_report(o.radius, beta, std::max(o.tolerance, 1e-15));
  Json cfg = {{"subcommand", "bounds"}, {"radius", o.radius}, {"beta", beta}, {"tol", o.tolerance}};
  Report report(cfg);
  report.add("bound_report", to_json(b), b.dominance_holds());
  const auto dist = count_pmf(eigenvalues(RestrictedSpectrum::disc(o.radius), b.truncation));
  Json rows = Json::array();
  bool ok = true;
  for (const auto& c : chernoff_audit(dist, kChernoffGrid)) {
    rows.push_back(to_json(c));
    ok = ok && c.holds();
  }
  report.add("chernoff", {{"mean", dist.mean()}, {"rows", rows}}, ok);
  if (o.epsilon) {
    const double n = o.truncation ? double(*o.truncation) : double(b.truncation);
    report.add("convergence_margin",
               {{"epsilon", *o.epsilon}, {"N", n}, {"margin", convergence_margin(*o.epsilon, n)}});
  }
  emit(o, out, report.dump() + "\n");
  return kExitOk;
}

int cmd_region(const Options& o, std::ostream& out) {
  const RegionLiteral parsed = parse_region_literal(o.region);
  Json cfg = {{"subcommand", "region"}, {"spec", o.region}, {"deltas", o.deltas}};
  Report report(cfg);
  RadialRegion region;
  Json trace_values;
  PropertySubject subject;
  if (const auto* spec = std::get_if<FamilySpec>(&parsed)) {
    const FamilyConstruction fc = construct_family(*spec);
    region = fc.region;
    subject = *spec;
    trace_values = {{"closed_form", family_trace_closed_form(*spec)},
                    {"materialized", region_trace(region)},
                    {"tail_mass", fc.tail_mass}};
    Json steps = Json::array();
    for (std::size_t j = 0; j + 1 < region.size(); ++j) {
      const auto& a = region.intervals()[j];
      const auto& b = region.intervals()[j + 1];
      steps.push_back({{"u", fc.increments[j]}, {"logit_increment", logit_increment(b)},
                       {"interleaved", a.outer < b.inner || a.outer_gap > b.inner_gap}});
    }
    report.add("steps", steps);
  } else {
    region = std::get<RadialRegion>(parsed);
    subject = region;
    trace_values = {{"closed_form", region_trace(region)}};
  }
  Json intervals = Json::array();
  for (const auto& iv : region.intervals()) intervals.push_back(to_json(iv));
  report.add("intervals", intervals);
  report.add("trace", trace_values);
  report.add("measure", {{"measure", region_measure(region)}});
  for (double d : o.deltas) report.add("properties", to_json(check_properties(subject, d)));
  RegionDescriptor desc = region;
  if (const auto* spec = std::get_if<FamilySpec>(&parsed)) desc = *spec;
  report.add("finite_trace", to_json(finite_trace_check(desc)));
  emit(o, out, report.dump() + "\n");
  return kExitOk;
}

int cmd_moduli(const Options& o, std::ostream& out) {
  const std::size_t reps = o.reps.value_or(1);
  if (o.conjecture_radius) {
    SamplerConfig config{truncation_of(o), o.seed};
    const ConjectureReport c = conjecture_experiment(*o.conjecture_radius, config, reps);
    Json cfg = {{"subcommand", "moduli"}, {"conjecture_radius", c.radius}, {"seed", o.seed}, {"reps", reps}};
    cfg.update(truncation_json(o));
    Report report(cfg);
    Json rows = Json::array();
    for (const auto& q : c.quantiles) {
      rows.push_back({{"order", q.order}, {"p", q.probability}, {"sampled", q.sampled},
                      {"literal", q.literal}, {"capped", q.capped}, {"support", q.support}});
    }
    report.add("conjecture", {{"nonempty", c.nonempty}, {"ks_min_literal", c.ks_min_literal},
                              {"ks_min_capped", c.ks_min_capped}, {"quantiles", rows}});
    emit(o, out, report.dump() + "\n");
    return kExitOk;
  }
  std::vector<std::vector<double>> draws;
  for (std::size_t r = 0; r < reps; ++r) {
    RandomStream rng(o.seed, r, StreamPhase::moduli);
    draws.push_back(moduli_sample(o.count, rng));
  }
  if (require_format(o.format, "csv") == "csv") {
    std::ostringstream s;
    s << "replica,k,modulus\n";
    for (std::size_t r = 0; r < reps; ++r) {
      for (std::size_t k = 0; k < draws[r].size(); ++k) s << r << ',' << k + 1 << ',' << format_real(draws[r][k]) << '\n';
    }
    emit(o, out, s.str());
  } else {
    Report report({{"subcommand", "moduli"}, {"count", o.count}, {"reps", reps}, {"seed", o.seed}});
    report.add("moduli", {{"draws", draws}});
    emit(o, out, report.dump() + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify suites

void suite_spectrum(Report& report) {
  const auto d5 = RestrictedSpectrum::disc(0.5);
  const bool exact = eigenvalue(d5, 0) == 0.25 && eigenvalue(d5, 3) == 0.00390625 &&
                     eigenvalue(RestrictedSpectrum::annulus(0.5, 0.9), 0) == 0.56;
  report.add("eigenvalue_exactness", {{"disc_0.5_n0", eigenvalue(d5, 0)}, {"disc_0.5_n3", eigenvalue(d5, 3)}},
             exact);
  for (const auto& s : {RestrictedSpectrum::disc(0.8), RestrictedSpectrum::annulus(0.5, 0.9)}) {
    const Eigen::MatrixXcd g = orthonormality_gram(s, 10);
    const double err = (g - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff();
    report.add("orthonormality " + s.label(), {{"max_abs_error", err}}, err < 1e-8);
  }
  const double t = trace(RestrictedSpectrum::disc(0.9));
  report.add("trace disc:0.9", {{"trace", t}}, std::abs(t - 0.81 / 0.19) < 1e-12);
  for (double r : {0.5, 1.0, 2.0}) {
    const double tg = trace(RestrictedSpectrum::ginibre(r), 1e-12);
    report.add("trace ginibre:" + format_real(r), {{"trace", tg}}, std::abs(tg - r * r) < 1e-8);
  }
}

void suite_bounds(Report& report) {
  for (const auto& row : bound_audit(kAuditRadii, kAuditBetas)) {
    Json v = to_json(row.report);
    v["truncated_mean"] = row.truncated_mean;
    Json rows = Json::array();
    for (const auto& c : row.chernoff) rows.push_back(to_json(c));
    v["chernoff"] = rows;
    report.add("bound_audit", v, row.passed);
  }
  const double m1 = convergence_margin(0.01, 100.0);
  const double m2 = convergence_margin(0.01, 1e4);
  report.add("convergence_margin", {{"eps_0.01_N_100", m1}, {"eps_0.01_N_10000", m2}}, m1 > 0 && m2 < -190);
}

void suite_counts(Report& report, const Options& o) {
  const auto spectrum = parse_spectrum_literal(o.region);
  SamplerConfig config{truncation_of(o), o.seed};
  const std::size_t n = resolve_truncation(spectrum, config);
  const auto dist = count_pmf(eigenvalues(spectrum, n));
  const CountStats stats = mc_count_stats(spectrum, config, o.reps.value_or(100000),
                                          CountSource::bernoulli_phase, o.threads);
  report.add(chi_square_count_test(stats.histogram, dist));
  report.add("count_mean",
             {{"empirical", stats.mean}, {"exact", dist.mean()}, {"standard_error", stats.standard_error},
              {"empirical_variance", stats.variance}, {"exact_variance", dist.variance()}},
             std::abs(stats.mean - dist.mean()) <= 4.0 * stats.standard_error);
}

void suite_positional(Report& report, const Options& o) {
  const std::size_t reps = o.reps.value_or(100000);
  const auto spectrum = RestrictedSpectrum::disc(0.8);
  for (std::size_t index : {std::size_t{0}, std::size_t{3}}) {
    std::vector<double> radii(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      RandomStream rng(o.seed, r, StreamPhase::positions);
      radii[r] = std::abs(hkpv_sample(spectrum, ActiveIndexSet{{index}}, rng).points.at(0));
    }
    const double power = 2.0 * double(index) + 2.0;
    const double ks = ks_statistic(radii, [&](double x) { return std::pow(std::clamp(x / 0.8, 0.0, 1.0), power); });
    report.add(make_gof("radial KS disc:0.8 index " + std::to_string(index), ks,
                        ks_critical_value(reps, kSignificance), reps));
  }
}

void suite_intensity(Report& report, const Options& o) {
  const auto spectrum = parse_spectrum_literal(o.region);
  if (!spectrum.is_bergman()) throw std::invalid_argument("intensity suite needs a Bergman region");
  SamplerConfig config{truncation_of(o), o.seed};
  const std::size_t reps = o.reps.value_or(10000);
  std::vector<PointConfiguration> configs;
  configs.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) configs.push_back(sample(spectrum, config, r));
  std::vector<RadialBin> bins;
  for (const auto& iv : spectrum.support().intervals()) {
    for (std::size_t b = 0; b < o.bins; ++b) {
      const double step = (iv.outer - iv.inner) / double(o.bins);
      bins.push_back({iv.inner + step * double(b), b + 1 == o.bins ? iv.outer : iv.inner + step * double(b + 1)});
    }
  }
  const IntensityReport ir = intensity_profile_test(configs, spectrum, bins);
  report.add("intensity-profile hotelling", to_json(ir), ir.gof.passed);
}

void suite_minradius(Report& report, const Options& o) {
  const std::size_t reps = o.reps.value_or(100000);
  const std::size_t n = 20;
  std::vector<double> mins(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    RandomStream rng(o.seed, r, StreamPhase::moduli);
    const auto m = moduli_sample(n, rng);
    mins[r] = *std::min_element(m.begin(), m.end());
  }
  const double ks = ks_statistic(mins, [&](double x) { return min_radius_cdf(n, std::clamp(x, 0.0, 1.0)); });
  report.add(make_gof("min-radius KS n=20", ks, ks_critical_value(reps, kSignificance), reps));
}

void suite_family(Report& report) {
  FamilySpec spec;  // a0 = 0.2, b0 = 0.3, u = 0.1 * 0.5^n, midpoint, K = 50
  const FamilyConstruction fc = construct_family(spec);
  const auto& iv = fc.region.intervals();
  bool interleaved = true;
  double logit_err = 0.0;
  for (std::size_t j = 0; j + 1 < iv.size(); ++j) {
    interleaved = interleaved && iv[j].outer_gap > iv[j + 1].inner_gap && iv[j + 1].width > 0.0;
    logit_err = std::max(logit_err, std::abs(logit_increment(iv[j + 1]) - fc.increments[j]));
  }
  const double closed = family_trace_closed_form(spec);
  const double series = eigenvalue_series_sum(fc.region) + fc.tail_mass;
  const PropertyReport p = check_properties(spec, 0.01);
  const bool witness = p.boundary_witness && p.predicted_witness && *p.boundary_witness <= *p.predicted_witness;
  report.add("family", {{"intervals", iv.size()}, {"max_logit_error", logit_err}, {"closed_form_trace", closed},
                        {"series_trace", series}, {"measure_margin", p.measure_margin},
                        {"witness", p.boundary_witness ? Json(*p.boundary_witness) : Json(nullptr)},
                        {"predicted_witness", p.predicted_witness ? Json(*p.predicted_witness) : Json(nullptr)}},
             interleaved && logit_err < 1e-12 && std::abs(closed - series) < 1e-8 && witness);
}

int cmd_verify(const Options& o, std::ostream& out) {
  static const std::vector<std::string> known = {"spectrum", "bounds", "counts", "positional",
                                                 "intensity", "minradius", "family"};
  std::vector<std::string> suites;
  for (const auto& s : o.suites) {
    if (s == "all") {
      suites.insert(suites.end(), known.begin(), known.end());
    } else if (std::find(known.begin(), known.end(), s) != known.end()) {
      suites.push_back(s);
    } else {
      throw std::invalid_argument("unknown verify suite '" + s + "'");
    }
  }
  Json cfg = {{"subcommand", "verify"}, {"suites", suites}, {"region", o.region}, {"seed", o.seed},
              {"alpha", kSignificance}};
  cfg.update(truncation_json(o));
  if (o.reps) cfg["reps"] = *o.reps;
  Report report(cfg);
  for (const auto& s : suites) {
    if (s == "spectrum") suite_spectrum(report);
    if (s == "bounds") suite_bounds(report);
    if (s == "counts") suite_counts(report, o);
    if (s == "positional") suite_positional(report, o);
    if (s == "intensity") suite_intensity(report, o);
    if (s == "minradius") suite_minradius(report, o);
    if (s == "family") suite_family(report);
  }
  emit(o, out, report.dump() + "\n");
  return report.all_passed() ? kExitOk : kExitVerification;
}

void add_truncation(CLI::App* app, Options& o) {
  auto* beta = app->add_option("--beta", o.beta, "Truncation N = ceil(beta * trace) (default 5)");
  auto* n = app->add_option("--N", o.truncation, "Explicit truncation N");
  beta->excludes(n);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bergman determinantal point process simulator and verification toolkit", "bergman-dpp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;

  auto* sample = app.add_subcommand("sample", "Draw one point configuration");
  sample->add_option("--region", o.region, "Region literal")->required();
  add_truncation(sample, o);
  sample->add_option("--seed", o.seed, "Seed (default 0)");
  sample->add_option("--replica", o.replica, "Replica index (default 0)");
  sample->add_option("--out", o.out, "Output file (default stdout)");
  sample->add_option("--format", o.format, "csv (default) or json");

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues up to N and the trace");
  spectrum->add_option("--region", o.region, "Region literal, or ginibre:R")->required();
  add_truncation(spectrum, o);
  spectrum->add_option("--tol", o.tolerance, "Series tolerance");
  spectrum->add_option("--out", o.out, "Output file");
  spectrum->add_option("--format", o.format, "json (default) or csv");

  auto* bounds = app.add_subcommand("bounds", "Truncation bounds on the disc of radius R");
  bounds->add_option("--radius", o.radius, "Disc radius R in (0, 1)")->required();
  add_truncation(bounds, o);
  bounds->add_option("--epsilon", o.epsilon, "Also report the convergence margin at 1 - epsilon");
  bounds->add_option("--tol", o.tolerance, "Tolerance of the exact coincidence product");
  bounds->add_option("--out", o.out, "Output file");

  auto* region = app.add_subcommand("region", "Validate a region or family and report its properties");
  region->add_option("--spec", o.region, "Region literal")->required();
  region->add_option("--delta", o.deltas, "Boundary scales (default 0.1 0.01 0.001)");
  region->add_option("--out", o.out, "Output file");

  auto* moduli = app.add_subcommand("moduli", "Moduli U_k^{1/(2k)} of the unrestricted process");
  moduli->add_option("--count", o.count, "Moduli per replica (default 20)");
  moduli->add_option("--reps", o.reps, "Replicas (default 1)");
  moduli->add_option("--seed", o.seed, "Seed (default 0)");
  moduli->add_option("--conjecture-radius", o.conjecture_radius,
                     "Compare restricted moduli on disc:R with the product-law readings");
  add_truncation(moduli, o);
  moduli->add_option("--out", o.out, "Output file");
  moduli->add_option("--format", o.format, "csv (default) or json");

  auto* verify = app.add_subcommand("verify", "Run verification suites; exit 2 if any gate fails");
  verify->add_option("--suite", o.suites,
                     "all, spectrum, bounds, counts, positional, intensity, minradius, family");
  verify->add_option("--region", o.region, "Region for counts/intensity (default disc:0.9)");
  add_truncation(verify, o);
  verify->add_option("--seed", o.seed, "Seed (default 0)");
  verify->add_option("--reps", o.reps, "Replicas for Monte Carlo suites");
  verify->add_option("--bins", o.bins, "Radial bins per interval (default 5)");
  verify->add_option("--threads", o.threads, "Worker threads for count replicas (0 = all)");
  verify->add_option("--out", o.out, "Output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*sample) return cmd_sample(o, out);
    if (*spectrum) return cmd_spectrum(o, out);
    if (*bounds) return cmd_bounds(o, out);
    if (*region) return cmd_region(o, out);
    if (*moduli) return cmd_moduli(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace bergman::cli
