#include "bergman/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bergman {
namespace {

std::string describe(double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << '[' << a << ", " << b << ']';
  return os.str();
}

[[noreturn]] void reject(const std::string& what) {
  throw std::invalid_argument("region: " + what);
}

// 1 - r for a radius given by its squared complement s = 1 - r^2.
double linear_gap(double s) { return s / (1.0 + std::sqrt(1.0 - s)); }

}  // namespace

Interval Interval::from_radii(double inner, double outer) {
  Interval iv;
  iv.inner = inner;
  iv.outer = outer;
  iv.inner_gap = (1.0 - inner) * (1.0 + inner);
  iv.outer_gap = (1.0 - outer) * (1.0 + outer);
  iv.width = (outer - inner) * (outer + inner);
  return iv;
}

Interval Interval::from_gaps(double inner_gap, double outer_gap, double width) {
  Interval iv;
  iv.inner_gap = inner_gap;
  iv.outer_gap = outer_gap;
  iv.width = width;
  iv.inner = std::sqrt(1.0 - inner_gap);
  iv.outer = std::sqrt(1.0 - outer_gap);
  return iv;
}

double RadialRegion::outer_radius() const {
  return intervals_.empty() ? 0.0 : intervals_.back().outer;
}

double RadialRegion::outer_gap() const {
  return intervals_.empty() ? 1.0 : intervals_.back().outer_gap;
}

bool RadialRegion::contains_radius(double radius, double tolerance) const {
  for (const auto& iv : intervals_) {
    if (radius >= iv.inner - tolerance && radius <= iv.outer + tolerance) return true;
  }
  return false;
}

RadialRegion make_region(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<Interval> merged;
  merged.reserve(pairs.size());
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const auto [a, b] = pairs[j];
    if (!std::isfinite(a) || !std::isfinite(b)) reject("non-finite radius in " + describe(a, b));
    if (a < 0.0) reject("inner radius must be >= 0 in " + describe(a, b));
    if (!(a < b)) reject("interval " + describe(a, b) + " must satisfy inner < outer");
    if (!(b < 1.0)) reject("outer radius must be < 1 (finite trace) in " + describe(a, b));
    if (!merged.empty()) {
      const Interval& prev = merged.back();
      if (a < prev.inner) {
        reject("intervals must be ordered by radius: " + describe(a, b) + " follows " +
               describe(prev.inner, prev.outer));
      }
      if (a < prev.outer) {
        reject("intervals " + describe(prev.inner, prev.outer) + " and " + describe(a, b) +
               " overlap");
      }
      if (a == prev.outer) {
        merged.back() = Interval::from_radii(prev.inner, b);
        continue;
      }
    }
    merged.push_back(Interval::from_radii(a, b));
  }
  return RadialRegion(std::move(merged));
}

// Gaps of very thin intervals near the circle may coincide in double; the
// carried width is what distinguishes them, so only its sign is required.
RadialRegion make_region(std::vector<Interval> intervals) {
  std::vector<Interval> merged;
  merged.reserve(intervals.size());
  for (const auto& iv : intervals) {
    if (!(iv.inner_gap <= 1.0) || !(iv.outer_gap > 0.0) || !(iv.width > 0.0) ||
        !(iv.outer_gap <= iv.inner_gap)) {
      reject("interval " + describe(iv.inner, iv.outer) +
             " must satisfy 0 <= inner < outer < 1");
    }
    if (!merged.empty()) {
      Interval& prev = merged.back();
      if (iv.inner_gap > prev.outer_gap) {
        reject("intervals " + describe(prev.inner, prev.outer) + " and " +
               describe(iv.inner, iv.outer) + " overlap or are out of order");
      }
      if (iv.inner_gap == prev.outer_gap) {
        prev = Interval::from_gaps(prev.inner_gap, iv.outer_gap, prev.width + iv.width);
        continue;
      }
    }
    merged.push_back(iv);
  }
  return RadialRegion(std::move(merged));
}

RadialRegion disc_region(double radius) { return make_region(std::vector<std::pair<double, double>>{{0.0, radius}}); }

RadialRegion annulus_region(double inner, double outer) {
  return make_region(std::vector<std::pair<double, double>>{{inner, outer}});
}

double region_measure(const RadialRegion& region) {
  double area = 0.0;
  for (const auto& iv : region.intervals()) area += iv.width;
  return std::numbers::pi * area;
}

double logit_increment(const Interval& iv) {
  return iv.width / (iv.inner_gap * iv.outer_gap);
}

double region_trace(const RadialRegion& region) {
  double trace = 0.0;
  for (const auto& iv : region.intervals()) trace += logit_increment(iv);
  return trace;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> increment_count(const IncrementSequence& seq) {
  if (const auto* list = std::get_if<ExplicitSequence>(&seq)) return list->terms.size();
  return std::nullopt;
}

double increment(const IncrementSequence& seq, std::size_t n) {
  if (const auto* geo = std::get_if<GeometricSequence>(&seq)) {
    return geo->first * std::pow(geo->ratio, static_cast<double>(n));
  }
  return std::get<ExplicitSequence>(seq).terms.at(n);
}

double increment_tail(const IncrementSequence& seq, std::size_t from) {
  if (const auto* geo = std::get_if<GeometricSequence>(&seq)) {
    return geo->first * std::pow(geo->ratio, static_cast<double>(from)) / (1.0 - geo->ratio);
  }
  const auto& terms = std::get<ExplicitSequence>(seq).terms;
  double sum = 0.0;
  for (std::size_t k = from; k < terms.size(); ++k) sum += terms[k];
  return sum;
}

double advance_fraction(const AdvanceRule& rule) {
  if (const auto* offset = std::get_if<OffsetRule>(&rule)) return offset->theta;
  return 0.5;
}

void validate(const FamilySpec& spec) {
  if (!(spec.a0 > 0.0 && spec.a0 < spec.b0 && spec.b0 < 1.0)) {
    throw std::invalid_argument("family: requires 0 < a0 < b0 < 1");
  }
  if (spec.intervals == 0) throw std::invalid_argument("family: K must be >= 1");
  if (const auto* geo = std::get_if<GeometricSequence>(&spec.increments)) {
    if (!(geo->first > 0.0) || !std::isfinite(geo->first)) {
      throw std::invalid_argument("family: geometric u0 must be positive");
    }
    if (!(geo->ratio > 0.0 && geo->ratio < 1.0)) {
      throw std::invalid_argument("family: geometric ratio q must lie in (0, 1)");
    }
  } else {
    for (double u : std::get<ExplicitSequence>(spec.increments).terms) {
      if (!(u > 0.0) || !std::isfinite(u)) {
        throw std::invalid_argument("family: explicit increments must be positive and finite");
      }
    }
  }
  const double theta = advance_fraction(spec.rule);
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("family: offset rule theta must lie in (0, 1)");
  }
}

FamilyConstruction construct_family(const FamilySpec& spec) {
  validate(spec);
  std::size_t count = spec.intervals;
  if (const auto available = increment_count(spec.increments)) {
    count = std::min(count, *available + 1);
  }
  const double keep = 1.0 - advance_fraction(spec.rule);

  FamilyConstruction out;
  std::vector<Interval> intervals;
  intervals.reserve(count);
  intervals.push_back(Interval::from_radii(spec.a0, spec.b0));
  double outer_linear_gap = 1.0 - spec.b0;
  for (std::size_t n = 0; n + 1 < count; ++n) {
    const double u = increment(spec.increments, n);
    const double inner_linear_gap = keep * outer_linear_gap;
    if (!(inner_linear_gap > 0.0)) {
      throw std::invalid_argument("family: advance rule produced a_" + std::to_string(n + 1) +
                                  " >= 1 (gap to the unit circle underflowed)");
    }
    if (!(inner_linear_gap < outer_linear_gap)) {
      throw std::invalid_argument("family: advance rule produced a_" + std::to_string(n + 1) +
                                  " <= b_" + std::to_string(n));
    }
    const double sa = inner_linear_gap * (2.0 - inner_linear_gap);
    const double sb = sa / (1.0 + u * sa);
    intervals.push_back(Interval::from_gaps(sa, sb, u * sa * sb));
    out.increments.push_back(u);
    outer_linear_gap = linear_gap(sb);
  }
  out.region = make_region(std::move(intervals));
  out.tail_mass = increment_tail(spec.increments, count - 1);
  return out;
}

double family_trace_closed_form(const FamilySpec& spec) {
  validate(spec);
  return logit_increment(Interval::from_radii(spec.a0, spec.b0)) +
         increment_tail(spec.increments, 0);
}

// ---------------------------------------------------------------------------

std::size_t predicted_boundary_steps(const FamilySpec& spec, double delta) {
  const double gap0 = 1.0 - spec.b0;
  const double shrink = -std::log1p(-advance_fraction(spec.rule));
  if (gap0 < delta) return 1;
  return static_cast<std::size_t>(std::floor(std::log(gap0 / delta) / shrink)) + 1;
}

PropertyReport check_properties(const PropertySubject& subject, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("check_properties: delta must lie in (0, 1]");
  }
  PropertyReport report;
  report.delta = delta;
  const RadialRegion* region = std::get_if<RadialRegion>(&subject);
  FamilyConstruction family;
  if (const auto* spec = std::get_if<FamilySpec>(&subject)) {
    family = construct_family(*spec);
    region = &family.region;
    // Both rules shrink 1 - a_n geometrically, so a_n -> 1.
    report.rule_reaches_boundary = true;
    report.predicted_witness = predicted_boundary_steps(*spec, delta);
  }
  // b > 1 - delta  <=>  1 - b^2 < delta (2 - delta)
  const double threshold = delta * (2.0 - delta);
  const auto& ivs = region->intervals();
  for (std::size_t j = 0; j < ivs.size(); ++j) {
    if (ivs[j].width > 0.0 && ivs[j].outer_gap < threshold) {
      report.boundary_witness = j;
      break;
    }
  }
  report.measure = region_measure(*region);
  report.measure_margin = std::numbers::pi - report.measure;
  return report;
}

FiniteTraceReport finite_trace_check(const RegionDescriptor& descriptor) {
  FiniteTraceReport report;
  std::ostringstream os;
  os.precision(17);
  if (const auto* region = std::get_if<RadialRegion>(&descriptor)) {
    const double b = region->outer_radius();
    report.trace = region_trace(*region);
    os << "outer radius " << b << " < 1, trace <= b^2/(1-b^2) = "
       << (1.0 - region->outer_gap()) / region->outer_gap();
  } else if (const auto* spec = std::get_if<FamilySpec>(&descriptor)) {
    report.trace = family_trace_closed_form(*spec);
    os << "nested-annulus family: trace = b0^2/(1-b0^2) - a0^2/(1-a0^2) + sum u_k = "
       << *report.trace;
  } else {
    const double eps = std::get<BoundaryAnnulus>(descriptor).epsilon;
    if (!(eps > 0.0 && eps <= 1.0)) {
      throw std::invalid_argument("finite_trace_check: epsilon must lie in (0, 1]");
    }
    report.finite = false;
    os << "region contains Z([" << 1.0 - eps << ", 1]); lambda_n >= 1 - (1 - " << eps
       << ")^(2n+2) -> 1, so the trace diverges and the process has infinitely many points";
  }
  report.diagnostic = os.str();
  return report;
}

}  // namespace bergman
