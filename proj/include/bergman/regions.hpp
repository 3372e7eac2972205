#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bergman {

/// Closed radius interval [inner, outer] inside [0, 1).
///
/// Besides the radii, each interval carries the squared complements
/// 1 - r^2 of both endpoints and its squared width outer^2 - inner^2. Intervals
/// produced by the nested-annulus construction crowd against the unit circle
/// with widths far below the spacing of doubles near 1, so every spectral
/// quantity is computed from these three numbers rather than from the radii.
struct Interval {
  double inner = 0.0;
  double outer = 0.0;
  double inner_gap = 1.0;  // 1 - inner^2
  double outer_gap = 1.0;  // 1 - outer^2
  double width = 0.0;      // outer^2 - inner^2

  static Interval from_radii(double inner, double outer);
  /// Builds an interval from its squared complements; `width` must equal
  /// inner_gap - outer_gap but is passed separately to keep it exact.
  static Interval from_gaps(double inner_gap, double outer_gap, double width);

  bool operator==(const Interval&) const = default;
};

/// Z(A) for A a finite ordered union of disjoint closed intervals.
class RadialRegion {
 public:
  RadialRegion() = default;

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }

  /// Largest radius of the region; 0 for the empty region.
  double outer_radius() const;
  /// 1 - outer_radius()^2, carried exactly.
  double outer_gap() const;

  /// Whether |z| = radius lies in A, allowing `tolerance` slack on each end.
  bool contains_radius(double radius, double tolerance = 1e-12) const;

  bool operator==(const RadialRegion&) const = default;

  friend RadialRegion make_region(const std::vector<std::pair<double, double>>&);
  friend RadialRegion make_region(std::vector<Interval>);

 private:
  explicit RadialRegion(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {}
  std::vector<Interval> intervals_;
};

/// Validates and builds a region from radius pairs. Touching intervals are
/// merged. Throws std::invalid_argument naming the violated invariant.
RadialRegion make_region(const std::vector<std::pair<double, double>>& intervals);
RadialRegion make_region(std::vector<Interval> intervals);

RadialRegion disc_region(double radius);
RadialRegion annulus_region(double inner, double outer);

/// Lebesgue measure sum_j pi (b_j^2 - a_j^2).
double region_measure(const RadialRegion& region);

/// Trace of the restricted Bergman operator, sum_j b_j^2/(1-b_j^2) - a_j^2/(1-a_j^2).
double region_trace(const RadialRegion& region);

// ---------------------------------------------------------------------------
// Nested-annulus families with finite trace.

struct GeometricSequence {
  double first = 0.1;
  double ratio = 0.5;
};

struct ExplicitSequence {
  std::vector<double> terms;
};

/// Positive summable increments u_n.
using IncrementSequence = std::variant<GeometricSequence, ExplicitSequence>;

/// a_{n+1} = (b_n + 1) / 2.
struct MidpointRule {};
/// a_{n+1} = b_n + theta (1 - b_n), theta in (0, 1).
struct OffsetRule {
  double theta = 0.5;
};
using AdvanceRule = std::variant<MidpointRule, OffsetRule>;

struct FamilySpec {
  double a0 = 0.2;
  double b0 = 0.3;
  IncrementSequence increments = GeometricSequence{};
  AdvanceRule rule = MidpointRule{};
  std::size_t intervals = 50;  // materialization horizon K
};

/// Throws std::invalid_argument if the spec is malformed.
void validate(const FamilySpec& spec);

/// Number of increments available (nullopt for an infinite sequence).
std::optional<std::size_t> increment_count(const IncrementSequence& seq);
double increment(const IncrementSequence& seq, std::size_t n);
/// sum_{k >= from} u_k in closed form.
double increment_tail(const IncrementSequence& seq, std::size_t from);

/// Fraction theta by which the rule advances into the gap (b_n, 1).
double advance_fraction(const AdvanceRule& rule);

struct FamilyConstruction {
  RadialRegion region;            // first materialized intervals
  std::vector<double> increments; // u_0 .. used to build intervals 1..K-1
  double tail_mass = 0.0;         // sum of the increments not materialized
};

/// Runs the recurrence b_{n+1}^2/(1-b_{n+1}^2) = a_{n+1}^2/(1-a_{n+1}^2) + u_n.
/// Materializes min(K, available increments + 1) intervals.
FamilyConstruction construct_family(const FamilySpec& spec);

/// Exact trace of the infinite family: b0^2/(1-b0^2) - a0^2/(1-a0^2) + sum u_k.
double family_trace_closed_form(const FamilySpec& spec);

/// b^2/(1-b^2) - a^2/(1-a^2) for one interval, evaluated without cancellation.
double logit_increment(const Interval& interval);

// ---------------------------------------------------------------------------
// Boundary properties.

struct PropertyReport {
  double delta = 0.0;
  /// Index of the first interval holding an open sub-interval of (1-delta, 1).
  std::optional<std::size_t> boundary_witness;
  double measure = 0.0;
  double measure_margin = 0.0;  // pi - measure
  /// Families only: the rule drives a_n -> 1.
  std::optional<bool> rule_reaches_boundary;
  /// Families only: interval index by which a_n > 1 - delta is guaranteed.
  std::optional<std::size_t> predicted_witness;
};

using PropertySubject = std::variant<RadialRegion, FamilySpec>;

PropertyReport check_properties(const PropertySubject& subject, double delta);

/// Predicted index n with a_n > 1 - delta: ceil(log((1 - b0)/delta) / log(1/(1-theta))).
std::size_t predicted_boundary_steps(const FamilySpec& spec, double delta);

inline const std::vector<double> kDefaultDeltas = {0.1, 0.01, 0.001};

/// A region containing the boundary annulus Z([1 - epsilon, 1]).
struct BoundaryAnnulus {
  double epsilon = 0.01;
};

using RegionDescriptor = std::variant<RadialRegion, FamilySpec, BoundaryAnnulus>;

struct FiniteTraceReport {
  bool finite = true;
  std::optional<double> trace;
  std::string diagnostic;
};

FiniteTraceReport finite_trace_check(const RegionDescriptor& descriptor);

}  // namespace bergman
