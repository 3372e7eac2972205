#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bergman/bounds.hpp"
#include "bergman/regions.hpp"
#include "bergman/sampler.hpp"
#include "bergman/verify.hpp"

namespace bergman {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// {version, config, results: [{name, values, verdict?}]}
class Report {
 public:
  explicit Report(Json config);

  void add(std::string name, Json values, std::optional<bool> verdict = std::nullopt);
  void add(const GofReport& gof);

  /// True unless some result carries a false verdict.
  bool all_passed() const;
  const Json& json() const { return doc_; }
  std::string dump() const { return doc_.dump(2); }

 private:
  Json doc_;
};

Json to_json(const SampleMeta& meta);
Json to_json(const PointConfiguration& config);
PointConfiguration point_configuration_from_json(const Json& j);

/// Parses the document written by `sample --format json`.
PointConfiguration read_sample_json(std::string_view text);

/// `re,im` header, then one point per row in round-trip precision.
void write_points_csv(std::ostream& out, const std::vector<ComplexPoint>& points);

Json to_json(const Interval& interval);
Json to_json(const PropertyReport& report);
Json to_json(const FiniteTraceReport& report);
Json to_json(const BoundReport& report);
Json to_json(const ChernoffCheck& check);
Json to_json(const IntensityReport& report);

}  // namespace bergman
