#include "bergman/report.hpp"

#include <ostream>
#include <stdexcept>

#include "bergman/format.hpp"

namespace bergman {

Report::Report(Json config) {
  doc_ = {{"version", kToolVersion}, {"config", std::move(config)}, {"results", Json::array()}};
}

void Report::add(std::string name, Json values, std::optional<bool> verdict) {
  Json result = {{"name", std::move(name)}, {"values", std::move(values)}};
  if (verdict) result["verdict"] = *verdict;
  doc_["results"].push_back(std::move(result));
}

void Report::add(const GofReport& gof) {
  add(gof.name,
      {{"statistic", gof.statistic}, {"threshold", gof.threshold}, {"sample_size", gof.sample_size}},
      gof.passed);
}

bool Report::all_passed() const {
  for (const auto& r : doc_["results"]) {
    if (r.contains("verdict") && !r["verdict"].get<bool>()) return false;
  }
  return true;
}

Json to_json(const SampleMeta& meta) {
  return {{"region", meta.region},
          {"truncation", meta.truncation},
          {"seed", meta.seed},
          {"replica", meta.replica},
          {"active", meta.active},
          {"rejections", meta.rejections},
          {"total_proposals", meta.total_proposals},
          {"envelope_violations", meta.envelope_violations},
          {"acceptance_rate", meta.acceptance_rate()}};
}

Json to_json(const PointConfiguration& config) {
  Json points = Json::array();
  for (const auto& p : config.points) points.push_back({p.real(), p.imag()});
  return {{"points", std::move(points)}, {"meta", to_json(config.meta)}};
}

PointConfiguration point_configuration_from_json(const Json& j) {
  PointConfiguration config;
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument("point must be [re, im]");
    config.points.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  const Json& m = j.at("meta");
  config.meta.region = m.at("region").get<std::string>();
  config.meta.truncation = m.at("truncation").get<std::size_t>();
  config.meta.seed = m.at("seed").get<std::uint64_t>();
  config.meta.replica = m.at("replica").get<std::uint64_t>();
  config.meta.active = m.at("active").get<std::vector<std::size_t>>();
  config.meta.rejections = m.at("rejections").get<std::vector<std::uint64_t>>();
  config.meta.total_proposals = m.at("total_proposals").get<std::uint64_t>();
  config.meta.envelope_violations = m.at("envelope_violations").get<std::uint64_t>();
  return config;
}

PointConfiguration read_sample_json(std::string_view text) {
  const Json doc = Json::parse(text);
  for (const auto& r : doc.at("results")) {
    if (r.at("name") == "configuration") return point_configuration_from_json(r.at("values"));
  }
  throw std::invalid_argument("sample document has no configuration result");
}

void write_points_csv(std::ostream& out, const std::vector<ComplexPoint>& points) {
  out << "re,im\n";
  for (const auto& p : points) out << format_real(p.real()) << ',' << format_real(p.imag()) << '\n';
}

Json to_json(const Interval& interval) {
  return {{"inner", interval.inner},
          {"outer", interval.outer},
          {"inner_gap", interval.inner_gap},
          {"outer_gap", interval.outer_gap},
          {"width", interval.width}};
}

Json to_json(const PropertyReport& report) {
  Json j = {{"delta", report.delta},
            {"measure", report.measure},
            {"measure_margin", report.measure_margin},
            {"boundary_witness", nullptr}};
  if (report.boundary_witness) j["boundary_witness"] = *report.boundary_witness;
  if (report.rule_reaches_boundary) j["rule_reaches_boundary"] = *report.rule_reaches_boundary;
  if (report.predicted_witness) j["predicted_witness"] = *report.predicted_witness;
  return j;
}

Json to_json(const FiniteTraceReport& report) {
  Json j = {{"finite", report.finite}, {"diagnostic", report.diagnostic}, {"trace", nullptr}};
  if (report.trace) j["trace"] = *report.trace;
  return j;
}

Json to_json(const BoundReport& report) {
  return {{"radius", report.radius},
          {"beta", report.beta},
          {"truncation", report.truncation},
          {"N_R", report.constants.expected_count},
          {"g", report.constants.rate},
          {"wkr_theorem", report.wkr_theorem},
          {"wkr_exact_tail", report.wkr_exact_tail},
          {"coincidence_exact", report.coincidence_exact}};
}

Json to_json(const ChernoffCheck& check) {
  return {{"c", check.c},
          {"lower_exact", check.lower_exact},
          {"lower_bound", check.lower_bound},
          {"upper_exact", check.upper_exact},
          {"upper_bound", check.upper_bound}};
}

Json to_json(const IntensityReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"inner", r.bin.inner},
                    {"outer", r.bin.outer},
                    {"empirical_mean", r.empirical_mean},
                    {"expected", r.expected},
                    {"untruncated", r.untruncated},
                    {"standard_error", r.standard_error}});
  }
  return {{"statistic", report.gof.statistic},
          {"threshold", report.gof.threshold},
          {"sample_size", report.gof.sample_size},
          {"bins", std::move(rows)}};
}

}  // namespace bergman
