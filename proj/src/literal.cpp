#include "bergman/literal.hpp"

#include <charconv>
#include <stdexcept>
#include <string>
#include <vector>

#include "bergman/format.hpp"

namespace bergman {

namespace {

[[noreturn]] void malformed(std::string_view text, const std::string& why) {
  throw std::invalid_argument("malformed region literal '" + std::string(text) + "': " + why);
}

double parse_real(std::string_view literal, std::string_view field) {
  double value = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    malformed(literal, "expected a number, got '" + std::string(field) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view literal, std::string_view field) {
  std::size_t value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    malformed(literal, "expected a non-negative integer, got '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// The '-' separating a and b, skipping exponent signs such as 1e-3.
std::size_t range_dash(std::string_view s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '-' && s[i - 1] != 'e' && s[i - 1] != 'E') return i;
  }
  return std::string_view::npos;
}

FamilySpec parse_family(std::string_view text, std::string_view body) {
  FamilySpec spec;
  GeometricSequence geo;
  bool seen_a0 = false, seen_b0 = false, seen_u0 = false, seen_q = false;
  for (std::string_view item : split(body, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) malformed(text, "expected key=value, got '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (key == "a0") {
      spec.a0 = parse_real(text, value);
      seen_a0 = true;
    } else if (key == "b0") {
      spec.b0 = parse_real(text, value);
      seen_b0 = true;
    } else if (key == "u0") {
      geo.first = parse_real(text, value);
      seen_u0 = true;
    } else if (key == "q") {
      geo.ratio = parse_real(text, value);
      seen_q = true;
    } else if (key == "K") {
      spec.intervals = parse_count(text, value);
    } else if (key == "rule") {
      if (value == "midpoint") {
        spec.rule = MidpointRule{};
      } else if (value.starts_with("offset:")) {
        spec.rule = OffsetRule{parse_real(text, value.substr(7))};
      } else {
        malformed(text, "rule must be midpoint or offset:theta");
      }
    } else {
      malformed(text, "unknown family key '" + std::string(key) + "'");
    }
  }
  if (!(seen_a0 && seen_b0 && seen_u0 && seen_q)) malformed(text, "family needs a0, b0, u0 and q");
  spec.increments = geo;
  validate(spec);
  return spec;
}

}  // namespace

RegionLiteral parse_region_literal(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) malformed(text, "missing ':' after the region kind");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (kind == "disc") return disc_region(parse_real(text, body));
  if (kind == "annulus") {
    const auto parts = split(body, ':');
    if (parts.size() != 2) malformed(text, "annulus takes r:R");
    return annulus_region(parse_real(text, parts[0]), parse_real(text, parts[1]));
  }
  if (kind == "intervals") {
    std::vector<std::pair<double, double>> pairs;
    for (std::string_view item : split(body, ',')) {
      const std::size_t dash = range_dash(item);
      if (dash == std::string_view::npos) malformed(text, "interval '" + std::string(item) + "' is not a-b");
      pairs.emplace_back(parse_real(text, item.substr(0, dash)), parse_real(text, item.substr(dash + 1)));
    }
    return make_region(pairs);
  }
  if (kind == "family") return parse_family(text, body);
  malformed(text, "unknown region kind '" + std::string(kind) + "'");
}

RestrictedSpectrum parse_spectrum_literal(std::string_view text) {
  if (text.starts_with("ginibre:")) return RestrictedSpectrum::ginibre(parse_real(text, text.substr(8)));
  if (text.starts_with("disc:")) return RestrictedSpectrum::disc(parse_real(text, text.substr(5)));
  if (text.starts_with("annulus:")) {
    const auto parts = split(text.substr(8), ':');
    if (parts.size() != 2) malformed(text, "annulus takes r:R");
    return RestrictedSpectrum::annulus(parse_real(text, parts[0]), parse_real(text, parts[1]));
  }
  const RegionLiteral parsed = parse_region_literal(text);
  if (const auto* spec = std::get_if<FamilySpec>(&parsed)) {
    return RestrictedSpectrum::region(construct_family(*spec).region, std::string(text));
  }
  return RestrictedSpectrum::region(std::get<RadialRegion>(parsed));
}

std::string family_literal(const FamilySpec& spec) {
  const auto* geo = std::get_if<GeometricSequence>(&spec.increments);
  if (geo == nullptr) throw std::invalid_argument("family_literal: only geometric increments have a literal");
  std::string out = "family:a0=" + format_real(spec.a0) + ",b0=" + format_real(spec.b0) +
                    ",u0=" + format_real(geo->first) + ",q=" + format_real(geo->ratio) +
                    ",K=" + std::to_string(spec.intervals) + ",rule=";
  if (std::holds_alternative<MidpointRule>(spec.rule)) {
    out += "midpoint";
  } else {
    out += "offset:" + format_real(std::get<OffsetRule>(spec.rule).theta);
  }
  return out;
}

}  // namespace bergman
