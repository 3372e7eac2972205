#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "bergman/regions.hpp"
#include "bergman/spectral.hpp"

namespace bergman {

// Region literals, whitespace-free:
//   disc:R
//   annulus:r:R
//   intervals:a0-b0,a1-b1,...
//   family:a0=..,b0=..,u0=..,q=..,K=..,rule=midpoint|offset:theta
// Spectrum literals additionally accept ginibre:R.

using RegionLiteral = std::variant<RadialRegion, FamilySpec>;

/// Throws std::invalid_argument naming the malformed part.
RegionLiteral parse_region_literal(std::string_view text);

/// Families are materialized to their first K intervals.
RestrictedSpectrum parse_spectrum_literal(std::string_view text);

/// Canonical literal for a family spec (geometric increments only).
std::string family_literal(const FamilySpec& spec);

}  // namespace bergman
