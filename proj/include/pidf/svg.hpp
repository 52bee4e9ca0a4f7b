#pragma once

#include <string>

#include "pidf/types.hpp"

namespace pidf {

// Bar-chart layout. Bar heights are value_in_nats * kSvgPixelsPerNat exactly
// (written in shortest round-trip form); negative values are drawn as zero
// height and flagged with data-clamped="true".
inline constexpr double kSvgPixelsPerNat = 200.0;
inline constexpr double kSvgBarWidth = 24.0;
inline constexpr double kSvgBarGap = 4.0;
inline constexpr double kSvgGroupWidth = 80.0;
inline constexpr double kSvgMargin = 40.0;

// One group per feature: a red MI bar with the green FWS segment stacked on
// top (annotated with the indices of the maximum-synergy set), and next to it
// a purple FWR bar stacked per redundant contributor (annotated with the
// contributor's index). Every bar segment carries data-feature,
// data-quantity and data-nats attributes. Always drawn in nats.
std::string render_svg(const PidfReport& report, const SelectionResult& selection);

}  // namespace pidf
