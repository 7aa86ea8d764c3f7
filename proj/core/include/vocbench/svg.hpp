#pragma once

#include <span>
#include <string>
#include <string_view>

#include "vocbench/voc.hpp"

namespace vocbench {

struct PlotSeries {
  std::string label;
  VocCurve curve;
};

/// Line plot of each curve on [0, omega_max]. Curves are drawn exactly: one
/// vertex per knot inside the window plus the two window edges. Output is a
/// pure function of the arguments.
[[nodiscard]] std::string render_voc_svg(std::span<const PlotSeries> series, double omega_max,
                                         std::string_view title = "Value Operating Characteristic");

}  // namespace vocbench
