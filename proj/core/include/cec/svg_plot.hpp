#pragma once

#include <span>
#include <string>
#include <vector>

#include "cec/cost_equivalent.hpp"

namespace cec {

// Figure styling for cost-equivalent charts. The diagonal y=x marks the
// break-even line; flagged (extrapolated) segments render dashed.
struct PlotStyle {
  int width = 800;
  int height = 560;
  bool show_diagonal = true;
  bool show_top_axis = true;
  bool dashed_extrapolation = true;
  bool log_scale = false;  // log-scale both cost axes
};

struct PlotSeries {
  std::string label;
  CostEquivalentCurve curve;
};

// Renders one SVG document: a polyline per series, the diagonal reference
// line, a bottom axis in control cost, a left axis in equivalent treatment
// cost, and a top axis labeled with the control benefits.
std::string render_cec_svg(std::span<const PlotSeries> series,
                           const PlotStyle& style = {});

}  // namespace cec
