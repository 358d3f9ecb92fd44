// Minimal self-contained SVG plotting: line/scatter charts with linear or
// logarithmic y axes, automatic ticks, and a legend. Output is deterministic
// (same spec -> same bytes) so plots can be golden-tested and reproduced.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scuba/types.hpp"

namespace scuba {

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y), any order
  std::string color;       ///< CSS color; empty -> palette by series index
  bool draw_line = true;
  bool draw_markers = true;
};

struct SvgPlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;  ///< decade ticks; requires positive x values
  bool log_y = false;  ///< decade ticks; requires positive y values
  int width = 640;
  int height = 420;
  std::vector<SvgSeries> series;
};

/// Renders the chart. Throws ConfigError when there is nothing to plot or a
/// log axis sees a non-positive value.
std::string render_svg(const SvgPlotSpec& spec);

}  // namespace scuba
