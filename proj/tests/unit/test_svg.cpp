// SVG renderer tests: structural checks, determinism, axis handling.
#include <string>

#include "doctest.h"
#include "scuba/svg.hpp"

using namespace scuba;

namespace {

SvgPlotSpec demo_spec() {
  SvgPlotSpec spec;
  spec.title = "power vs cycle";
  spec.x_label = "cycle (s)";
  spec.y_label = "avg power (mW)";
  spec.series.push_back(
      {"native", {{0.32, 0.9}, {0.64, 0.5}, {1.28, 0.3}}, "", true, true});
  spec.series.push_back(
      {"sam", {{0.32, 1.1}, {0.64, 0.7}, {1.28, 0.45}}, "", true, true});
  return spec;
}

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE("svg") {

TEST_CASE("renders a well-formed chart with legend and markers") {
  const std::string svg = render_svg(demo_spec());
  CHECK(svg.rfind("<svg ", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count(svg, "<polyline") == 2);
  CHECK(count(svg, "<circle") == 6);
  CHECK(svg.find("power vs cycle") != std::string::npos);
  CHECK(svg.find("native") != std::string::npos);
  CHECK(svg.find("avg power (mW)") != std::string::npos);
}

TEST_CASE("same spec yields identical bytes") {
  CHECK(render_svg(demo_spec()) == render_svg(demo_spec()));
}

TEST_CASE("log axes demand positive values") {
  SvgPlotSpec spec;
  spec.log_y = true;
  spec.series.push_back({"", {{1.0, 0.0}, {2.0, 1.0}}, "", true, true});
  CHECK_THROWS_WITH_AS(render_svg(spec), doctest::Contains("log y"),
                       ConfigError);
  spec.log_y = false;
  CHECK_NOTHROW(render_svg(spec));
}

TEST_CASE("log scale emits decade ticks") {
  SvgPlotSpec spec;
  spec.log_y = true;
  spec.series.push_back(
      {"", {{2, 1e-5}, {10, 1e-4}, {100, 1e-2}}, "", true, false});
  const std::string svg = render_svg(spec);
  CHECK(svg.find(">1e-05<") != std::string::npos);
  CHECK(svg.find(">0.01<") != std::string::npos);
}

TEST_CASE("degenerate ranges are padded instead of collapsing") {
  SvgPlotSpec spec;
  spec.series.push_back({"", {{1.0, 5.0}, {1.0, 5.0}}, "", true, true});
  const std::string svg = render_svg(spec);
  CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("empty plots are rejected") {
  SvgPlotSpec spec;
  CHECK_THROWS_WITH_AS(render_svg(spec), doctest::Contains("no data"),
                       ConfigError);
  spec.series.push_back({"", {}, "", true, true});
  CHECK_THROWS_AS(render_svg(spec), ConfigError);
}

TEST_CASE("special characters in labels are escaped") {
  SvgPlotSpec spec;
  spec.title = "a < b & c";
  spec.series.push_back({"", {{0, 1}, {1, 2}}, "", true, true});
  const std::string svg = render_svg(spec);
  CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
  CHECK(svg.find("a < b") == std::string::npos);
}

}  // TEST_SUITE
