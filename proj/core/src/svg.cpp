#include "scuba/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace scuba {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string coord(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;
  std::vector<double> ticks;
};

/// Rounds the range outward to a 1/2/5-ladder step and lays ~5 ticks on it.
Axis linear_axis(double lo, double hi) {
  if (lo == hi) {
    const double pad = (lo == 0.0) ? 1.0 : std::abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  const double span = hi - lo;
  double step = std::pow(10.0, std::floor(std::log10(span / 5.0)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (span / (step * mult) <= 5.5) {
      step *= mult;
      break;
    }
  }
  Axis ax;
  ax.lo = std::floor(lo / step) * step;
  ax.hi = std::ceil(hi / step) * step;
  for (double t = ax.lo; t <= ax.hi + step * 1e-9; t += step) {
    // Snap near-zero accumulation error so tick labels stay clean.
    ax.ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ax;
}

/// Decade ticks covering [lo, hi], expanded outward to whole decades.
Axis log_axis(double lo, double hi, const char* name) {
  if (lo <= 0.0) {
    throw ConfigError(std::string("plot: log ") + name +
                      " axis needs positive values");
  }
  Axis ax;
  ax.log = true;
  const int d_lo = static_cast<int>(std::floor(std::log10(lo) + 1e-12));
  const int d_hi = static_cast<int>(std::ceil(std::log10(hi) - 1e-12));
  ax.lo = std::pow(10.0, d_lo);
  ax.hi = std::pow(10.0, std::max(d_hi, d_lo + 1));
  for (int d = d_lo; d <= std::max(d_hi, d_lo + 1); ++d) {
    ax.ticks.push_back(std::pow(10.0, d));
  }
  return ax;
}

double project(double v, const Axis& ax, double px_lo, double px_hi) {
  const double t = ax.log ? (std::log10(v) - std::log10(ax.lo)) /
                                (std::log10(ax.hi) - std::log10(ax.lo))
                          : (v - ax.lo) / (ax.hi - ax.lo);
  return px_lo + t * (px_hi - px_lo);
}

}  // namespace

std::string render_svg(const SvgPlotSpec& spec) {
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  bool any = false;
  for (const SvgSeries& s : spec.series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!any) {
        x_min = x_max = x;
        y_min = y_max = y;
        any = true;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (!any) throw ConfigError("plot: no data points");

  const Axis xa =
      spec.log_x ? log_axis(x_min, x_max, "x") : linear_axis(x_min, x_max);
  const Axis ya =
      spec.log_y ? log_axis(y_min, y_max, "y") : linear_axis(y_min, y_max);

  const double w = spec.width, h = spec.height;
  const double ml = 64, mr = 16, mt = spec.title.empty() ? 16 : 40, mb = 48;
  const double px_lo = ml, px_hi = w - mr;
  const double py_lo = h - mb, py_hi = mt;  // SVG y grows downward

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
     << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
     << " " << spec.height << "\">\n";
  os << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
     << "\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    os << "<text x=\"" << coord(w / 2)
       << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\""
          " font-size=\"15\" font-weight=\"bold\">"
       << escape(spec.title) << "</text>\n";
  }

  // Grid and ticks.
  for (double t : xa.ticks) {
    const double x = project(t, xa, px_lo, px_hi);
    os << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(py_lo)
       << "\" x2=\"" << coord(x) << "\" y2=\"" << coord(py_hi)
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << coord(x) << "\" y=\"" << coord(py_lo + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
          " font-size=\"11\">"
       << num(t) << "</text>\n";
  }
  for (double t : ya.ticks) {
    const double y = project(t, ya, py_lo, py_hi);
    os << "<line x1=\"" << coord(px_lo) << "\" y1=\"" << coord(y)
       << "\" x2=\"" << coord(px_hi) << "\" y2=\"" << coord(y)
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << coord(px_lo - 6) << "\" y=\"" << coord(y + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\""
          " font-size=\"11\">"
       << num(t) << "</text>\n";
  }

  // Axes frame.
  os << "<rect x=\"" << coord(px_lo) << "\" y=\"" << coord(py_hi)
     << "\" width=\"" << coord(px_hi - px_lo) << "\" height=\""
     << coord(py_lo - py_hi)
     << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  if (!spec.x_label.empty()) {
    os << "<text x=\"" << coord((px_lo + px_hi) / 2) << "\" y=\""
       << coord(h - 10)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
          " font-size=\"13\">"
       << escape(spec.x_label) << "</text>\n";
  }
  if (!spec.y_label.empty()) {
    os << "<text x=\"16\" y=\"" << coord((py_lo + py_hi) / 2)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
          " font-size=\"13\" transform=\"rotate(-90 16 "
       << coord((py_lo + py_hi) / 2) << ")\">" << escape(spec.y_label)
       << "</text>\n";
  }

  // Series.
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const SvgSeries& s = spec.series[i];
    const std::string color =
        s.color.empty() ? kPalette[i % kPaletteSize] : s.color;
    std::vector<std::pair<double, double>> pts = s.points;
    std::sort(pts.begin(), pts.end());
    if (s.draw_line && pts.size() > 1) {
      os << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"2\" points=\"";
      for (const auto& [x, y] : pts) {
        os << coord(project(x, xa, px_lo, px_hi)) << ','
           << coord(project(y, ya, py_lo, py_hi)) << ' ';
      }
      os << "\"/>\n";
    }
    if (s.draw_markers) {
      for (const auto& [x, y] : pts) {
        os << "<circle cx=\"" << coord(project(x, xa, px_lo, px_hi))
           << "\" cy=\"" << coord(project(y, ya, py_lo, py_hi))
           << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
  }

  // Legend (top-right inside the frame), only when labels exist.
  double ly = py_hi + 14;
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const SvgSeries& s = spec.series[i];
    if (s.label.empty()) continue;
    const std::string color =
        s.color.empty() ? kPalette[i % kPaletteSize] : s.color;
    os << "<line x1=\"" << coord(px_hi - 130) << "\" y1=\"" << coord(ly - 4)
       << "\" x2=\"" << coord(px_hi - 106) << "\" y2=\"" << coord(ly - 4)
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << coord(px_hi - 100) << "\" y=\"" << coord(ly)
       << "\" font-family=\"sans-serif\" font-size=\"12\">"
       << escape(s.label) << "</text>\n";
    ly += 16;
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace scuba
