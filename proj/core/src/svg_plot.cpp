#include "cec/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "detail/format.hpp"

namespace cec {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b",
                                    "#17becf", "#e377c2"};

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

struct Frame {
  double lo, hi;        // shared data range of both cost axes
  bool log_scale;
  double px0, px1;      // plot rectangle in pixels
  double py0, py1;      // py0 is the top edge

  double tx(double v) const {
    const double t = log_scale ? std::log10(v) : v;
    const double a = log_scale ? std::log10(lo) : lo;
    const double b = log_scale ? std::log10(hi) : hi;
    return (t - a) / (b - a);
  }
  double px(double v) const { return px0 + tx(v) * (px1 - px0); }
  double py(double v) const { return py1 - tx(v) * (py1 - py0); }
};

std::string coord(double v) { return detail::format_fixed(v, 2); }

// Axis labels round to 3 significant digits; data files keep full precision.
std::string tick_label(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof(buf), "%.3g", v);
  return std::string(buf, buf + n);
}

// Round tick positions covering [lo, hi] with a 1/2/5 step.
std::vector<double> linear_ticks(double lo, double hi, int target) {
  const double span = hi - lo;
  if (span <= 0.0) return {lo};
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span;
       v += step) {
    ticks.push_back(v);
  }
  return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> ticks;
  for (int e = static_cast<int>(std::floor(std::log10(lo)));
       e <= static_cast<int>(std::ceil(std::log10(hi))); ++e) {
    const double v = std::pow(10.0, e);
    if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12)) ticks.push_back(v);
  }
  if (ticks.empty()) ticks = {lo, hi};
  return ticks;
}

void append_polyline(std::string& svg, std::span<const double> xs,
                     std::span<const double> ys, const Frame& frame,
                     const char* color, bool dashed) {
  svg += "  <polyline fill=\"none\" stroke=\"";
  svg += color;
  svg += "\" stroke-width=\"2\"";
  if (dashed) svg += " stroke-dasharray=\"6 4\"";
  svg += " points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) svg += ' ';
    svg += coord(frame.px(xs[i]));
    svg += ',';
    svg += coord(frame.py(ys[i]));
  }
  svg += "\"/>\n";
}

}  // namespace

std::string render_cec_svg(std::span<const PlotSeries> series,
                           const PlotStyle& style) {
  if (series.empty()) {
    throw ValidationError("nothing to plot");
  }
  for (const PlotSeries& s : series) {
    if (s.curve.size() == 0) {
      throw ValidationError("empty cost equivalent table");
    }
  }
  if (style.width <= 0 || style.height <= 0) {
    throw ValidationError("plot dimensions must be positive");
  }

  // Both axes share one cost range so the diagonal means equal cost.
  double lo = series[0].curve.grid.front();
  double hi = lo;
  for (const PlotSeries& s : series) {
    for (double v : s.curve.grid) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (double v : s.curve.equivalent_costs) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi == lo) {
    hi = lo + 1.0;
  }
  if (style.log_scale && lo <= 0.0) {
    throw ValidationError("log scale needs positive costs");
  }

  Frame frame;
  frame.lo = lo;
  frame.hi = hi;
  frame.log_scale = style.log_scale;
  frame.px0 = 70.0;
  frame.px1 = style.width - 30.0;
  frame.py0 = style.show_top_axis ? 58.0 : 30.0;
  frame.py1 = style.height - 55.0;

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(style.width) + "\" height=\"" +
         std::to_string(style.height) + "\" viewBox=\"0 0 " +
         std::to_string(style.width) + " " + std::to_string(style.height) +
         "\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + std::to_string(style.width) +
         "\" height=\"" + std::to_string(style.height) +
         "\" fill=\"white\"/>\n";

  // plot frame
  svg += "  <rect x=\"" + coord(frame.px0) + "\" y=\"" + coord(frame.py0) +
         "\" width=\"" + coord(frame.px1 - frame.px0) + "\" height=\"" +
         coord(frame.py1 - frame.py0) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";

  const std::vector<double> ticks = style.log_scale
                                        ? log_ticks(lo, hi)
                                        : linear_ticks(lo, hi, 6);
  for (double v : ticks) {
    const std::string x = coord(frame.px(v));
    const std::string y = coord(frame.py(v));
    const std::string label = xml_escape(tick_label(v));
    svg += "  <line x1=\"" + x + "\" y1=\"" + coord(frame.py1) + "\" x2=\"" +
           x + "\" y2=\"" + coord(frame.py1 + 5) +
           "\" stroke=\"#333333\"/>\n";
    svg += "  <text x=\"" + x + "\" y=\"" + coord(frame.py1 + 20) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + label + "</text>\n";
    svg += "  <line x1=\"" + coord(frame.px0 - 5) + "\" y1=\"" + y +
           "\" x2=\"" + coord(frame.px0) + "\" y2=\"" + y +
           "\" stroke=\"#333333\"/>\n";
    svg += "  <text x=\"" + coord(frame.px0 - 8) + "\" y=\"" +
           coord(frame.py(v) + 4) +
           "\" font-size=\"12\" text-anchor=\"end\">" + label + "</text>\n";
  }

  svg += "  <text x=\"" + coord((frame.px0 + frame.px1) / 2) + "\" y=\"" +
         coord(frame.py1 + 40) +
         "\" font-size=\"13\" text-anchor=\"middle\">control cost</text>\n";
  svg += "  <text x=\"16\" y=\"" + coord((frame.py0 + frame.py1) / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         coord((frame.py0 + frame.py1) / 2) +
         ")\">equivalent treatment cost</text>\n";

  // Top axis: control benefits at the first series' grid points.
  if (style.show_top_axis) {
    const CostEquivalentCurve& first = series[0].curve;
    const std::size_t n = first.size();
    const std::size_t max_labels = 6;
    const std::size_t stride = n <= max_labels ? 1 : (n + max_labels - 1) / max_labels;
    for (std::size_t i = 0; i < n; i += stride) {
      const std::string x = coord(frame.px(first.grid[i]));
      svg += "  <line x1=\"" + x + "\" y1=\"" + coord(frame.py0 - 5) +
             "\" x2=\"" + x + "\" y2=\"" + coord(frame.py0) +
             "\" stroke=\"#333333\"/>\n";
      svg += "  <text x=\"" + x + "\" y=\"" + coord(frame.py0 - 10) +
             "\" font-size=\"12\" text-anchor=\"middle\">" +
             xml_escape(tick_label(first.benefits[i])) +
             "</text>\n";
    }
    svg += "  <text x=\"" + coord((frame.px0 + frame.px1) / 2) + "\" y=\"" +
           coord(frame.py0 - 34) +
           "\" font-size=\"13\" text-anchor=\"middle\">control benefit"
           "</text>\n";
  }

  if (style.show_diagonal) {
    svg += "  <line class=\"diagonal\" x1=\"" + coord(frame.px(lo)) +
           "\" y1=\"" + coord(frame.py(lo)) + "\" x2=\"" + coord(frame.px(hi)) +
           "\" y2=\"" + coord(frame.py(hi)) +
           "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kPalette[si % std::size(kPalette)];
    svg += "  <g class=\"series\" data-label=\"" + xml_escape(s.label) +
           "\">\n";

    // Split into runs of equal flag state; runs share boundary points so the
    // curve stays connected. Flagged runs draw dashed.
    const std::size_t n = s.curve.size();
    std::size_t start = 0;
    while (start < n) {
      const bool flagged = s.curve.flags[start] != RangeFlag::in_range;
      std::size_t end = start + 1;
      while (end < n &&
             (s.curve.flags[end] != RangeFlag::in_range) == flagged) {
        ++end;
      }
      std::vector<double> xs(s.curve.grid.begin() + start,
                             s.curve.grid.begin() + end);
      std::vector<double> ys(s.curve.equivalent_costs.begin() + start,
                             s.curve.equivalent_costs.begin() + end);
      if (end < n) {  // bridge to the next run
        xs.push_back(s.curve.grid[end]);
        ys.push_back(s.curve.equivalent_costs[end]);
      }
      if (xs.size() == 1) {  // single point: draw a dot-sized marker
        xs.push_back(xs.back());
        ys.push_back(ys.back());
      }
      svg += "  ";
      append_polyline(svg, xs, ys, frame, color,
                      flagged && style.dashed_extrapolation);
      start = end;
    }
    svg += "  </g>\n";

    // legend entry
    const double ly = frame.py0 + 18.0 + 18.0 * static_cast<double>(si);
    svg += "  <line x1=\"" + coord(frame.px0 + 10) + "\" y1=\"" + coord(ly) +
           "\" x2=\"" + coord(frame.px0 + 34) + "\" y2=\"" + coord(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "  <text x=\"" + coord(frame.px0 + 40) + "\" y=\"" + coord(ly + 4) +
           "\" font-size=\"12\">" + xml_escape(s.label) + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace cec
