#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "cec/svg_plot.hpp"
#include "support/generators.hpp"
#include "support/xml_check.hpp"

using cec::CostEquivalentCurve;
using cec::PlotSeries;
using cec::PlotStyle;
using cec::RangeFlag;

namespace {

CostEquivalentCurve identity_curve() {
  CostEquivalentCurve c;
  for (double x : {100.0, 200.0, 300.0, 400.0}) {
    c.grid.push_back(x);
    c.equivalent_costs.push_back(x);
    c.benefits.push_back(0.5 + x / 1000.0);
    c.flags.push_back(RangeFlag::in_range);
  }
  return c;
}

std::string attr(const std::string& doc, std::size_t from,
                 const std::string& name) {
  const std::string needle = name + "=\"";
  const std::size_t start = doc.find(needle, from);
  REQUIRE(start != std::string::npos);
  const std::size_t end = doc.find('"', start + needle.size());
  return doc.substr(start + needle.size(), end - start - needle.size());
}

std::vector<std::pair<double, double>> parse_points(const std::string& text) {
  std::vector<std::pair<double, double>> points;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) break;
    std::size_t space = text.find(' ', comma);
    if (space == std::string::npos) space = text.size();
    points.emplace_back(std::stod(text.substr(pos, comma - pos)),
                        std::stod(text.substr(comma + 1, space - comma - 1)));
    pos = space + 1;
  }
  return points;
}

}  // namespace

TEST_SUITE("svg") {

TEST_CASE("identity curve coincides with the diagonal within half a pixel") {
  const std::vector<PlotSeries> series = {{"identity", identity_curve()}};
  const std::string svg = cec::render_cec_svg(series);

  const std::size_t diag = svg.find("class=\"diagonal\"");
  REQUIRE(diag != std::string::npos);
  const double x1 = std::stod(attr(svg, diag, "x1"));
  const double y1 = std::stod(attr(svg, diag, "y1"));
  const double x2 = std::stod(attr(svg, diag, "x2"));
  const double y2 = std::stod(attr(svg, diag, "y2"));
  const double slope = (y2 - y1) / (x2 - x1);

  const std::size_t poly = svg.find("<polyline", svg.find("class=\"series\""));
  REQUIRE(poly != std::string::npos);
  const auto points = parse_points(attr(svg, poly, "points"));
  REQUIRE(points.size() == 4);
  for (const auto& [px, py] : points) {
    const double diag_y = y1 + slope * (px - x1);
    CHECK(std::abs(py - diag_y) <= 0.5);
  }
}

TEST_CASE("output is well-formed XML and declares the SVG namespace") {
  const std::vector<PlotSeries> series = {{"base & <weird> \"label\"",
                                           identity_curve()}};
  const std::string svg = cec::render_cec_svg(series);
  std::string error;
  CHECK_MESSAGE(xmlcheck::well_formed(svg, &error), error);
  CHECK(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
}

TEST_CASE("two treatments render two labeled polylines") {
  CostEquivalentCurve second = identity_curve();
  for (double& g : second.equivalent_costs) g *= 0.5;
  const std::vector<PlotSeries> series = {{"glue", identity_curve()},
                                          {"rainbow", second}};
  const std::string svg = cec::render_cec_svg(series);
  CHECK(svg.find("data-label=\"glue\"") != std::string::npos);
  CHECK(svg.find("data-label=\"rainbow\"") != std::string::npos);
  CHECK(svg.find(">glue</text>") != std::string::npos);
  CHECK(svg.find(">rainbow</text>") != std::string::npos);
}

TEST_CASE("flagged segments draw dashed") {
  CostEquivalentCurve c = identity_curve();
  c.flags[0] = RangeFlag::clamped_low;
  c.flags[3] = RangeFlag::clamped_high;
  const std::vector<PlotSeries> series = {{"clamped", c}};

  const std::string svg = cec::render_cec_svg(series);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);

  PlotStyle solid;
  solid.dashed_extrapolation = false;
  const std::string svg_solid = cec::render_cec_svg(series, solid);
  const std::size_t series_at = svg_solid.find("class=\"series\"");
  CHECK(svg_solid.find("stroke-dasharray", series_at) == std::string::npos);
}

TEST_CASE("style flags remove the optional elements") {
  const std::vector<PlotSeries> series = {{"s", identity_curve()}};
  PlotStyle style;
  style.show_diagonal = false;
  style.show_top_axis = false;
  const std::string svg = cec::render_cec_svg(series, style);
  CHECK(svg.find("class=\"diagonal\"") == std::string::npos);
  CHECK(svg.find("control benefit") == std::string::npos);
}

TEST_CASE("log scale keeps the identity on the diagonal") {
  const std::vector<PlotSeries> series = {{"identity", identity_curve()}};
  PlotStyle style;
  style.log_scale = true;
  const std::string svg = cec::render_cec_svg(series, style);

  const std::size_t diag = svg.find("class=\"diagonal\"");
  REQUIRE(diag != std::string::npos);
  const double x1 = std::stod(attr(svg, diag, "x1"));
  const double y1 = std::stod(attr(svg, diag, "y1"));
  const double x2 = std::stod(attr(svg, diag, "x2"));
  const double y2 = std::stod(attr(svg, diag, "y2"));
  const std::size_t poly = svg.find("<polyline", svg.find("class=\"series\""));
  const auto points = parse_points(attr(svg, poly, "points"));
  for (const auto& [px, py] : points) {
    const double diag_y = y1 + (y2 - y1) / (x2 - x1) * (px - x1);
    CHECK(std::abs(py - diag_y) <= 0.5);
  }
}

TEST_CASE("empty inputs are rejected") {
  CHECK_THROWS_AS(cec::render_cec_svg({}), cec::ValidationError);
  const std::vector<PlotSeries> empty_curve = {{"x", CostEquivalentCurve{}}};
  CHECK_THROWS_AS(cec::render_cec_svg(empty_curve), cec::ValidationError);
}

TEST_CASE("property: random tables always render well-formed XML") {
  gen::Rng rng(77);
  std::uniform_int_distribution<std::size_t> n_dist(1, 30);
  std::uniform_real_distribution<double> cost(1.0, 1e6);
  std::bernoulli_distribution flagged(0.3);

  for (int iter = 0; iter < 50; ++iter) {
    std::vector<PlotSeries> series;
    const std::size_t n_series = 1 + iter % 3;
    for (std::size_t si = 0; si < n_series; ++si) {
      CostEquivalentCurve c;
      double x = cost(rng);
      const std::size_t n = n_dist(rng);
      for (std::size_t i = 0; i < n; ++i) {
        c.grid.push_back(x);
        c.equivalent_costs.push_back(x * (0.25 + 0.5 * flagged(rng)));
        c.benefits.push_back(0.5);
        c.flags.push_back(flagged(rng) ? RangeFlag::clamped_high
                                       : RangeFlag::in_range);
        x += cost(rng) / 100.0;
      }
      series.push_back({gen::adversarial_text(rng), std::move(c)});
    }
    std::string error;
    const std::string svg = cec::render_cec_svg(series);
    REQUIRE_MESSAGE(xmlcheck::well_formed(svg, &error), error);
  }
}

}  // TEST_SUITE
