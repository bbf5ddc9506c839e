#include "cec/cost_equivalent.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "detail/csv.hpp"
#include "detail/format.hpp"

namespace cec {

namespace {

std::vector<double> build_grid(const GridSpec& spec, const IsotonicFit& control_fit) {
  switch (spec.kind()) {
    case GridSpec::Kind::automatic:
      // Knots are exactly the sorted distinct control sample costs.
      return control_fit.knots();
    case GridSpec::Kind::dense: {
      const std::size_t n = spec.dense_count();
      if (n < 2) {
        throw ValidationError("dense grid needs at least 2 points");
      }
      const auto [lo, hi] = control_fit.x_range();
      std::vector<double> grid(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        grid[i] = lo + t * (hi - lo);
      }
      grid.back() = hi;
      return grid;
    }
    case GridSpec::Kind::explicit_points: {
      std::vector<double> grid = spec.points();
      if (grid.empty()) {
        throw ValidationError("empty grid");
      }
      for (double x : grid) {
        if (!std::isfinite(x) || x < 0.0) {
          throw ValidationError("grid points must be finite and non-negative");
        }
      }
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      return grid;
    }
  }
  throw ValidationError("unknown grid kind");
}

}  // namespace

const char* to_string(RangeFlag flag) {
  switch (flag) {
    case RangeFlag::in_range:
      return "in-range";
    case RangeFlag::clamped_low:
      return "clamped-low";
    case RangeFlag::clamped_high:
      return "clamped-high";
  }
  return "in-range";
}

RangeFlag range_flag_from_string(std::string_view text) {
  if (text == "in-range") return RangeFlag::in_range;
  if (text == "clamped-low") return RangeFlag::clamped_low;
  if (text == "clamped-high") return RangeFlag::clamped_high;
  throw ParseError("unknown range flag '" + std::string(text) + "'");
}

CostEquivalentCurve compute_cec(std::span<const MonotoneSample> control,
                                std::span<const MonotoneSample> treatment,
                                const GridSpec& grid_spec) {
  const IsotonicFit control_fit = fit_isotonic(control, Direction::increasing);
  const IsotonicFit treatment_inverse = fit_inverse(treatment);

  CostEquivalentCurve cec;
  cec.grid = build_grid(grid_spec, control_fit);
  cec.equivalent_costs.reserve(cec.grid.size());
  cec.benefits.reserve(cec.grid.size());
  cec.flags.reserve(cec.grid.size());

  // The inverse fit's knot range is the treatment's observed benefit range.
  const auto [benefit_lo, benefit_hi] = treatment_inverse.x_range();
  for (double x : cec.grid) {
    const double benefit = control_fit.predict(x);
    RangeFlag flag = RangeFlag::in_range;
    if (benefit < benefit_lo) {
      flag = RangeFlag::clamped_low;
    } else if (benefit > benefit_hi) {
      flag = RangeFlag::clamped_high;
    }
    cec.benefits.push_back(benefit);
    cec.equivalent_costs.push_back(treatment_inverse.predict(benefit));
    cec.flags.push_back(flag);
  }
  return cec;
}

std::vector<std::pair<double, double>> benefit_axis(
    const CostEquivalentCurve& cec) {
  std::vector<std::pair<double, double>> axis;
  axis.reserve(cec.size());
  for (std::size_t i = 0; i < cec.size(); ++i) {
    axis.emplace_back(cec.grid[i], cec.benefits[i]);
  }
  return axis;
}

SavingsSummary savings_summary(const CostEquivalentCurve& cec) {
  SavingsSummary summary;
  summary.ratios.reserve(cec.size());
  double log_sum = 0.0;
  std::size_t in_range_count = 0;
  bool saw_zero = false;
  for (std::size_t i = 0; i < cec.size(); ++i) {
    if (cec.grid[i] <= 0.0) {
      throw ValidationError("savings ratios need positive grid costs");
    }
    const double ratio = cec.equivalent_costs[i] / cec.grid[i];
    summary.ratios.push_back(ratio);
    if (cec.flags[i] == RangeFlag::in_range) {
      ++in_range_count;
      if (ratio == 0.0) {
        saw_zero = true;
      } else {
        log_sum += std::log(ratio);
      }
    }
  }
  if (in_range_count > 0) {
    summary.geometric_mean =
        saw_zero ? 0.0 : std::exp(log_sum / static_cast<double>(in_range_count));
  }
  return summary;
}

std::string to_csv(const CostEquivalentCurve& cec) {
  std::string out = "grid,equivalent_cost,benefit,flag\n";
  for (std::size_t i = 0; i < cec.size(); ++i) {
    out += detail::format_double(cec.grid[i]);
    out += ',';
    out += detail::format_double(cec.equivalent_costs[i]);
    out += ',';
    out += detail::format_double(cec.benefits[i]);
    out += ',';
    out += to_string(cec.flags[i]);
    out += '\n';
  }
  return out;
}

CostEquivalentCurve cec_from_csv(std::string_view text) {
  const auto rows = detail::parse_csv(text);
  if (rows.empty()) {
    throw ParseError("empty cost equivalent table");
  }
  const std::vector<std::string> expected = {"grid", "equivalent_cost",
                                             "benefit", "flag"};
  std::vector<std::string> header;
  for (const std::string& h : rows[0]) header.emplace_back(detail::trim(h));
  if (header != expected) {
    throw ParseError(
        "cost equivalent table header must be grid,equivalent_cost,benefit,flag");
  }

  CostEquivalentCurve cec;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 4) {
      throw ParseError::at_row("expected 4 columns", r + 1);
    }
    double grid = 0.0, cost = 0.0, benefit = 0.0;
    if (!detail::parse_double(detail::trim(row[0]), grid) ||
        !detail::parse_double(detail::trim(row[1]), cost) ||
        !detail::parse_double(detail::trim(row[2]), benefit)) {
      throw ParseError::at_row("non-numeric value", r + 1);
    }
    cec.grid.push_back(grid);
    cec.equivalent_costs.push_back(cost);
    cec.benefits.push_back(benefit);
    cec.flags.push_back(range_flag_from_string(detail::trim(row[3])));
  }
  return cec;
}

std::string to_json(const CostEquivalentCurve& cec) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < cec.size(); ++i) {
    points.push_back({{"grid", cec.grid[i]},
                      {"equivalent_cost", cec.equivalent_costs[i]},
                      {"benefit", cec.benefits[i]},
                      {"flag", to_string(cec.flags[i])}});
  }
  return points.dump();
}

CostEquivalentCurve cec_from_json(std::string_view text) {
  nlohmann::json points;
  try {
    points = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!points.is_array()) {
    throw ParseError("cost equivalent JSON must be an array of points");
  }
  CostEquivalentCurve cec;
  try {
    for (const auto& p : points) {
      cec.grid.push_back(p.at("grid").get<double>());
      cec.equivalent_costs.push_back(p.at("equivalent_cost").get<double>());
      cec.benefits.push_back(p.at("benefit").get<double>());
      cec.flags.push_back(
          range_flag_from_string(p.at("flag").get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid cost equivalent point: ") + e.what());
  }
  return cec;
}

}  // namespace cec
