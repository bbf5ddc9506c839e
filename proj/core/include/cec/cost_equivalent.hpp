#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cec/isotonic.hpp"

namespace cec {

// Marks grid points whose control benefit falls outside the treatment's
// observed benefit range. Clamped points report the nearest treatment cost
// bound; renderers draw them dashed.
enum class RangeFlag { in_range, clamped_low, clamped_high };

const char* to_string(RangeFlag flag);
RangeFlag range_flag_from_string(std::string_view text);

// A grid of control costs mapped to the treatment costs achieving the same
// benefit, with the control benefits as top-axis labels.
struct CostEquivalentCurve {
  std::vector<double> grid;              // control costs, increasing
  std::vector<double> equivalent_costs;  // g(x), monotone non-decreasing
  std::vector<double> benefits;          // control curve benefit at each x
  std::vector<RangeFlag> flags;

  std::size_t size() const { return grid.size(); }
};

// Grid choice for compute_cec: the control sample costs (automatic), an
// evenly spaced grid across the control cost range (dense), or caller-given
// points.
class GridSpec {
 public:
  static GridSpec automatic() { return GridSpec(Kind::automatic, 0, {}); }
  static GridSpec dense(std::size_t points) {
    return GridSpec(Kind::dense, points, {});
  }
  static GridSpec explicit_points(std::vector<double> points) {
    return GridSpec(Kind::explicit_points, 0, std::move(points));
  }

  enum class Kind { automatic, dense, explicit_points };
  Kind kind() const { return kind_; }
  std::size_t dense_count() const { return dense_count_; }
  const std::vector<double>& points() const { return points_; }

 private:
  GridSpec(Kind kind, std::size_t count, std::vector<double> points)
      : kind_(kind), dense_count_(count), points_(std::move(points)) {}

  Kind kind_;
  std::size_t dense_count_;
  std::vector<double> points_;
};

// Fits the control curve and the inverse treatment curve, then composes them
// into the cost equivalent curve. Grid points whose control benefit lies
// outside the treatment's observed benefit range are clamped to the nearest
// treatment cost bound and flagged.
CostEquivalentCurve compute_cec(std::span<const MonotoneSample> control,
                                std::span<const MonotoneSample> treatment,
                                const GridSpec& grid = GridSpec::automatic());

// (grid point, control benefit) pairs for rendering the top axis.
std::vector<std::pair<double, double>> benefit_axis(
    const CostEquivalentCurve& cec);

// Per-point data-savings ratios g(x)/x and their geometric mean over the
// in-range points. A ratio below 1 means the treatment needs less data. When
// no point is in range there is no comparable region and the aggregate is
// absent.
struct SavingsSummary {
  std::vector<double> ratios;            // one per grid point
  std::optional<double> geometric_mean;  // nullopt: no comparable region
};

SavingsSummary savings_summary(const CostEquivalentCurve& cec);

// Flat-table serialization: columns grid, equivalent_cost, benefit, flag.
std::string to_csv(const CostEquivalentCurve& cec);
CostEquivalentCurve cec_from_csv(std::string_view text);
std::string to_json(const CostEquivalentCurve& cec);
CostEquivalentCurve cec_from_json(std::string_view text);

}  // namespace cec
