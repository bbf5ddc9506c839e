#include "cec/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cec {

namespace {

struct PooledPoint {
  double x;
  double y;
  double w;
};

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw ValidationError(std::string("non-finite ") + what);
  }
}

// Sorts by x and pools equal-x points to their weighted-mean y, summed weight.
std::vector<PooledPoint> sort_and_pool(std::span<const std::pair<double, double>> xs_ys,
                                       std::span<const double> ws) {
  std::vector<std::size_t> order(xs_ys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return xs_ys[a].first < xs_ys[b].first;
  });

  std::vector<PooledPoint> pooled;
  pooled.reserve(xs_ys.size());
  for (std::size_t idx : order) {
    const auto [x, y] = xs_ys[idx];
    const double w = ws[idx];
    if (!pooled.empty() && pooled.back().x == x) {
      PooledPoint& p = pooled.back();
      const double total = p.w + w;
      p.y = (p.y * p.w + y * w) / total;
      p.w = total;
    } else {
      pooled.push_back({x, y, w});
    }
  }
  return pooled;
}

// Pool-adjacent-violators for the non-decreasing case. Returns one fitted
// value per input point (the weighted mean of its block). Violations merge
// greedily left to right; adjacent blocks with equal means stay separate,
// which yields the same fitted values.
std::vector<double> pava_increasing(const std::vector<PooledPoint>& pts) {
  struct Block {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(pts.size());

  for (const PooledPoint& p : pts) {
    blocks.push_back({p.y, p.w, 1});
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 2].mean > blocks.back().mean) {
      Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double total = prev.weight + top.weight;
      prev.mean = (prev.mean * prev.weight + top.mean * top.weight) / total;
      prev.weight = total;
      prev.count += top.count;
    }
  }

  std::vector<double> fitted;
  fitted.reserve(pts.size());
  for (const Block& b : blocks) {
    fitted.insert(fitted.end(), b.count, b.mean);
  }
  return fitted;
}

// Shared backend for the forward and swapped-axis fits. `xs_ys` are the
// regression (input, output) pairs after any axis swap.
IsotonicFit fit_pairs(std::vector<std::pair<double, double>> xs_ys,
                      std::vector<double> ws, Direction direction) {
  if (xs_ys.size() < 2) {
    throw DegenerateInputError("isotonic fit needs at least 2 samples");
  }

  std::vector<PooledPoint> pooled = sort_and_pool(xs_ys, ws);
  if (pooled.size() < 2) {
    throw DegenerateInputError(
        "isotonic fit needs at least 2 distinct x values");
  }

  if (direction == Direction::decreasing) {
    for (PooledPoint& p : pooled) p.y = -p.y;
  }
  std::vector<double> fitted = pava_increasing(pooled);
  if (direction == Direction::decreasing) {
    for (double& v : fitted) v = -v;
  }

  std::vector<double> knots;
  knots.reserve(pooled.size());
  for (const PooledPoint& p : pooled) knots.push_back(p.x);

  return IsotonicFit(direction, std::move(knots), std::move(fitted));
}

void validate_samples(std::span<const MonotoneSample> samples) {
  for (const MonotoneSample& s : samples) {
    check_finite(s.cost, "cost");
    check_finite(s.benefit, "benefit");
    check_finite(s.weight, "weight");
    if (s.cost < 0.0) {
      throw ValidationError("negative cost");
    }
    if (s.weight <= 0.0) {
      throw ValidationError("non-positive weight");
    }
  }
}

}  // namespace

IsotonicFit::IsotonicFit(Direction direction, std::vector<double> knots,
                         std::vector<double> values)
    : direction_(direction), knots_(std::move(knots)), values_(std::move(values)) {
  if (knots_.size() < 2 || knots_.size() != values_.size()) {
    throw ValidationError("isotonic fit needs >= 2 knot/value pairs");
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    check_finite(knots_[i], "knot");
    check_finite(values_[i], "fitted value");
    if (i > 0 && knots_[i] <= knots_[i - 1]) {
      throw ValidationError("knots must be strictly increasing");
    }
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    const bool ok = direction_ == Direction::increasing
                        ? values_[i] >= values_[i - 1]
                        : values_[i] <= values_[i - 1];
    if (!ok) {
      throw ValidationError("fitted values violate declared direction");
    }
  }
}

std::pair<double, double> IsotonicFit::y_range() const {
  auto [lo, hi] = std::minmax(values_.front(), values_.back());
  return {lo, hi};
}

double IsotonicFit::predict(double x) const {
  return predict_checked(x).value;
}

Prediction IsotonicFit::predict_checked(double x) const {
  if (!std::isfinite(x)) {
    throw ValidationError("non-finite prediction input");
  }
  if (x <= knots_.front()) {
    return {values_.front(), x == knots_.front()};
  }
  if (x >= knots_.back()) {
    return {values_.back(), x == knots_.back()};
  }
  // First knot strictly greater than x; its predecessor starts the segment.
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - knots_.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - knots_[lo]) / (knots_[hi] - knots_[lo]);
  return {values_[lo] + t * (values_[hi] - values_[lo]), true};
}

IsotonicFit fit_isotonic(std::span<const MonotoneSample> samples,
                         Direction direction) {
  validate_samples(samples);
  std::vector<std::pair<double, double>> xs_ys;
  std::vector<double> ws;
  xs_ys.reserve(samples.size());
  ws.reserve(samples.size());
  for (const MonotoneSample& s : samples) {
    xs_ys.emplace_back(s.cost, s.benefit);
    ws.push_back(s.weight);
  }
  return fit_pairs(std::move(xs_ys), std::move(ws), direction);
}

IsotonicFit fit_inverse(std::span<const MonotoneSample> samples) {
  validate_samples(samples);
  std::vector<std::pair<double, double>> xs_ys;
  std::vector<double> ws;
  xs_ys.reserve(samples.size());
  ws.reserve(samples.size());
  for (const MonotoneSample& s : samples) {
    xs_ys.emplace_back(s.benefit, s.cost);  // axes swapped
    ws.push_back(s.weight);
  }
  return fit_pairs(std::move(xs_ys), std::move(ws), Direction::increasing);
}

}  // namespace cec
