#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cec/errors.hpp"

namespace cec {

// One (cost, benefit, weight) observation of a learning curve. Cost is
// typically a training-set size, benefit a dev-set score.
struct MonotoneSample {
  double cost = 0.0;     // x, non-negative
  double benefit = 0.0;  // y, finite
  double weight = 1.0;   // w, positive
};

enum class Direction { increasing, decreasing };

struct Prediction {
  double value = 0.0;
  bool in_range = true;  // query point inside [knots.front(), knots.back()]
};

// A fitted monotone piecewise-linear curve: strictly increasing knots with
// monotone fitted values. Prediction interpolates linearly between knots and
// clamps outside the knot range. Immutable after construction; safe to share
// across threads.
class IsotonicFit {
 public:
  // Validates the invariants: at least two knots, knots strictly increasing
  // and finite, values finite and monotone in `direction`.
  IsotonicFit(Direction direction, std::vector<double> knots,
              std::vector<double> values);

  Direction direction() const { return direction_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

  std::pair<double, double> x_range() const {
    return {knots_.front(), knots_.back()};
  }
  // (min fitted, max fitted)
  std::pair<double, double> y_range() const;

  // Clamped linear interpolation. Throws ValidationError on non-finite x.
  double predict(double x) const;
  Prediction predict_checked(double x) const;
  bool in_range(double x) const {
    return x >= knots_.front() && x <= knots_.back();
  }

 private:
  Direction direction_;
  std::vector<double> knots_;
  std::vector<double> values_;
};

// Weighted least-squares isotonic regression via pool-adjacent-violators.
// Samples sharing an x are pooled to their weighted-mean y with summed weight
// before the fit. Throws ValidationError on invalid samples and
// DegenerateInputError when fewer than two distinct x values remain.
IsotonicFit fit_isotonic(std::span<const MonotoneSample> samples,
                         Direction direction);

// Isotonic regression of cost on benefit (axes swapped): the returned fit
// predicts the cost needed to reach a requested benefit. Equal-benefit
// samples pool to their weighted-mean cost.
IsotonicFit fit_inverse(std::span<const MonotoneSample> samples);

}  // namespace cec
