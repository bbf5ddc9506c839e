#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cec/isotonic.hpp"

namespace cec {

// One row of an experiment results table: a single trained model evaluated
// once. (task, method, source, model_size, train_size, hyperparams)
// identifies a run.
struct RunRecord {
  std::string task;
  std::string method;      // e.g. single-task, multitask, sequential
  std::string source;      // transfer multiset or knowledge graph; may be empty
  std::string model_size;
  long long train_size = 0;  // >= 1
  std::map<std::string, std::string> hyperparams;
  std::string metric;
  double value = 0.0;

  bool operator==(const RunRecord&) const = default;
};

struct SeriesKey {
  std::string task;
  std::string method;
  std::string source;
  std::string model_size;
  std::string metric;

  auto operator<=>(const SeriesKey&) const = default;
  std::string label() const;  // task/method/source/model_size/metric
};

struct CurvePoint {
  long long train_size = 0;
  double value = 0.0;

  bool operator==(const CurvePoint&) const = default;
};

// A learning curve: one aggregated point per training size, sizes strictly
// increasing.
struct LearningCurveSeries {
  SeriesKey key;
  std::vector<CurvePoint> points;

  bool operator==(const LearningCurveSeries&) const = default;
};

// Required columns: task, method, source, model_size, train_size, metric,
// value. Unknown columns land in hyperparams (empty cells are dropped).
// Throws ParseError with the offending row or column name.
std::vector<RunRecord> parse_results_csv(std::string_view text);

// Inverse of parse_results_csv: required columns plus the sorted union of
// hyperparameter names.
std::string to_csv(std::span<const RunRecord> records);

// Reported results are the best score over the hyperparameter search; mean is
// a selectable alternative for robustness studies.
enum class Aggregation { best, mean };

inline constexpr const char* kSeriesKeyFields[] = {"task", "method", "source",
                                                   "model_size", "metric"};

// Groups records by the requested key fields plus train_size and reduces each
// group's values. Fields left out of group_by stay empty in the series key.
std::vector<LearningCurveSeries> aggregate(
    std::span<const RunRecord> records, Aggregation aggregation,
    std::span<const std::string> group_by);
std::vector<LearningCurveSeries> aggregate(std::span<const RunRecord> records,
                                           Aggregation aggregation);
std::vector<LearningCurveSeries> aggregate_best(
    std::span<const RunRecord> records);
std::vector<LearningCurveSeries> aggregate_best(
    std::span<const RunRecord> records, std::span<const std::string> group_by);

// (size, value) -> (cost=size, benefit=value, weight=1)
std::vector<MonotoneSample> to_samples(const LearningCurveSeries& series);

std::string to_json(const LearningCurveSeries& series);
std::string to_json(std::span<const LearningCurveSeries> series);

// One results-schema row per point; parse + aggregate of the output is a
// fixpoint.
std::string series_to_csv(const LearningCurveSeries& series);

}  // namespace cec
