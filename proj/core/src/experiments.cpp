#include "cec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "detail/csv.hpp"
#include "detail/format.hpp"

namespace cec {

namespace {

constexpr const char* kRequiredColumns[] = {
    "task", "method", "source", "model_size", "train_size", "metric", "value"};

std::string* key_field(SeriesKey& key, std::string_view name) {
  if (name == "task") return &key.task;
  if (name == "method") return &key.method;
  if (name == "source") return &key.source;
  if (name == "model_size") return &key.model_size;
  if (name == "metric") return &key.metric;
  return nullptr;
}

const std::string& record_field(const RunRecord& r, std::string_view name) {
  static const std::string empty;
  if (name == "task") return r.task;
  if (name == "method") return r.method;
  if (name == "source") return r.source;
  if (name == "model_size") return r.model_size;
  if (name == "metric") return r.metric;
  return empty;
}

}  // namespace

std::string SeriesKey::label() const {
  return task + "/" + method + "/" + source + "/" + model_size + "/" + metric;
}

std::vector<RunRecord> parse_results_csv(std::string_view text) {
  const auto rows = detail::parse_csv(text);
  if (rows.empty()) {
    throw ParseError("empty results file");
  }

  std::vector<std::string> header;
  for (const std::string& cell : rows[0]) {
    header.emplace_back(detail::trim(cell));
  }
  for (const char* required : kRequiredColumns) {
    if (std::find(header.begin(), header.end(), required) == header.end()) {
      throw ParseError(std::string("missing required column '") + required +
                       "'");
    }
  }

  std::vector<RunRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::size_t row_number = r + 1;
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw ParseError::at_row("expected " + std::to_string(header.size()) +
                                   " columns, got " + std::to_string(row.size()),
                               row_number);
    }
    RunRecord rec;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& name = header[c];
      const std::string cell(detail::trim(row[c]));
      if (name == "task") {
        rec.task = cell;
      } else if (name == "method") {
        rec.method = cell;
      } else if (name == "source") {
        rec.source = cell;
      } else if (name == "model_size") {
        rec.model_size = cell;
      } else if (name == "metric") {
        rec.metric = cell;
      } else if (name == "train_size") {
        if (!detail::parse_int64(cell, rec.train_size) || rec.train_size < 1) {
          throw ParseError::at_row("invalid train_size '" + cell + "'",
                                   row_number);
        }
      } else if (name == "value") {
        if (!detail::parse_double(cell, rec.value) ||
            !std::isfinite(rec.value)) {
          throw ParseError::at_row("invalid value '" + cell + "'", row_number);
        }
      } else if (!cell.empty()) {
        rec.hyperparams[name] = cell;
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string to_csv(std::span<const RunRecord> records) {
  std::set<std::string> hyperparam_names;
  for (const RunRecord& r : records) {
    for (const auto& [name, _] : r.hyperparams) hyperparam_names.insert(name);
  }

  std::string out;
  for (const char* col : kRequiredColumns) {
    if (!out.empty()) out += ',';
    out += col;
  }
  for (const std::string& name : hyperparam_names) {
    out += ',';
    out += detail::csv_escape_field(name);
  }
  out += '\n';

  for (const RunRecord& r : records) {
    out += detail::csv_escape_field(r.task);
    out += ',';
    out += detail::csv_escape_field(r.method);
    out += ',';
    out += detail::csv_escape_field(r.source);
    out += ',';
    out += detail::csv_escape_field(r.model_size);
    out += ',';
    out += std::to_string(r.train_size);
    out += ',';
    out += detail::csv_escape_field(r.metric);
    out += ',';
    out += detail::format_double(r.value);
    for (const std::string& name : hyperparam_names) {
      out += ',';
      const auto it = r.hyperparams.find(name);
      if (it != r.hyperparams.end()) {
        out += detail::csv_escape_field(it->second);
      }
    }
    out += '\n';
  }
  return out;
}

std::vector<LearningCurveSeries> aggregate(
    std::span<const RunRecord> records, Aggregation aggregation,
    std::span<const std::string> group_by) {
  if (records.empty()) {
    throw ValidationError("no records to aggregate");
  }
  for (const std::string& field : group_by) {
    SeriesKey probe;
    if (key_field(probe, field) == nullptr) {
      throw ValidationError("unknown group_by field '" + field + "'");
    }
  }

  std::map<SeriesKey, std::map<long long, std::vector<double>>> groups;
  for (const RunRecord& r : records) {
    SeriesKey key;
    for (const std::string& field : group_by) {
      *key_field(key, field) = record_field(r, field);
    }
    groups[key][r.train_size].push_back(r.value);
  }

  std::vector<LearningCurveSeries> series;
  series.reserve(groups.size());
  for (auto& [key, by_size] : groups) {
    LearningCurveSeries s;
    s.key = key;
    s.points.reserve(by_size.size());
    for (const auto& [size, values] : by_size) {
      double v = 0.0;
      if (aggregation == Aggregation::best) {
        v = *std::max_element(values.begin(), values.end());
      } else {
        for (double x : values) v += x;
        v /= static_cast<double>(values.size());
      }
      s.points.push_back({size, v});
    }
    series.push_back(std::move(s));
  }
  return series;
}

std::vector<LearningCurveSeries> aggregate(std::span<const RunRecord> records,
                                           Aggregation aggregation) {
  std::vector<std::string> fields(std::begin(kSeriesKeyFields),
                                  std::end(kSeriesKeyFields));
  return aggregate(records, aggregation, fields);
}

std::vector<LearningCurveSeries> aggregate_best(
    std::span<const RunRecord> records) {
  return aggregate(records, Aggregation::best);
}

std::vector<LearningCurveSeries> aggregate_best(
    std::span<const RunRecord> records,
    std::span<const std::string> group_by) {
  return aggregate(records, Aggregation::best, group_by);
}

std::vector<MonotoneSample> to_samples(const LearningCurveSeries& series) {
  std::vector<MonotoneSample> samples;
  samples.reserve(series.points.size());
  for (const CurvePoint& p : series.points) {
    samples.push_back({static_cast<double>(p.train_size), p.value, 1.0});
  }
  return samples;
}

namespace {

nlohmann::json series_json(const LearningCurveSeries& series) {
  nlohmann::json points = nlohmann::json::array();
  for (const CurvePoint& p : series.points) {
    points.push_back({{"train_size", p.train_size}, {"value", p.value}});
  }
  return {{"key",
           {{"task", series.key.task},
            {"method", series.key.method},
            {"source", series.key.source},
            {"model_size", series.key.model_size},
            {"metric", series.key.metric}}},
          {"points", points}};
}

}  // namespace

std::string to_json(const LearningCurveSeries& series) {
  return series_json(series).dump();
}

std::string to_json(std::span<const LearningCurveSeries> series) {
  nlohmann::json arr = nlohmann::json::array();
  for (const LearningCurveSeries& s : series) arr.push_back(series_json(s));
  return arr.dump();
}

std::string series_to_csv(const LearningCurveSeries& series) {
  std::vector<RunRecord> records;
  records.reserve(series.points.size());
  for (const CurvePoint& p : series.points) {
    RunRecord r;
    r.task = series.key.task;
    r.method = series.key.method;
    r.source = series.key.source;
    r.model_size = series.key.model_size;
    r.metric = series.key.metric;
    r.train_size = p.train_size;
    r.value = p.value;
    records.push_back(std::move(r));
  }
  return to_csv(records);
}

}  // namespace cec
