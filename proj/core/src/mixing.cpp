#include "cec/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace cec {

namespace {

void validate_spec(const MixtureSpec& spec) {
  if (spec.tasks.empty()) {
    throw ValidationError("mixture needs at least one task");
  }
  std::set<std::string_view> ids;
  for (const MixtureTask& t : spec.tasks) {
    if (t.id.empty()) {
      throw ValidationError("empty task id in mixture");
    }
    if (!ids.insert(t.id).second) {
      throw ValidationError("duplicate task id '" + t.id + "' in mixture");
    }
    if (t.size < 1) {
      throw ValidationError("task '" + t.id + "' has size < 1");
    }
  }
}

// splitmix64 (Steele, Lea, Flood 2014). Chosen for seed-stable, splittable
// streams with identical output on every platform.
std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64_next(state) >> 11) * 0x1.0p-53;
}

}  // namespace

const char* to_string(MixingPolicy policy) {
  return policy == MixingPolicy::equal ? "equal" : "size-weighted";
}

MixingPolicy mixing_policy_from_string(std::string_view text) {
  if (text == "equal") return MixingPolicy::equal;
  if (text == "size-weighted") return MixingPolicy::size_weighted;
  throw ValidationError("unknown mixing policy '" + std::string(text) + "'");
}

std::vector<std::pair<std::string, double>> mixture_rates(
    const MixtureSpec& spec) {
  validate_spec(spec);
  std::vector<std::pair<std::string, double>> rates;
  rates.reserve(spec.tasks.size());
  if (spec.policy == MixingPolicy::equal) {
    const double p = 1.0 / static_cast<double>(spec.tasks.size());
    for (const MixtureTask& t : spec.tasks) rates.emplace_back(t.id, p);
  } else {
    double total = 0.0;
    for (const MixtureTask& t : spec.tasks) {
      total += static_cast<double>(t.size);
    }
    for (const MixtureTask& t : spec.tasks) {
      rates.emplace_back(t.id, static_cast<double>(t.size) / total);
    }
  }
  return rates;
}

TaskSampler::TaskSampler(const MixtureSpec& spec) : state_(spec.seed) {
  const auto rates = mixture_rates(spec);
  ids_.reserve(rates.size());
  cdf_.reserve(rates.size());
  double cum = 0.0;
  for (const auto& [id, p] : rates) {
    ids_.push_back(id);
    cum += p;
    cdf_.push_back(cum);
  }
  cdf_.back() = 1.0;
}

TaskSampler::TaskSampler(std::vector<std::string> ids, std::vector<double> cdf,
                         std::uint64_t seed)
    : ids_(std::move(ids)), cdf_(std::move(cdf)), state_(seed) {}

const std::string& TaskSampler::next() {
  const double u = uniform01(state_);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const std::size_t idx =
      std::min(static_cast<std::size_t>(it - cdf_.begin()), ids_.size() - 1);
  return ids_[idx];
}

TaskSampler TaskSampler::split() {
  return TaskSampler(ids_, cdf_, splitmix64_next(state_));
}

std::vector<std::string> sample_stream(const MixtureSpec& spec,
                                       std::size_t n) {
  TaskSampler sampler(spec);
  std::vector<std::string> stream;
  stream.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    stream.push_back(sampler.next());
  }
  return stream;
}

std::vector<long long> subsample_sizes(long long full_size,
                                       const GeometricSchedule& schedule) {
  if (full_size < 1) {
    throw ValidationError("full_size must be >= 1");
  }
  if (schedule.start < 1) {
    throw ValidationError("subsample start must be >= 1");
  }
  if (!(schedule.ratio > 1.0) || !std::isfinite(schedule.ratio)) {
    throw ValidationError("subsample ratio must be > 1");
  }

  std::vector<long long> sizes;
  double value = static_cast<double>(schedule.start);
  while (value < static_cast<double>(full_size)) {
    const long long s = std::llround(value);
    if (s >= full_size) break;
    if (sizes.empty() || s > sizes.back()) {
      sizes.push_back(s);
    }
    value *= schedule.ratio;
    if (value > 9.0e18) break;
  }
  sizes.push_back(full_size);
  return sizes;
}

std::string to_json(const MixtureSpec& spec) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const MixtureTask& t : spec.tasks) {
    tasks.push_back({{"id", t.id}, {"size", t.size}});
  }
  const nlohmann::json j = {
      {"tasks", tasks}, {"policy", to_string(spec.policy)}, {"seed", spec.seed}};
  return j.dump();
}

MixtureSpec mixture_spec_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  MixtureSpec spec;
  try {
    for (const auto& t : j.at("tasks")) {
      spec.tasks.push_back(
          {t.at("id").get<std::string>(), t.at("size").get<long long>()});
    }
    spec.policy = mixing_policy_from_string(j.at("policy").get<std::string>());
    spec.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid mixture spec: ") + e.what());
  }
  validate_spec(spec);
  return spec;
}

}  // namespace cec
