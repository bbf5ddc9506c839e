#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cec/errors.hpp"

namespace cec {

enum class MixingPolicy { equal, size_weighted };

const char* to_string(MixingPolicy policy);
MixingPolicy mixing_policy_from_string(std::string_view text);

struct MixtureTask {
  std::string id;
  long long size = 1;  // dataset size, >= 1

  bool operator==(const MixtureTask&) const = default;
};

// Which tasks to interleave during multitask training and how to weight them.
struct MixtureSpec {
  std::vector<MixtureTask> tasks;
  MixingPolicy policy = MixingPolicy::equal;
  std::uint64_t seed = 0;

  bool operator==(const MixtureSpec&) const = default;
};

// Per-example sampling probability for each task: equal -> 1/k,
// size-weighted -> size / total size. Probabilities sum to 1.
std::vector<std::pair<std::string, double>> mixture_rates(
    const MixtureSpec& spec);

// Seed-stable task sampler. The generator is a splitmix64 stream mapped
// through the mixture CDF, so identical (spec, n) produce identical sequences
// on every platform. One sampler per consumer; split() derives an independent
// child stream.
class TaskSampler {
 public:
  explicit TaskSampler(const MixtureSpec& spec);

  const std::string& next();
  TaskSampler split();

 private:
  TaskSampler(std::vector<std::string> ids, std::vector<double> cdf,
              std::uint64_t seed);

  std::vector<std::string> ids_;
  std::vector<double> cdf_;
  std::uint64_t state_;
};

// Length-n i.i.d. draw from mixture_rates(spec).
std::vector<std::string> sample_stream(const MixtureSpec& spec, std::size_t n);

// Geometric size grid for learning curves: start, start*ratio, ... capped at
// and terminated by the full dataset size.
struct GeometricSchedule {
  long long start = 16;
  double ratio = 4.0;  // > 1
};

std::vector<long long> subsample_sizes(long long full_size,
                                       const GeometricSchedule& schedule);

std::string to_json(const MixtureSpec& spec);
MixtureSpec mixture_spec_from_json(std::string_view text);

}  // namespace cec
