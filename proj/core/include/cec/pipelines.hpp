#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cec/mixing.hpp"

namespace cec {

enum class TransferMethod { single_task, multitask, sequential, multitask_fine_tune };
enum class Preset { leaderboard, investigatory };

const char* to_string(TransferMethod method);
TransferMethod transfer_method_from_string(std::string_view text);
const char* to_string(Preset preset);
Preset preset_from_string(std::string_view text);

// Grid-search axes: name -> candidate values in declared order. Values stay
// strings so "4e-3" survives round-trips verbatim.
struct HyperparamGrid {
  std::map<std::string, std::vector<std::string>> axes;

  bool operator==(const HyperparamGrid&) const = default;
};

using GridAssignment = std::map<std::string, std::string>;

// One training stage: which datasets it mixes, how they are sampled, and the
// gradient-update / checkpoint schedule.
struct Stage {
  std::vector<std::string> datasets;  // sorted unique task ids, non-empty
  MixtureSpec mixture;
  long long gradient_updates = 0;   // > 0
  long long checkpoint_every = 0;   // > 0, <= gradient_updates
  long long keep_last = 0;          // >= 1

  bool operator==(const Stage&) const = default;
};

// A declarative staged training-job description; never executed here. The
// contract with any trainer is the JSON schema.
struct TransferPlan {
  int schema_version = 1;
  TransferMethod method = TransferMethod::single_task;
  std::string target;
  std::vector<std::string> sources;  // sorted unique, excludes target
  std::vector<Stage> stages;
  HyperparamGrid grid;
  std::string selection = "best-dev";  // checkpoint choice rule

  bool operator==(const TransferPlan&) const = default;
};

// Stage composition per method: sequential trains stage 1 on the sources and
// stage 2 on the target alone; multitask trains one stage on sources plus
// target; multitask-fine-tune trains stage 1 on sources plus target and stage
// 2 on the target alone. Presets fill the schedule and grid. Stage 2 reuses
// the stage-1 hyperparameters (the grid is plan-level).
TransferPlan build_plan(
    TransferMethod method, const std::vector<std::string>& sources,
    const std::string& target, Preset preset,
    MixingPolicy policy = MixingPolicy::equal,
    const std::map<std::string, long long>& dataset_sizes = {},
    std::uint64_t seed = 0);

// Full Cartesian product in lexicographic axis-name order; the first axis
// varies slowest. An empty axes map yields one empty assignment.
std::vector<GridAssignment> enumerate_grid(const HyperparamGrid& grid);

// One runnable job per (grid assignment, learning-curve size).
struct JobSpec {
  std::string id;
  TransferMethod method = TransferMethod::single_task;
  std::string target;
  long long train_size = 0;  // target-dataset subsample size
  GridAssignment hyperparams;
  std::string selection;
  std::vector<Stage> stages;
};

std::vector<JobSpec> plan_to_jobs(const TransferPlan& plan,
                                  std::span<const long long> sizes);

std::string to_json(const TransferPlan& plan);
TransferPlan plan_from_json(std::string_view text);
std::string to_json(std::span<const JobSpec> jobs);

}  // namespace cec
