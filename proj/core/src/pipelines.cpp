#include "cec/pipelines.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace cec {

namespace {

struct PresetConfig {
  long long gradient_updates;
  long long checkpoint_every;
  long long keep_last;
  HyperparamGrid grid;
};

PresetConfig preset_config(Preset preset) {
  if (preset == Preset::leaderboard) {
    return {25000,
            2500,
            10,
            {{{"batch_size", {"16", "32"}},
              {"learning_rate", {"4e-3", "2e-3", "1e-3", "5e-4"}}}}};
  }
  return {50000,
          5000,
          10,
          {{{"batch_size", {"16"}},
            {"learning_rate", {"4e-3", "1e-3", "2.5e-4"}}}}};
}

std::vector<std::string> sorted_unique(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::uint64_t derive_stage_seed(std::uint64_t seed, std::size_t stage_index) {
  // splitmix64 of (seed xor stage index) so stages sample distinct streams.
  std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (stage_index + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Stage make_stage(std::vector<std::string> datasets, MixingPolicy policy,
                 const std::map<std::string, long long>& dataset_sizes,
                 std::uint64_t seed, std::size_t stage_index,
                 const PresetConfig& config) {
  Stage stage;
  stage.datasets = std::move(datasets);
  for (const std::string& id : stage.datasets) {
    const auto it = dataset_sizes.find(id);
    stage.mixture.tasks.push_back({id, it != dataset_sizes.end() ? it->second : 1});
  }
  stage.mixture.policy = policy;
  stage.mixture.seed = derive_stage_seed(seed, stage_index);
  stage.gradient_updates = config.gradient_updates;
  stage.checkpoint_every = config.checkpoint_every;
  stage.keep_last = config.keep_last;
  return stage;
}

void validate_grid(const HyperparamGrid& grid) {
  for (const auto& [name, values] : grid.axes) {
    if (name.empty()) {
      throw ValidationError("hyperparameter axis with empty name");
    }
    if (values.empty()) {
      throw ValidationError("hyperparameter axis '" + name + "' has no values");
    }
    std::set<std::string_view> seen;
    for (const std::string& v : values) {
      if (!seen.insert(v).second) {
        throw ValidationError("duplicate value '" + v + "' on axis '" + name +
                              "'");
      }
    }
  }
}

void validate_stage(const Stage& stage) {
  if (stage.datasets.empty()) {
    throw ValidationError("stage has no datasets");
  }
  if (!std::is_sorted(stage.datasets.begin(), stage.datasets.end()) ||
      std::adjacent_find(stage.datasets.begin(), stage.datasets.end()) !=
          stage.datasets.end()) {
    throw ValidationError("stage datasets must be sorted and unique");
  }
  if (stage.gradient_updates < 1) {
    throw ValidationError("gradient_updates must be >= 1");
  }
  if (stage.checkpoint_every < 1 ||
      stage.checkpoint_every > stage.gradient_updates) {
    throw ValidationError("checkpoint_every must be in [1, gradient_updates]");
  }
  if (stage.keep_last < 1) {
    throw ValidationError("keep_last must be >= 1");
  }
}

void validate_plan(const TransferPlan& plan) {
  if (plan.target.empty()) {
    throw ValidationError("plan has no target");
  }
  const std::size_t expected_stages =
      (plan.method == TransferMethod::sequential ||
       plan.method == TransferMethod::multitask_fine_tune)
          ? 2
          : 1;
  if (plan.stages.size() != expected_stages) {
    throw ValidationError(std::string(to_string(plan.method)) + " plan needs " +
                          std::to_string(expected_stages) + " stage(s)");
  }
  if (expected_stages == 2 &&
      plan.stages[1].datasets != std::vector<std::string>{plan.target}) {
    throw ValidationError("stage 2 must train on exactly the target dataset");
  }
  for (const Stage& stage : plan.stages) validate_stage(stage);
  validate_grid(plan.grid);
}

}  // namespace

const char* to_string(TransferMethod method) {
  switch (method) {
    case TransferMethod::single_task:
      return "single-task";
    case TransferMethod::multitask:
      return "multitask";
    case TransferMethod::sequential:
      return "sequential";
    case TransferMethod::multitask_fine_tune:
      return "multitask-fine-tune";
  }
  return "single-task";
}

TransferMethod transfer_method_from_string(std::string_view text) {
  if (text == "single-task") return TransferMethod::single_task;
  if (text == "multitask") return TransferMethod::multitask;
  if (text == "sequential") return TransferMethod::sequential;
  if (text == "multitask-fine-tune") return TransferMethod::multitask_fine_tune;
  throw ValidationError("unknown transfer method '" + std::string(text) + "'");
}

const char* to_string(Preset preset) {
  return preset == Preset::leaderboard ? "leaderboard" : "investigatory";
}

Preset preset_from_string(std::string_view text) {
  if (text == "leaderboard") return Preset::leaderboard;
  if (text == "investigatory") return Preset::investigatory;
  throw ValidationError("unknown preset '" + std::string(text) + "'");
}

TransferPlan build_plan(TransferMethod method,
                        const std::vector<std::string>& sources,
                        const std::string& target, Preset preset,
                        MixingPolicy policy,
                        const std::map<std::string, long long>& dataset_sizes,
                        std::uint64_t seed) {
  if (target.empty()) {
    throw ValidationError("empty target task");
  }
  const std::vector<std::string> src = sorted_unique(sources);
  if (std::binary_search(src.begin(), src.end(), target)) {
    throw ValidationError("target '" + target + "' must not be a source");
  }
  const bool is_transfer = method != TransferMethod::single_task;
  if (is_transfer && src.empty()) {
    throw ValidationError(std::string(to_string(method)) +
                          " needs at least one source task");
  }
  if (!is_transfer && !src.empty()) {
    throw ValidationError("single-task takes no source tasks");
  }

  const PresetConfig config = preset_config(preset);

  TransferPlan plan;
  plan.method = method;
  plan.target = target;
  plan.sources = src;
  plan.grid = config.grid;

  auto with_target = [&] {
    std::vector<std::string> ids = src;
    ids.push_back(target);
    return sorted_unique(std::move(ids));
  };

  switch (method) {
    case TransferMethod::single_task:
      plan.stages.push_back(
          make_stage({target}, policy, dataset_sizes, seed, 0, config));
      break;
    case TransferMethod::multitask:
      plan.stages.push_back(
          make_stage(with_target(), policy, dataset_sizes, seed, 0, config));
      break;
    case TransferMethod::sequential:
      plan.stages.push_back(
          make_stage(src, policy, dataset_sizes, seed, 0, config));
      plan.stages.push_back(
          make_stage({target}, policy, dataset_sizes, seed, 1, config));
      break;
    case TransferMethod::multitask_fine_tune:
      plan.stages.push_back(
          make_stage(with_target(), policy, dataset_sizes, seed, 0, config));
      plan.stages.push_back(
          make_stage({target}, policy, dataset_sizes, seed, 1, config));
      break;
  }
  validate_plan(plan);
  return plan;
}

std::vector<GridAssignment> enumerate_grid(const HyperparamGrid& grid) {
  validate_grid(grid);

  std::vector<GridAssignment> assignments;
  assignments.emplace_back();
  // axes iterate in sorted name order; rebuilding the product per axis keeps
  // earlier axes varying slowest.
  for (const auto& [name, values] : grid.axes) {
    std::vector<GridAssignment> expanded;
    expanded.reserve(assignments.size() * values.size());
    for (const GridAssignment& partial : assignments) {
      for (const std::string& value : values) {
        GridAssignment next = partial;
        next[name] = value;
        expanded.push_back(std::move(next));
      }
    }
    assignments = std::move(expanded);
  }
  return assignments;
}

std::vector<JobSpec> plan_to_jobs(const TransferPlan& plan,
                                  std::span<const long long> sizes) {
  validate_plan(plan);
  for (long long size : sizes) {
    if (size < 1) {
      throw ValidationError("job sizes must be >= 1");
    }
  }

  const std::vector<GridAssignment> assignments = enumerate_grid(plan.grid);
  std::vector<JobSpec> jobs;
  jobs.reserve(assignments.size() * sizes.size());
  for (std::size_t a = 0; a < assignments.size(); ++a) {
    for (long long size : sizes) {
      JobSpec job;
      job.id = std::string(to_string(plan.method)) + "-" + plan.target + "-g" +
               std::to_string(a) + "-n" + std::to_string(size);
      job.method = plan.method;
      job.target = plan.target;
      job.train_size = size;
      job.hyperparams = assignments[a];
      job.selection = plan.selection;
      job.stages = plan.stages;
      jobs.push_back(std::move(job));
    }
  }
  return jobs;
}

namespace {

nlohmann::json mixture_json(const MixtureSpec& spec) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const MixtureTask& t : spec.tasks) {
    tasks.push_back({{"id", t.id}, {"size", t.size}});
  }
  return {{"tasks", tasks}, {"policy", to_string(spec.policy)}, {"seed", spec.seed}};
}

MixtureSpec mixture_from_json(const nlohmann::json& j) {
  MixtureSpec spec;
  for (const auto& t : j.at("tasks")) {
    spec.tasks.push_back(
        {t.at("id").get<std::string>(), t.at("size").get<long long>()});
  }
  spec.policy = mixing_policy_from_string(j.at("policy").get<std::string>());
  spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

nlohmann::json stage_json(const Stage& stage) {
  return {{"datasets", stage.datasets},
          {"mixture", mixture_json(stage.mixture)},
          {"gradient_updates", stage.gradient_updates},
          {"checkpoint_every", stage.checkpoint_every},
          {"keep_last", stage.keep_last}};
}

Stage stage_from_json(const nlohmann::json& j) {
  Stage stage;
  stage.datasets = j.at("datasets").get<std::vector<std::string>>();
  stage.mixture = mixture_from_json(j.at("mixture"));
  stage.gradient_updates = j.at("gradient_updates").get<long long>();
  stage.checkpoint_every = j.at("checkpoint_every").get<long long>();
  stage.keep_last = j.at("keep_last").get<long long>();
  return stage;
}

}  // namespace

std::string to_json(const TransferPlan& plan) {
  nlohmann::json stages = nlohmann::json::array();
  for (const Stage& stage : plan.stages) stages.push_back(stage_json(stage));
  const nlohmann::json j = {{"schema_version", plan.schema_version},
                            {"method", to_string(plan.method)},
                            {"target", plan.target},
                            {"sources", plan.sources},
                            {"selection", plan.selection},
                            {"stages", stages},
                            {"grid", {{"axes", plan.grid.axes}}}};
  return j.dump();
}

TransferPlan plan_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }

  TransferPlan plan;
  try {
    plan.schema_version = j.at("schema_version").get<int>();
    plan.method = transfer_method_from_string(j.at("method").get<std::string>());
    plan.target = j.at("target").get<std::string>();
    plan.sources = j.at("sources").get<std::vector<std::string>>();
    plan.selection = j.at("selection").get<std::string>();
    for (const auto& s : j.at("stages")) {
      plan.stages.push_back(stage_from_json(s));
    }
    plan.grid.axes =
        j.at("grid").at("axes")
            .get<std::map<std::string, std::vector<std::string>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid transfer plan: ") + e.what());
  }
  if (plan.schema_version != 1) {
    throw ValidationError("unsupported schema_version " +
                          std::to_string(plan.schema_version));
  }
  validate_plan(plan);
  return plan;
}

std::string to_json(std::span<const JobSpec> jobs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const JobSpec& job : jobs) {
    nlohmann::json stages = nlohmann::json::array();
    for (const Stage& stage : job.stages) {
      nlohmann::json s = stage_json(stage);
      nlohmann::json rates = nlohmann::json::object();
      for (const auto& [id, p] : mixture_rates(stage.mixture)) {
        rates[id] = p;
      }
      s["rates"] = rates;
      stages.push_back(std::move(s));
    }
    arr.push_back({{"id", job.id},
                   {"method", to_string(job.method)},
                   {"target", job.target},
                   {"train_size", job.train_size},
                   {"hyperparams", job.hyperparams},
                   {"selection", job.selection},
                   {"stages", stages}});
  }
  return arr.dump();
}

}  // namespace cec
