// cectool: command-line front end for learning-curve ingestion, cost
// equivalent curves, SVG charts, text-to-text serialization, mixture
// sampling, and transfer-plan generation.
//
// Exit codes: 0 success, 1 domain error, 2 usage or format error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cec/cost_equivalent.hpp"
#include "cec/experiments.hpp"
#include "cec/mixing.hpp"
#include "cec/pipelines.hpp"
#include "cec/svg_plot.hpp"
#include "cec/textify.hpp"

namespace {

// Bad flag combinations and malformed flag values; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw cec::Error("cannot read '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw cec::Error("cannot write '" + path + "'");
  }
  out << content;
}

std::string sanitize_for_filename(const std::string& label) {
  std::string out = label;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return out;
}

std::string output_path_for(const std::string& base, const std::string& label,
                            bool multi) {
  if (!multi || base == "-") return base;
  const std::size_t dot = base.find_last_of('.');
  const std::size_t slash = base.find_last_of('/');
  const bool has_ext = dot != std::string::npos &&
                       (slash == std::string::npos || dot > slash);
  const std::string stem = has_ext ? base.substr(0, dot) : base;
  const std::string ext = has_ext ? base.substr(dot) : std::string();
  return stem + "-" + sanitize_for_filename(label) + ext;
}

// --- series selection ------------------------------------------------------

using Selector = std::vector<std::pair<std::string, std::string>>;

Selector parse_selector(const std::string& text) {
  Selector selector;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string clause = text.substr(pos, comma - pos);
    const std::size_t eq = clause.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("bad selector clause '" + clause +
                       "' (expected field=value)");
    }
    const std::string field = clause.substr(0, eq);
    const bool known =
        std::find(std::begin(cec::kSeriesKeyFields),
                  std::end(cec::kSeriesKeyFields),
                  field) != std::end(cec::kSeriesKeyFields);
    if (!known) {
      throw UsageError("unknown selector field '" + field +
                       "' (use task, method, source, model_size, metric)");
    }
    selector.emplace_back(field, clause.substr(eq + 1));
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  if (selector.empty()) {
    throw UsageError("empty selector");
  }
  return selector;
}

const std::string& key_field(const cec::SeriesKey& key,
                             const std::string& name) {
  if (name == "task") return key.task;
  if (name == "method") return key.method;
  if (name == "source") return key.source;
  if (name == "model_size") return key.model_size;
  return key.metric;
}

const cec::LearningCurveSeries& select_series(
    std::span<const cec::LearningCurveSeries> series, const Selector& selector,
    const std::string& what) {
  const cec::LearningCurveSeries* found = nullptr;
  std::size_t matches = 0;
  for (const auto& s : series) {
    const bool match =
        std::all_of(selector.begin(), selector.end(), [&](const auto& clause) {
          return key_field(s.key, clause.first) == clause.second;
        });
    if (match) {
      ++matches;
      found = &s;
    }
  }
  if (matches == 1) return *found;

  std::string msg = matches == 0
                        ? what + " selector matched no series"
                        : what + " selector matched " +
                              std::to_string(matches) + " series";
  msg += "; available keys (task/method/source/model_size/metric):";
  for (const auto& s : series) {
    msg += "\n  " + s.key.label();
  }
  throw cec::Error(msg);
}

double parse_full_double(const std::string& text, const char* what) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw UsageError(std::string("bad ") + what + " '" + text + "'");
  }
  if (consumed != text.size()) {
    throw UsageError(std::string("bad ") + what + " '" + text + "'");
  }
  return value;
}

long long parse_full_int(const std::string& text, const char* what) {
  std::size_t consumed = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &consumed);
  } catch (const std::exception&) {
    throw UsageError(std::string("bad ") + what + " '" + text + "'");
  }
  if (consumed != text.size()) {
    throw UsageError(std::string("bad ") + what + " '" + text + "'");
  }
  return value;
}

cec::GridSpec parse_grid(const std::string& text) {
  if (text == "auto") return cec::GridSpec::automatic();
  if (text.rfind("dense:", 0) == 0) {
    const long long n = parse_full_int(text.substr(6), "dense grid size");
    if (n < 2) {
      throw UsageError("dense grid needs at least 2 points");
    }
    return cec::GridSpec::dense(static_cast<std::size_t>(n));
  }
  std::vector<double> points;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    points.push_back(
        parse_full_double(text.substr(pos, comma - pos), "grid point"));
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return cec::GridSpec::explicit_points(std::move(points));
}

// --- task example / triple streams -----------------------------------------

std::vector<cec::TaskExample> examples_from_json_lines(
    const std::string& text) {
  std::vector<cec::TaskExample> examples;
  std::size_t pos = 0;
  std::size_t row = 1;
  while (pos < text.size()) {
    std::size_t line_end = text.find('\n', pos);
    if (line_end == std::string::npos) line_end = text.size();
    const std::string line = text.substr(pos, line_end - pos);
    if (!line.empty()) {
      try {
        const nlohmann::json j = nlohmann::json::parse(line);
        cec::TaskExample e;
        e.task = j.at("task").get<std::string>();
        for (const auto& f : j.at("features")) {
          e.features.emplace_back(f.at(0).get<std::string>(),
                                  f.at(1).get<std::string>());
        }
        e.target = j.at("target").get<std::string>();
        examples.push_back(std::move(e));
      } catch (const nlohmann::json::exception& e) {
        throw cec::ParseError::at_row(
            std::string("invalid example JSON: ") + e.what(), row);
      }
    }
    pos = line_end + 1;
    ++row;
  }
  return examples;
}

std::string examples_to_json_lines(std::span<const cec::TaskExample> examples) {
  std::string out;
  for (const cec::TaskExample& e : examples) {
    nlohmann::json features = nlohmann::json::array();
    for (const auto& [tag, value] : e.features) {
      features.push_back({tag, value});
    }
    const nlohmann::json j = {
        {"task", e.task}, {"features", features}, {"target", e.target}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<cec::KgTriple> triples_from_tsv(const std::string& text) {
  std::vector<cec::KgTriple> triples;
  std::size_t pos = 0;
  std::size_t row = 1;
  while (pos < text.size()) {
    std::size_t line_end = text.find('\n', pos);
    if (line_end == std::string::npos) line_end = text.size();
    const std::string line = text.substr(pos, line_end - pos);
    if (!line.empty()) {
      std::vector<std::string> fields;
      std::size_t p = 0;
      while (p <= line.size()) {
        std::size_t tab = line.find('\t', p);
        if (tab == std::string::npos) tab = line.size();
        fields.push_back(line.substr(p, tab - p));
        if (tab == line.size()) break;
        p = tab + 1;
      }
      if (fields.size() != 4) {
        throw cec::ParseError::at_row(
            "expected graph<TAB>subject<TAB>relation<TAB>object", row);
      }
      try {
        triples.push_back({cec::knowledge_graph_from_string(
                               cec::tsv_unescape_field(fields[0])),
                           cec::tsv_unescape_field(fields[1]),
                           cec::tsv_unescape_field(fields[2]),
                           cec::tsv_unescape_field(fields[3])});
      } catch (const cec::Error& e) {
        throw cec::ParseError::at_row(e.what(), row);
      }
    }
    pos = line_end + 1;
    ++row;
  }
  return triples;
}

std::vector<cec::KgTriple> triples_from_json_lines(const std::string& text) {
  std::vector<cec::KgTriple> triples;
  std::size_t pos = 0;
  std::size_t row = 1;
  while (pos < text.size()) {
    std::size_t line_end = text.find('\n', pos);
    if (line_end == std::string::npos) line_end = text.size();
    const std::string line = text.substr(pos, line_end - pos);
    if (!line.empty()) {
      try {
        const nlohmann::json j = nlohmann::json::parse(line);
        triples.push_back({cec::knowledge_graph_from_string(
                               j.at("graph").get<std::string>()),
                           j.at("subject").get<std::string>(),
                           j.at("relation").get<std::string>(),
                           j.at("object").get<std::string>()});
      } catch (const nlohmann::json::exception& e) {
        throw cec::ParseError::at_row(
            std::string("invalid triple JSON: ") + e.what(), row);
      } catch (const cec::ValidationError& e) {
        throw cec::ParseError::at_row(e.what(), row);
      }
    }
    pos = line_end + 1;
    ++row;
  }
  return triples;
}

// --- mix / plan shared flags -----------------------------------------------

cec::MixtureSpec parse_tasks_spec(const std::string& text,
                                  cec::MixingPolicy policy,
                                  std::uint64_t seed) {
  cec::MixtureSpec spec;
  spec.policy = policy;
  spec.seed = seed;

  const bool all_digits =
      !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
        return c >= '0' && c <= '9';
      });
  if (all_digits) {
    const long long count = parse_full_int(text, "--tasks count");
    if (count < 1) {
      throw UsageError("--tasks count must be >= 1");
    }
    for (long long i = 1; i <= count; ++i) {
      spec.tasks.push_back({"task" + std::to_string(i), 1});
    }
    return spec;
  }

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      spec.tasks.push_back({item, 1});
    } else {
      spec.tasks.push_back(
          {item.substr(0, colon),
           parse_full_int(item.substr(colon + 1), "task size")});
    }
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return spec;
}

// --- subcommands -------------------------------------------------------------

struct CecOptions {
  std::string results_path;
  std::string control;
  std::vector<std::string> treatments;
  std::string grid = "auto";
  std::string out = "-";
  std::string format = "csv";
  std::string aggregate = "best";
};

void run_cec(const CecOptions& opt) {
  const auto records = cec::parse_results_csv(read_input(opt.results_path));
  const cec::Aggregation agg = opt.aggregate == "mean"
                                   ? cec::Aggregation::mean
                                   : cec::Aggregation::best;
  const auto series = cec::aggregate(records, agg);

  const auto& control =
      select_series(series, parse_selector(opt.control), "control");
  const cec::GridSpec grid = parse_grid(opt.grid);

  const bool multi = opt.treatments.size() > 1;
  std::string stdout_accum;
  for (const std::string& selector_text : opt.treatments) {
    const auto& treatment =
        select_series(series, parse_selector(selector_text), "treatment");
    const auto cec_curve = cec::compute_cec(cec::to_samples(control),
                                            cec::to_samples(treatment), grid);
    const std::string table = opt.format == "json" ? cec::to_json(cec_curve)
                                                   : cec::to_csv(cec_curve);
    if (opt.out == "-") {
      if (multi) {
        stdout_accum += "# treatment: " + treatment.key.label() + "\n";
      }
      stdout_accum += table;
      if (multi) stdout_accum += "\n";
    } else {
      write_output(output_path_for(opt.out, treatment.key.label(), multi),
                   table);
    }
  }
  if (opt.out == "-") {
    write_output("-", stdout_accum);
  }
}

struct PlotOptions {
  std::vector<std::string> tables;
  std::vector<std::string> labels;
  std::string out = "-";
  int width = 800;
  int height = 560;
  bool no_diagonal = false;
  bool no_top_axis = false;
  bool no_dash = false;
  bool log_scale = false;
};

void run_plot(const PlotOptions& opt) {
  if (!opt.labels.empty() && opt.labels.size() != opt.tables.size()) {
    throw UsageError("--label count must match the number of tables");
  }
  std::vector<cec::PlotSeries> series;
  for (std::size_t i = 0; i < opt.tables.size(); ++i) {
    const std::string text = read_input(opt.tables[i]);
    cec::CostEquivalentCurve curve;
    const std::size_t first =
        text.find_first_not_of(" \t\r\n");  // sniff CSV vs JSON
    if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
      curve = cec::cec_from_json(text);
    } else {
      curve = cec::cec_from_csv(text);
    }
    std::string label;
    if (!opt.labels.empty()) {
      label = opt.labels[i];
    } else if (opt.tables[i] == "-") {
      label = "series " + std::to_string(i + 1);
    } else {
      const std::size_t slash = opt.tables[i].find_last_of('/');
      label = opt.tables[i].substr(slash == std::string::npos ? 0 : slash + 1);
    }
    series.push_back({std::move(label), std::move(curve)});
  }

  cec::PlotStyle style;
  style.width = opt.width;
  style.height = opt.height;
  style.show_diagonal = !opt.no_diagonal;
  style.show_top_axis = !opt.no_top_axis;
  style.dashed_extrapolation = !opt.no_dash;
  style.log_scale = opt.log_scale;
  write_output(opt.out, cec::render_cec_svg(series, style));
}

struct PreprocessOptions {
  std::string input = "-";
  std::string out = "-";
  std::string to = "tsv";
  std::string from = "tsv";
  bool invert = false;
};

void run_preprocess(const PreprocessOptions& opt) {
  const std::string text = read_input(opt.input);
  if (opt.invert) {
    const auto pairs = opt.from == "jsonl" ? cec::pairs_from_json_lines(text)
                                           : cec::pairs_from_tsv(text);
    std::vector<cec::TaskExample> examples;
    examples.reserve(pairs.size());
    for (const cec::TextPair& p : pairs) {
      examples.push_back(cec::parse_example(p.input, p.target));
    }
    write_output(opt.out, examples_to_json_lines(examples));
    return;
  }
  const auto examples = examples_from_json_lines(text);
  std::vector<cec::TextPair> pairs;
  pairs.reserve(examples.size());
  for (const cec::TaskExample& e : examples) {
    pairs.push_back(cec::serialize_example(e));
  }
  write_output(opt.out, opt.to == "jsonl" ? cec::pairs_to_json_lines(pairs)
                                          : cec::pairs_to_tsv(pairs));
}

struct KgOptions {
  std::string input = "-";
  std::string out = "-";
  std::string direction = "forward";
  std::string from = "tsv";
  std::string to = "tsv";
};

void run_kg(const KgOptions& opt) {
  const std::string text = read_input(opt.input);
  const auto triples = opt.from == "jsonl" ? triples_from_json_lines(text)
                                           : triples_from_tsv(text);
  const cec::KgDirection direction =
      cec::kg_direction_from_string(opt.direction);
  std::vector<cec::TextPair> pairs;
  for (const cec::KgTriple& t : triples) {
    for (cec::TextPair& p : cec::serialize_kg_triple(t, direction)) {
      pairs.push_back(std::move(p));
    }
  }
  write_output(opt.out, opt.to == "jsonl" ? cec::pairs_to_json_lines(pairs)
                                          : cec::pairs_to_tsv(pairs));
}

struct MixOptions {
  std::string tasks;
  std::string policy = "equal";
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  bool rates = false;
  long long subsample_full = 0;
  long long start = 16;
  double ratio = 4.0;
  std::string out = "-";
};

void run_mix(const MixOptions& opt) {
  if (opt.subsample_full > 0) {
    const auto sizes =
        cec::subsample_sizes(opt.subsample_full, {opt.start, opt.ratio});
    std::string out;
    for (long long s : sizes) {
      out += std::to_string(s);
      out += '\n';
    }
    write_output(opt.out, out);
    return;
  }
  if (opt.tasks.empty()) {
    throw UsageError("--tasks is required unless --subsample is given");
  }
  const cec::MixtureSpec spec = parse_tasks_spec(
      opt.tasks, cec::mixing_policy_from_string(opt.policy), opt.seed);
  if (opt.rates) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [id, p] : cec::mixture_rates(spec)) {
      arr.push_back({{"id", id}, {"rate", p}});
    }
    write_output(opt.out, arr.dump() + "\n");
    return;
  }
  std::string out;
  for (const std::string& id : cec::sample_stream(spec, opt.n)) {
    out += id;
    out += '\n';
  }
  write_output(opt.out, out);
}

struct PlanOptions {
  std::string method;
  std::vector<std::string> sources;
  std::string target;
  std::string preset = "investigatory";
  std::string policy = "equal";
  std::uint64_t seed = 0;
  std::vector<std::string> dataset_sizes;  // id=size
  std::vector<long long> sizes;
  long long subsample_full = 0;
  long long start = 16;
  double ratio = 4.0;
  bool jobs = false;
  std::string out = "-";
};

void run_plan(const PlanOptions& opt) {
  std::map<std::string, long long> dataset_sizes;
  for (const std::string& item : opt.dataset_sizes) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw UsageError("bad --dataset-size '" + item + "' (expected id=size)");
    }
    dataset_sizes[item.substr(0, eq)] =
        parse_full_int(item.substr(eq + 1), "dataset size");
  }

  const cec::TransferPlan plan = cec::build_plan(
      cec::transfer_method_from_string(opt.method), opt.sources, opt.target,
      cec::preset_from_string(opt.preset),
      cec::mixing_policy_from_string(opt.policy), dataset_sizes, opt.seed);

  std::vector<long long> sizes = opt.sizes;
  if (opt.subsample_full > 0) {
    sizes = cec::subsample_sizes(opt.subsample_full, {opt.start, opt.ratio});
  }

  if (opt.jobs) {
    if (sizes.empty()) {
      throw UsageError("--jobs needs --sizes or --subsample");
    }
    write_output(opt.out, cec::to_json(cec::plan_to_jobs(plan, sizes)) + "\n");
    return;
  }

  // Plan document plus the enumerated grid for consumers that want the
  // assignments spelled out.
  nlohmann::json doc = nlohmann::json::parse(cec::to_json(plan));
  nlohmann::json assignments = nlohmann::json::array();
  for (const cec::GridAssignment& a : cec::enumerate_grid(plan.grid)) {
    assignments.push_back(a);
  }
  doc["grid_assignments"] = std::move(assignments);
  write_output(opt.out, doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cost-equivalent curve toolkit"};
  app.require_subcommand(1);

  CecOptions cec_opt;
  CLI::App* cec_cmd = app.add_subcommand(
      "cec", "compute cost equivalent curves from a results table");
  cec_cmd->add_option("results", cec_opt.results_path,
                      "results CSV ('-' for stdin)")
      ->required();
  cec_cmd->add_option("--control", cec_opt.control,
                      "control series selector, e.g. method=single-task")
      ->required();
  cec_cmd->add_option("--treatment", cec_opt.treatments,
                      "treatment series selector (repeatable)")
      ->required();
  cec_cmd->add_option("--grid", cec_opt.grid,
                      "auto, dense:N, or comma-separated costs");
  cec_cmd->add_option("--out", cec_opt.out, "output path ('-' for stdout)");
  cec_cmd->add_option("--format", cec_opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cec_cmd->add_option("--aggregate", cec_opt.aggregate,
                      "best (default) or mean over hyperparameters")
      ->check(CLI::IsMember({"best", "mean"}));
  cec_cmd->callback([&] { run_cec(cec_opt); });

  PlotOptions plot_opt;
  CLI::App* plot_cmd =
      app.add_subcommand("plot", "render cost equivalent tables as SVG");
  plot_cmd->add_option("tables", plot_opt.tables, "CEC table files (CSV or JSON)")
      ->required();
  plot_cmd->add_option("--label", plot_opt.labels, "series label (repeatable)");
  plot_cmd->add_option("--out", plot_opt.out, "output path ('-' for stdout)");
  plot_cmd->add_option("--width", plot_opt.width, "width in pixels");
  plot_cmd->add_option("--height", plot_opt.height, "height in pixels");
  plot_cmd->add_flag("--no-diagonal", plot_opt.no_diagonal,
                     "omit the y=x reference line");
  plot_cmd->add_flag("--no-top-axis", plot_opt.no_top_axis,
                     "omit the benefit labels on top");
  plot_cmd->add_flag("--no-dash", plot_opt.no_dash,
                     "draw extrapolated segments solid");
  plot_cmd->add_flag("--log", plot_opt.log_scale, "log-scale the cost axes");
  plot_cmd->callback([&] { run_plot(plot_opt); });

  PreprocessOptions pre_opt;
  CLI::App* pre_cmd = app.add_subcommand(
      "preprocess", "serialize task examples to text-to-text pairs");
  pre_cmd->add_option("input", pre_opt.input,
                      "JSON-lines task examples ('-' for stdin)");
  pre_cmd->add_option("--out", pre_opt.out, "output path ('-' for stdout)");
  pre_cmd->add_option("--to", pre_opt.to, "pair output format: tsv or jsonl")
      ->check(CLI::IsMember({"tsv", "jsonl"}));
  pre_cmd->add_flag("--invert", pre_opt.invert,
                    "parse pairs back into task examples");
  pre_cmd->add_option("--from", pre_opt.from,
                      "pair input format for --invert: tsv or jsonl")
      ->check(CLI::IsMember({"tsv", "jsonl"}));
  pre_cmd->callback([&] { run_preprocess(pre_opt); });

  KgOptions kg_opt;
  CLI::App* kg_cmd = app.add_subcommand(
      "kg", "serialize knowledge-graph triples to text-to-text pairs");
  kg_cmd->add_option("input", kg_opt.input,
                     "triples as TSV graph/subject/relation/object or JSON lines");
  kg_cmd->add_option("--direction", kg_opt.direction,
                     "forward, backward, or bidirectional")
      ->check(CLI::IsMember({"forward", "backward", "bidirectional"}));
  kg_cmd->add_option("--from", kg_opt.from, "triple input format: tsv or jsonl")
      ->check(CLI::IsMember({"tsv", "jsonl"}));
  kg_cmd->add_option("--to", kg_opt.to, "pair output format: tsv or jsonl")
      ->check(CLI::IsMember({"tsv", "jsonl"}));
  kg_cmd->add_option("--out", kg_opt.out, "output path ('-' for stdout)");
  kg_cmd->callback([&] { run_kg(kg_opt); });

  MixOptions mix_opt;
  CLI::App* mix_cmd = app.add_subcommand(
      "mix", "mixture rates, sample streams, and subsample size grids");
  mix_cmd->add_option("--tasks", mix_opt.tasks,
                      "task count or comma-separated id:size list");
  mix_cmd->add_option("--policy", mix_opt.policy, "equal or size-weighted")
      ->check(CLI::IsMember({"equal", "size-weighted"}));
  mix_cmd->add_option("--seed", mix_opt.seed, "sampler seed");
  mix_cmd->add_option("--n", mix_opt.n, "stream length");
  mix_cmd->add_flag("--rates", mix_opt.rates, "print rates instead of a stream");
  mix_cmd->add_option("--subsample", mix_opt.subsample_full,
                      "emit a geometric size grid up to this full size");
  mix_cmd->add_option("--start", mix_opt.start, "first subsample size");
  mix_cmd->add_option("--ratio", mix_opt.ratio, "subsample growth ratio");
  mix_cmd->add_option("--out", mix_opt.out, "output path ('-' for stdout)");
  mix_cmd->callback([&] { run_mix(mix_opt); });

  PlanOptions plan_opt;
  CLI::App* plan_cmd =
      app.add_subcommand("plan", "generate transfer training plans and jobs");
  plan_cmd->add_option("method", plan_opt.method,
                       "single-task, multitask, sequential, or multitask-fine-tune")
      ->required();
  plan_cmd->add_option("--sources", plan_opt.sources,
                       "source task ids (comma-separated)")
      ->delimiter(',');
  plan_cmd->add_option("--target", plan_opt.target, "target task id")
      ->required();
  plan_cmd->add_option("--preset", plan_opt.preset,
                       "leaderboard or investigatory")
      ->check(CLI::IsMember({"leaderboard", "investigatory"}));
  plan_cmd->add_option("--policy", plan_opt.policy, "equal or size-weighted")
      ->check(CLI::IsMember({"equal", "size-weighted"}));
  plan_cmd->add_option("--seed", plan_opt.seed, "mixture seed");
  plan_cmd->add_option("--dataset-size", plan_opt.dataset_sizes,
                       "dataset size as id=count (repeatable)");
  plan_cmd->add_option("--sizes", plan_opt.sizes,
                       "learning-curve sizes (comma-separated)")
      ->delimiter(',');
  plan_cmd->add_option("--subsample", plan_opt.subsample_full,
                       "derive sizes geometrically up to this full size");
  plan_cmd->add_option("--start", plan_opt.start, "first subsample size");
  plan_cmd->add_option("--ratio", plan_opt.ratio, "subsample growth ratio");
  plan_cmd->add_flag("--jobs", plan_opt.jobs,
                     "emit the expanded job list instead of the plan");
  plan_cmd->add_option("--out", plan_opt.out, "output path ('-' for stdout)");
  plan_cmd->callback([&] { run_plan(plan_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cec::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
