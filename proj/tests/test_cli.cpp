#include <doctest.h>

#include <string>

#include "cec/cost_equivalent.hpp"
#include "support/proc.hpp"
#include "support/xml_check.hpp"

namespace {

const std::string kTool = CECTOOL_PATH;

const char* kFixtureCsv =
    "task,method,source,model_size,train_size,metric,value\n"
    "synth,single-task,,large,100,accuracy,0.6\n"
    "synth,single-task,,large,200,accuracy,0.7\n"
    "synth,single-task,,large,400,accuracy,0.8\n"
    "synth,multitask,rainbow,large,50,accuracy,0.6\n"
    "synth,multitask,rainbow,large,100,accuracy,0.7\n"
    "synth,multitask,rainbow,large,200,accuracy,0.8\n";

struct Fixture {
  std::string dir;
  std::string csv_path;

  Fixture() {
    dir = proc::make_temp_dir();
    csv_path = dir + "/results.csv";
    proc::write_file(csv_path, kFixtureCsv);
  }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("identical control and treatment give the identity table") {
  Fixture fx;
  const auto result = proc::run(kTool + " cec " + fx.csv_path +
                                " --control method=single-task"
                                " --treatment method=single-task");
  REQUIRE(result.exit_code == 0);
  const auto cec_curve = cec::cec_from_csv(result.out);
  for (std::size_t i = 0; i < cec_curve.size(); ++i) {
    CHECK(cec_curve.equivalent_costs[i] ==
          doctest::Approx(cec_curve.grid[i]).epsilon(1e-12));
  }
}

TEST_CASE("fixture table contains the derived composition rows") {
  Fixture fx;
  const auto result = proc::run(kTool + " cec " + fx.csv_path +
                                " --control method=single-task"
                                " --treatment method=multitask");
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("200,100,0.7,in-range") != std::string::npos);
  CHECK(result.out.find("100,50,0.6,in-range") != std::string::npos);
  CHECK(result.out.find("400,200,0.8,in-range") != std::string::npos);
}

TEST_CASE("missing required column exits 2 and names the column") {
  Fixture fx;
  proc::write_file(fx.csv_path,
                   "task,method,source,train_size,metric,value\n"
                   "a,b,,1,acc,0.5\n");
  const auto result = proc::run(kTool + " cec " + fx.csv_path +
                                " --control method=b --treatment method=b");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("model_size") != std::string::npos);
}

TEST_CASE("unknown key exits nonzero and lists the available keys") {
  Fixture fx;
  const auto result = proc::run(kTool + " cec " + fx.csv_path +
                                " --control method=nope"
                                " --treatment method=multitask");
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("synth/single-task//large/accuracy") !=
        std::string::npos);
  CHECK(result.err.find("synth/multitask/rainbow/large/accuracy") !=
        std::string::npos);
}

TEST_CASE("unreadable input fails") {
  const auto result = proc::run(kTool + " cec /nonexistent/results.csv"
                                " --control method=a --treatment method=a");
  CHECK(result.exit_code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(proc::run(kTool).exit_code == 2);
  CHECK(proc::run(kTool + " cec").exit_code == 2);
  CHECK(proc::run(kTool + " nope").exit_code == 2);
  Fixture fx;
  CHECK(proc::run(kTool + " cec " + fx.csv_path +
                  " --control flavor=x --treatment method=multitask")
            .exit_code == 2);
  CHECK(proc::run(kTool + " --help").exit_code == 0);
}

TEST_CASE("plot renders a well-formed SVG") {
  Fixture fx;
  const std::string table = fx.dir + "/identity.csv";
  const std::string svg_path = fx.dir + "/out.svg";
  REQUIRE(proc::run(kTool + " cec " + fx.csv_path +
                    " --control method=single-task"
                    " --treatment method=single-task --out " + table)
              .exit_code == 0);
  REQUIRE(proc::run(kTool + " plot " + table + " --label identity --out " +
                    svg_path)
              .exit_code == 0);
  const std::string svg = proc::read_file(svg_path);
  std::string error;
  CHECK_MESSAGE(xmlcheck::well_formed(svg, &error), error);
  CHECK(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(svg.find("data-label=\"identity\"") != std::string::npos);
}

TEST_CASE("kg bidirectional emits two lines per triple") {
  Fixture fx;
  const std::string triples = fx.dir + "/triples.tsv";
  proc::write_file(triples, "conceptnet\twater\tAtLocation\triver\n");
  const auto result =
      proc::run(kTool + " kg " + triples + " --direction bidirectional");
  REQUIRE(result.exit_code == 0);
  CHECK(std::count(result.out.begin(), result.out.end(), '\n') == 2);
  CHECK(result.out.find("\triver\n") != std::string::npos);
  CHECK(result.out.find("\twater\n") != std::string::npos);
}

TEST_CASE("multiple treatments write one labeled table each") {
  Fixture fx;
  proc::write_file(fx.csv_path, std::string(kFixtureCsv) +
                                    "synth,sequential,rainbow,large,25,accuracy,0.6\n"
                                    "synth,sequential,rainbow,large,50,accuracy,0.7\n"
                                    "synth,sequential,rainbow,large,100,accuracy,0.8\n");
  const std::string out = fx.dir + "/cec.csv";
  const auto result = proc::run(kTool + " cec " + fx.csv_path +
                                " --control method=single-task"
                                " --treatment method=multitask"
                                " --treatment method=sequential --out " + out);
  REQUIRE(result.exit_code == 0);
  const auto multitask = cec::cec_from_csv(proc::read_file(
      fx.dir + "/cec-synth_multitask_rainbow_large_accuracy.csv"));
  const auto sequential = cec::cec_from_csv(proc::read_file(
      fx.dir + "/cec-synth_sequential_rainbow_large_accuracy.csv"));
  CHECK(multitask.equivalent_costs[1] == doctest::Approx(100));
  CHECK(sequential.equivalent_costs[1] == doctest::Approx(50));
}

TEST_CASE("dense grids and json tables flow into plot") {
  Fixture fx;
  const std::string table = fx.dir + "/dense.json";
  REQUIRE(proc::run(kTool + " cec " + fx.csv_path +
                    " --control method=single-task"
                    " --treatment method=multitask"
                    " --grid dense:50 --format json --out " + table)
              .exit_code == 0);
  const auto curve = cec::cec_from_json(proc::read_file(table));
  CHECK(curve.size() == 50);

  const auto plotted = proc::run(kTool + " plot " + table);
  REQUIRE(plotted.exit_code == 0);
  std::string error;
  CHECK_MESSAGE(xmlcheck::well_formed(plotted.out, &error), error);
}

TEST_CASE("kg emits JSON-lines when asked") {
  Fixture fx;
  const std::string triples = fx.dir + "/triples.tsv";
  proc::write_file(triples, "atomic\ts\tr\to\n");
  const auto result =
      proc::run(kTool + " kg " + triples + " --direction forward --to jsonl");
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("\"target\":\"o\"") != std::string::npos);
}

TEST_CASE("mix with n=0 prints nothing and exits 0") {
  const auto result =
      proc::run(kTool + " mix --policy equal --tasks 3 --n 0");
  CHECK(result.exit_code == 0);
  CHECK(result.out.empty());
}

TEST_CASE("mix streams are deterministic given a seed") {
  const std::string cmd = kTool + " mix --tasks a,b,c --n 64 --seed 9";
  const auto first = proc::run(cmd);
  const auto second = proc::run(cmd);
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(std::count(first.out.begin(), first.out.end(), '\n') == 64);
}

TEST_CASE("mix emits rates and subsample grids") {
  const auto rates = proc::run(
      kTool + " mix --tasks a:100,b:300 --policy size-weighted --rates");
  REQUIRE(rates.exit_code == 0);
  CHECK(rates.out.find("0.25") != std::string::npos);
  CHECK(rates.out.find("0.75") != std::string::npos);

  const auto sizes =
      proc::run(kTool + " mix --subsample 10000 --start 16 --ratio 4");
  REQUIRE(sizes.exit_code == 0);
  CHECK(sizes.out == "16\n64\n256\n1024\n4096\n10000\n");
}

TEST_CASE("plan emits the leaderboard grid assignments") {
  const auto result = proc::run(kTool +
                                " plan sequential --sources anli,cosmosqa"
                                " --target socialiqa --preset leaderboard");
  REQUIRE(result.exit_code == 0);
  CHECK(std::count(result.out.begin(), result.out.end(), '{') >= 8);
  CHECK(result.out.find("\"grid_assignments\"") != std::string::npos);
  CHECK(result.out.find("\"4e-3\"") != std::string::npos);
  CHECK(result.out.find("\"sequential\"") != std::string::npos);

  const auto bad = proc::run(kTool +
                             " plan sequential --sources socialiqa"
                             " --target socialiqa --preset leaderboard");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("preprocess round-trips through --invert") {
  Fixture fx;
  const std::string examples = fx.dir + "/examples.jsonl";
  const std::string jsonl =
      "{\"features\":[[\"question\",\"Q?\"],[\"answerA\",\"x<y\\nz\"]],"
      "\"target\":\"x\",\"task\":\"socialiqa\"}\n";
  proc::write_file(examples, jsonl);

  const std::string pairs = fx.dir + "/pairs.tsv";
  REQUIRE(proc::run(kTool + " preprocess " + examples + " --out " + pairs)
              .exit_code == 0);
  const auto inverted =
      proc::run(kTool + " preprocess " + pairs + " --invert");
  REQUIRE(inverted.exit_code == 0);
  CHECK(inverted.out == jsonl);
}

}  // TEST_SUITE
