#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "cec/textify.hpp"
#include "support/generators.hpp"

using cec::KgDirection;
using cec::KgTriple;
using cec::KnowledgeGraph;
using cec::TaskExample;
using cec::TextPair;

namespace {

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(GOLDEN_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const TaskExample kSocialIqa{
    "socialiqa", {{"question", "Q?"}, {"answerA", "x"}}, "x"};

const KgTriple kAtomic{KnowledgeGraph::atomic, "PersonX makes PersonY's coffee",
                       "oReact", "PersonY will be grateful"};
const KgTriple kConceptNet{KnowledgeGraph::conceptnet, "water", "AtLocation",
                           "river"};

}  // namespace

TEST_SUITE("textify") {

TEST_CASE("socialiqa example serializes to the exact format") {
  const TextPair pair = cec::serialize_example(kSocialIqa);
  CHECK(pair.input ==
        "[socialiqa]:\n<question>Q?</question>\n<answerA>x</answerA>");
  CHECK(pair.target == "x");

  const std::vector<TextPair> pairs = {pair};
  CHECK(cec::pairs_to_tsv(pairs) == read_golden("socialiqa_example.tsv"));
}

TEST_CASE("serialization is deterministic") {
  CHECK(cec::serialize_example(kSocialIqa).input ==
        cec::serialize_example(kSocialIqa).input);
}

TEST_CASE("embedded closing tags escape and restore") {
  TaskExample e = kSocialIqa;
  e.features[0].second = "before</question>after";
  const TextPair pair = cec::serialize_example(e);
  CHECK(pair.input.find("\\</question\\>") != std::string::npos);
  CHECK(cec::parse_example(pair.input, pair.target) == e);
}

TEST_CASE("newlines and backslashes escape and restore") {
  TaskExample e = kSocialIqa;
  e.features[0].second = "line1\nline2\\n not a newline";
  const TextPair pair = cec::serialize_example(e);
  // one line per feature plus the prefix, regardless of value content
  const auto newlines = std::count(pair.input.begin(), pair.input.end(), '\n');
  CHECK(newlines == static_cast<long>(e.features.size()));
  CHECK(cec::parse_example(pair.input, pair.target) == e);
}

TEST_CASE("escaping rule is exactly the declared four characters") {
  CHECK(cec::escape_value("a\\b") == "a\\\\b");
  CHECK(cec::escape_value("a\nb") == "a\\nb");
  CHECK(cec::escape_value("<x>") == "\\<x\\>");
  CHECK(cec::escape_value("plain. text! 123") == "plain. text! 123");
  CHECK(cec::unescape_value("a\\\\b") == "a\\b");
  CHECK(cec::unescape_value("a\\nb") == "a\nb");
  CHECK(cec::unescape_value("\\<x\\>") == "<x>");
  CHECK_THROWS_AS(cec::unescape_value("bad\\q"), cec::ParseError);
  CHECK_THROWS_AS(cec::unescape_value("dangling\\"), cec::ParseError);
}

TEST_CASE("invalid examples are rejected") {
  TaskExample dup = kSocialIqa;
  dup.features.push_back({"question", "again"});
  CHECK_THROWS_AS(cec::serialize_example(dup), cec::ValidationError);

  TaskExample bad_tag = kSocialIqa;
  bad_tag.features[0].first = "ques tion";
  CHECK_THROWS_AS(cec::serialize_example(bad_tag), cec::ValidationError);
  bad_tag.features[0].first = "que<stion";
  CHECK_THROWS_AS(cec::serialize_example(bad_tag), cec::ValidationError);

  TaskExample no_features = kSocialIqa;
  no_features.features.clear();
  CHECK_THROWS_AS(cec::serialize_example(no_features), cec::ValidationError);

  TaskExample bad_task = kSocialIqa;
  bad_task.task = "SocialIQA";
  CHECK_THROWS_AS(cec::serialize_example(bad_task), cec::ValidationError);
}

TEST_CASE("parse errors carry byte offsets") {
  auto offset_of = [](const char* input) -> std::size_t {
    try {
      cec::parse_example(input, "t");
      FAIL("expected ParseError");
      return 0;
    } catch (const cec::ParseError& e) {
      REQUIRE(e.byte_offset().has_value());
      return *e.byte_offset();
    }
  };

  CHECK(offset_of("socialiqa:\n<q>v</q>") == 0);        // malformed prefix
  CHECK(offset_of("[socialiqa]x\n<q>v</q>") == 0);      // missing ]:
  CHECK(offset_of("[socialiqa]:<q>v</q>") == 12);       // missing newline
  CHECK(offset_of("[socialiqa]:\nq>v</q>") == 13);      // missing '<'
  CHECK(offset_of("[socialiqa]:\n<q v") == 13);         // unterminated tag
  CHECK(offset_of("[socialiqa]:\n<q v</q>") == 14);     // whitespace in tag
  CHECK(offset_of("[socialiqa]:\n<q>v</r>") == 13);     // tag mismatch
  CHECK(offset_of("[socialiqa]:\n<q>v</q>\n") == 22);   // trailing newline
  CHECK(offset_of("[socialiqa]:\n<q>a</q>\n<q>b</q>") == 22);  // duplicate
}

TEST_CASE("atomic forward pair matches the reference triple") {
  const auto pairs = cec::serialize_kg_triple(kAtomic, KgDirection::forward);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].input ==
        "[atomic]:\n<subject>PersonX makes PersonY's coffee</subject>\n"
        "<relation>oReact</relation>");
  CHECK(pairs[0].target == "PersonY will be grateful");
  CHECK(cec::pairs_to_tsv(pairs) == read_golden("atomic_forward.tsv"));
}

TEST_CASE("conceptnet backward pair predicts the subject") {
  const auto pairs =
      cec::serialize_kg_triple(kConceptNet, KgDirection::backward);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].input ==
        "[conceptnet]:\n<object>river</object>\n<relation>AtLocation</relation>");
  CHECK(pairs[0].target == "water");
  CHECK(cec::pairs_to_tsv(pairs) == read_golden("conceptnet_backward.tsv"));
}

TEST_CASE("bidirectional is forward then backward") {
  gen::Rng rng(12);
  for (int iter = 0; iter < 50; ++iter) {
    KgTriple t;
    t.graph = iter % 2 == 0 ? KnowledgeGraph::atomic : KnowledgeGraph::conceptnet;
    t.subject = gen::adversarial_text(rng) + "s";
    t.relation = gen::adversarial_text(rng) + "r";
    t.object = gen::adversarial_text(rng) + "o";
    const auto both = cec::serialize_kg_triple(t, KgDirection::bidirectional);
    REQUIRE(both.size() == 2);
    CHECK(both[0] == cec::serialize_kg_triple(t, KgDirection::forward)[0]);
    CHECK(both[1] == cec::serialize_kg_triple(t, KgDirection::backward)[0]);
  }
}

TEST_CASE("empty triple fields are rejected") {
  KgTriple t = kAtomic;
  t.object.clear();
  CHECK_THROWS_AS(cec::serialize_kg_triple(t, KgDirection::forward),
                  cec::ValidationError);
}

TEST_CASE("property: parse inverts serialize on adversarial examples") {
  gen::Rng rng(100);
  for (int iter = 0; iter < 1000; ++iter) {
    const TaskExample e = gen::random_example(rng);
    const TextPair pair = cec::serialize_example(e);
    REQUIRE(cec::parse_example(pair.input, pair.target) == e);
    // line discipline: prefix line + one line per feature, no trailing newline
    REQUIRE(std::count(pair.input.begin(), pair.input.end(), '\n') ==
            static_cast<long>(e.features.size()));
    REQUIRE(pair.input.back() != '\n');
  }
}

TEST_CASE("property: TSV and JSON-lines streams round-trip") {
  gen::Rng rng(200);
  std::vector<TextPair> pairs;
  for (int i = 0; i < 200; ++i) {
    pairs.push_back(cec::serialize_example(gen::random_example(rng)));
  }
  // targets with tabs exercise the TSV extension of the escaping rule
  pairs.push_back({"[socialiqa]:\n<q>v</q>", "tab\there\nand newline"});

  CHECK(cec::pairs_from_tsv(cec::pairs_to_tsv(pairs)) == pairs);
  CHECK(cec::pairs_from_json_lines(cec::pairs_to_json_lines(pairs)) == pairs);
}

TEST_CASE("TSV parse errors name the row") {
  try {
    cec::pairs_from_tsv("good\tpair\nno tab here\n");
    FAIL("expected ParseError");
  } catch (const cec::ParseError& e) {
    CHECK(e.row() == 2);
  }
}

}  // TEST_SUITE
