#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cec/errors.hpp"

namespace cec {

// One task example ready for text-to-text serialization. Tags identify
// features and must be non-empty, unique, and free of whitespace and angle
// brackets; the task name is a lowercase identifier.
struct TaskExample {
  std::string task;
  std::vector<std::pair<std::string, std::string>> features;  // (tag, value)
  std::string target;

  bool operator==(const TaskExample&) const = default;
};

struct TextPair {
  std::string input;
  std::string target;

  bool operator==(const TextPair&) const = default;
};

enum class KnowledgeGraph { atomic, conceptnet };

struct KgTriple {
  KnowledgeGraph graph = KnowledgeGraph::atomic;
  std::string subject;
  std::string relation;
  std::string object;
};

// forward: predict the object from subject + relation; backward: predict the
// subject from object + relation; bidirectional: both, forward first.
enum class KgDirection { forward, backward, bidirectional };

const char* to_string(KnowledgeGraph graph);
KnowledgeGraph knowledge_graph_from_string(std::string_view text);
const char* to_string(KgDirection direction);
KgDirection kg_direction_from_string(std::string_view text);

// Escaping rule for feature values: '\' -> "\\", newline -> "\n", '<' -> "\<",
// '>' -> "\>". Keeps serialized inputs one feature per line.
std::string escape_value(std::string_view value);
std::string unescape_value(std::string_view value);  // ParseError at offset

// input = "[task]:" + newline + one "<tag>escaped value</tag>" per feature,
// joined by single newlines, no trailing newline; target passes through
// unchanged.
TextPair serialize_example(const TaskExample& example);

// Exact inverse of serialize_example. Throws ParseError with a byte offset on
// malformed prefix, unbalanced tags, or tag mismatch.
TaskExample parse_example(std::string_view input, std::string_view target);

std::vector<TextPair> serialize_kg_triple(const KgTriple& triple,
                                          KgDirection direction);

// TSV field escaping: the value rule extended with tab -> "\t" so records
// stay line-oriented.
std::string tsv_escape_field(std::string_view field);
std::string tsv_unescape_field(std::string_view field);

// Tab-separated stream of pairs, one record per line.
std::string pairs_to_tsv(std::span<const TextPair> pairs);
std::vector<TextPair> pairs_from_tsv(std::string_view text);

// JSON-lines stream: {"input": ..., "target": ...} per line.
std::string pairs_to_json_lines(std::span<const TextPair> pairs);
std::vector<TextPair> pairs_from_json_lines(std::string_view text);

}  // namespace cec
