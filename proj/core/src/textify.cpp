#include "cec/textify.hpp"

#include <cctype>
#include <set>

#include <json.hpp>

namespace cec {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

void validate_task_name(const std::string& task) {
  if (task.empty()) {
    throw ValidationError("empty task name");
  }
  for (char c : task) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-';
    if (!ok) {
      throw ValidationError("task name must be a lowercase identifier, got '" +
                            task + "'");
    }
  }
}

void validate_tag(const std::string& tag) {
  if (tag.empty()) {
    throw ValidationError("empty feature tag");
  }
  for (char c : tag) {
    if (is_space(c) || c == '<' || c == '>') {
      throw ValidationError("feature tag '" + tag +
                            "' contains whitespace or an angle bracket");
    }
  }
}

// Unescapes value text, reporting errors at base_offset + local position.
std::string unescape_at(std::string_view text, std::size_t base_offset) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (i + 1 >= text.size()) {
      throw ParseError::at_offset("dangling escape character",
                                  base_offset + i);
    }
    const char next = text[++i];
    switch (next) {
      case '\\':
        out.push_back('\\');
        break;
      case 'n':
        out.push_back('\n');
        break;
      case '<':
        out.push_back('<');
        break;
      case '>':
        out.push_back('>');
        break;
      default:
        throw ParseError::at_offset(
            std::string("invalid escape sequence '\\") + next + "'",
            base_offset + i - 1);
    }
  }
  return out;
}

void validate_triple(const KgTriple& triple) {
  if (triple.subject.empty() || triple.relation.empty() ||
      triple.object.empty()) {
    throw ValidationError("knowledge graph triple has an empty field");
  }
}

std::string kg_input(KnowledgeGraph graph, const char* first_tag,
                     const std::string& first_value,
                     const std::string& relation) {
  std::string input = "[";
  input += to_string(graph);
  input += "]:\n<";
  input += first_tag;
  input += '>';
  input += escape_value(first_value);
  input += "</";
  input += first_tag;
  input += ">\n<relation>";
  input += escape_value(relation);
  input += "</relation>";
  return input;
}

}  // namespace

const char* to_string(KnowledgeGraph graph) {
  return graph == KnowledgeGraph::atomic ? "atomic" : "conceptnet";
}

KnowledgeGraph knowledge_graph_from_string(std::string_view text) {
  if (text == "atomic") return KnowledgeGraph::atomic;
  if (text == "conceptnet") return KnowledgeGraph::conceptnet;
  throw ValidationError("unknown knowledge graph '" + std::string(text) + "'");
}

const char* to_string(KgDirection direction) {
  switch (direction) {
    case KgDirection::forward:
      return "forward";
    case KgDirection::backward:
      return "backward";
    case KgDirection::bidirectional:
      return "bidirectional";
  }
  return "forward";
}

KgDirection kg_direction_from_string(std::string_view text) {
  if (text == "forward") return KgDirection::forward;
  if (text == "backward") return KgDirection::backward;
  if (text == "bidirectional") return KgDirection::bidirectional;
  throw ValidationError("unknown direction '" + std::string(text) + "'");
}

std::string escape_value(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '<':
        out += "\\<";
        break;
      case '>':
        out += "\\>";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string unescape_value(std::string_view value) {
  return unescape_at(value, 0);
}

TextPair serialize_example(const TaskExample& example) {
  validate_task_name(example.task);
  if (example.features.empty()) {
    throw ValidationError("example needs at least one feature");
  }
  std::set<std::string_view> seen;
  for (const auto& [tag, _] : example.features) {
    validate_tag(tag);
    if (!seen.insert(tag).second) {
      throw ValidationError("duplicate feature tag '" + tag + "'");
    }
  }

  std::string input = "[" + example.task + "]:";
  for (const auto& [tag, value] : example.features) {
    input += "\n<";
    input += tag;
    input += '>';
    input += escape_value(value);
    input += "</";
    input += tag;
    input += '>';
  }
  return {std::move(input), example.target};
}

TaskExample parse_example(std::string_view input, std::string_view target) {
  TaskExample example;
  example.target = std::string(target);

  if (input.empty() || input[0] != '[') {
    throw ParseError::at_offset("expected '[' starting the task prefix", 0);
  }
  const std::size_t close = input.find("]:");
  if (close == std::string_view::npos) {
    throw ParseError::at_offset("task prefix is missing ']:'", 0);
  }
  example.task = std::string(input.substr(1, close - 1));
  try {
    validate_task_name(example.task);
  } catch (const ValidationError& e) {
    throw ParseError::at_offset(e.what(), 1);
  }

  std::size_t pos = close + 2;
  if (pos >= input.size() || input[pos] != '\n') {
    throw ParseError::at_offset("expected newline after task prefix", pos);
  }
  ++pos;

  std::set<std::string> seen;
  while (pos <= input.size()) {
    const std::size_t line_end = std::min(input.find('\n', pos), input.size());
    const std::string_view line = input.substr(pos, line_end - pos);

    if (line.empty() || line[0] != '<') {
      throw ParseError::at_offset("expected '<' opening a feature tag", pos);
    }
    const std::size_t tag_end = line.find('>');
    if (tag_end == std::string_view::npos) {
      throw ParseError::at_offset("unterminated opening tag", pos);
    }
    const std::string tag(line.substr(1, tag_end - 1));
    try {
      validate_tag(tag);
    } catch (const ValidationError& e) {
      throw ParseError::at_offset(e.what(), pos + 1);
    }
    if (!seen.insert(tag).second) {
      throw ParseError::at_offset("duplicate feature tag '" + tag + "'", pos);
    }

    const std::string closing = "</" + tag + ">";
    if (line.size() < tag_end + 1 + closing.size() ||
        line.substr(line.size() - closing.size()) != closing) {
      throw ParseError::at_offset(
          "feature line does not end with '" + closing + "'", pos);
    }
    const std::string_view escaped =
        line.substr(tag_end + 1, line.size() - closing.size() - tag_end - 1);
    example.features.emplace_back(tag,
                                  unescape_at(escaped, pos + tag_end + 1));

    if (line_end == input.size()) break;
    pos = line_end + 1;
    if (pos == input.size()) {
      throw ParseError::at_offset("trailing newline after last feature", pos);
    }
  }

  if (example.features.empty()) {
    throw ParseError::at_offset("example has no features", input.size());
  }
  return example;
}

std::vector<TextPair> serialize_kg_triple(const KgTriple& triple,
                                          KgDirection direction) {
  validate_triple(triple);
  std::vector<TextPair> pairs;
  if (direction == KgDirection::forward ||
      direction == KgDirection::bidirectional) {
    pairs.push_back(
        {kg_input(triple.graph, "subject", triple.subject, triple.relation),
         triple.object});
  }
  if (direction == KgDirection::backward ||
      direction == KgDirection::bidirectional) {
    pairs.push_back(
        {kg_input(triple.graph, "object", triple.object, triple.relation),
         triple.subject});
  }
  return pairs;
}

std::string tsv_escape_field(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '<':
        out += "\\<";
        break;
      case '>':
        out += "\\>";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string tsv_unescape_field(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const char c = field[i];
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (i + 1 >= field.size()) {
      throw ParseError::at_offset("dangling escape character", i);
    }
    const char next = field[++i];
    switch (next) {
      case '\\':
        out.push_back('\\');
        break;
      case 'n':
        out.push_back('\n');
        break;
      case 't':
        out.push_back('\t');
        break;
      case '<':
        out.push_back('<');
        break;
      case '>':
        out.push_back('>');
        break;
      default:
        throw ParseError::at_offset(
            std::string("invalid escape sequence '\\") + next + "'", i - 1);
    }
  }
  return out;
}

std::string pairs_to_tsv(std::span<const TextPair> pairs) {
  std::string out;
  for (const TextPair& p : pairs) {
    out += tsv_escape_field(p.input);
    out += '\t';
    out += tsv_escape_field(p.target);
    out += '\n';
  }
  return out;
}

std::vector<TextPair> pairs_from_tsv(std::string_view text) {
  std::vector<TextPair> pairs;
  std::size_t pos = 0;
  std::size_t row = 1;
  while (pos < text.size()) {
    std::size_t line_end = text.find('\n', pos);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::string_view line = text.substr(pos, line_end - pos);
    if (!line.empty()) {
      const std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos) {
        throw ParseError::at_row("expected a tab separator", row);
      }
      if (line.find('\t', tab + 1) != std::string_view::npos) {
        throw ParseError::at_row("expected exactly one tab separator", row);
      }
      try {
        pairs.push_back({tsv_unescape_field(line.substr(0, tab)),
                         tsv_unescape_field(line.substr(tab + 1))});
      } catch (const ParseError& e) {
        throw ParseError::at_row(e.what(), row);
      }
    }
    pos = line_end + 1;
    ++row;
  }
  return pairs;
}

std::string pairs_to_json_lines(std::span<const TextPair> pairs) {
  std::string out;
  for (const TextPair& p : pairs) {
    nlohmann::json j = {{"input", p.input}, {"target", p.target}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<TextPair> pairs_from_json_lines(std::string_view text) {
  std::vector<TextPair> pairs;
  std::size_t pos = 0;
  std::size_t row = 1;
  while (pos < text.size()) {
    std::size_t line_end = text.find('\n', pos);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::string_view line = text.substr(pos, line_end - pos);
    if (!line.empty()) {
      try {
        const nlohmann::json j = nlohmann::json::parse(line);
        pairs.push_back({j.at("input").get<std::string>(),
                         j.at("target").get<std::string>()});
      } catch (const nlohmann::json::exception& e) {
        throw ParseError::at_row(std::string("invalid JSON line: ") + e.what(),
                                 row);
      }
    }
    pos = line_end + 1;
    ++row;
  }
  return pairs;
}

}  // namespace cec
