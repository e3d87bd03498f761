#pragma once

// Minimal GML reader for the node/edge subset used by the classic network
// datasets: `node [ id .. label ".." value .. ]` and `edge [ source .. target .. ]`.

#include <algorithm>
#include <cctype>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aca/graph.hpp"

namespace aca {

struct GmlData {
  Graph graph;
  std::vector<std::optional<std::string>> values;  // per dense node, from `value`
  bool directed = false;
  std::size_t input_edges = 0;
};

namespace detail {

class GmlLexer {
 public:
  explicit GmlLexer(std::string text) : text_(std::move(text)) {}

  // Returns the next token; quoted strings come back without quotes.
  std::optional<std::string> next(bool* quoted = nullptr) {
    skip();
    if (pos_ >= text_.size()) return std::nullopt;
    if (quoted) *quoted = false;
    char c = text_[pos_];
    if (c == '[' || c == ']') {
      ++pos_;
      return std::string(1, c);
    }
    if (c == '"') {
      auto end = text_.find('"', pos_ + 1);
      if (end == std::string::npos) throw ParseError(line(), "unterminated string");
      std::string s = text_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      if (quoted) *quoted = true;
      return s;
    }
    auto start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '[' && text_[pos_] != ']')
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::size_t line() const {
    return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + pos_, '\n'));
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline GmlData load_gml(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  detail::GmlLexer lex(std::move(text));

  struct RawNode {
    std::string id, label;
    std::optional<std::string> value;
  };
  std::vector<RawNode> nodes;
  std::vector<std::pair<std::string, std::string>> raw_edges;
  bool directed = false;

  // Reads a `[ key value ... ]` block into a flat map; nested blocks skipped.
  auto read_block = [&]() {
    std::map<std::string, std::string> kv;
    auto open = lex.next();
    if (!open || *open != "[") throw ParseError(lex.line(), "expected '['");
    for (;;) {
      auto key = lex.next();
      if (!key) throw ParseError(lex.line(), "unexpected end of input");
      if (*key == "]") break;
      auto val = lex.next();
      if (!val) throw ParseError(lex.line(), "missing value for " + *key);
      if (*val == "[") {
        int depth = 1;
        while (depth > 0) {
          auto t = lex.next();
          if (!t) throw ParseError(lex.line(), "unterminated block");
          if (*t == "[") ++depth;
          if (*t == "]") --depth;
        }
        continue;
      }
      kv[*key] = *val;
    }
    return kv;
  };

  auto tok = lex.next();
  while (tok && *tok != "graph") tok = lex.next();
  if (!tok) throw ParseError(lex.line(), "no graph block");
  auto open = lex.next();
  if (!open || *open != "[") throw ParseError(lex.line(), "expected '[' after graph");
  for (;;) {
    auto key = lex.next();
    if (!key) throw ParseError(lex.line(), "unterminated graph block");
    if (*key == "]") break;
    if (*key == "node") {
      auto kv = read_block();
      if (!kv.count("id")) throw ParseError(lex.line(), "node without id");
      RawNode n{kv["id"], kv.count("label") ? kv["label"] : kv["id"], std::nullopt};
      if (kv.count("value")) n.value = kv["value"];
      nodes.push_back(std::move(n));
    } else if (*key == "edge") {
      auto kv = read_block();
      if (!kv.count("source") || !kv.count("target"))
        throw ParseError(lex.line(), "edge without source/target");
      raw_edges.emplace_back(kv["source"], kv["target"]);
    } else {
      auto val = lex.next();
      if (!val) throw ParseError(lex.line(), "missing value for " + *key);
      if (*key == "directed") directed = (*val == "1");
      if (*val == "[") {
        int depth = 1;
        while (depth > 0) {
          auto t = lex.next();
          if (!t) throw ParseError(lex.line(), "unterminated block");
          if (*t == "[") ++depth;
          if (*t == "]") --depth;
        }
      }
    }
  }
  if (nodes.empty()) throw DataError("GML graph has no nodes");

  std::map<std::string, NodeId> index;
  std::vector<std::string> names;
  GmlData out;
  for (const auto& n : nodes) {
    if (index.count(n.id)) throw DataError("duplicate GML node id " + n.id);
    index[n.id] = static_cast<NodeId>(names.size());
    names.push_back(n.label);
    out.values.push_back(n.value);
  }
  std::vector<Edge> pairs;
  for (const auto& [s, t] : raw_edges) {
    auto a = index.find(s);
    auto b = index.find(t);
    if (a == index.end() || b == index.end()) throw DataError("GML edge references unknown node");
    pairs.emplace_back(a->second, b->second);
  }
  out.graph = Graph(names.size(), pairs);
  out.graph.set_labels(std::move(names));
  out.directed = directed;
  out.input_edges = raw_edges.size();
  return out;
}

}  // namespace aca
