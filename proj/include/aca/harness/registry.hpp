#pragma once

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "aca/game.hpp"
#include "aca/gml.hpp"
#include "aca/graph.hpp"

namespace aca {

#ifndef ACA_DEFAULT_DATA_DIR
#define ACA_DEFAULT_DATA_DIR "data"
#endif

inline constexpr std::array kRegisteredDatasets = {"football", "netsci", "email", "grid", "ASG", "cora", "citeseer"};

struct Dataset {
  std::string name;
  std::filesystem::path source;
  Graph graph;  // largest connected component
  std::optional<std::vector<std::int32_t>> labels;
  std::size_t raw_nodes = 0, raw_edges = 0;
};

inline std::filesystem::path data_root() {
  if (const char* env = std::getenv("ACA_DATA_DIR"); env && *env) return env;
  return ACA_DEFAULT_DATA_DIR;
}

// "node,label" rows; node tokens are matched against the graph's labels
// and label values are renumbered densely in first-appearance order.
inline std::vector<std::int32_t> read_labels_csv(std::istream& in, const Graph& g) {
  std::unordered_map<std::string, NodeId> id;
  for (NodeId v = 0; v < g.node_count(); ++v) id.emplace(g.label(v), v);
  std::unordered_map<std::string, std::int32_t> classes;
  std::vector<std::int32_t> out(g.node_count(), kNoLabel);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || (line_no == 1 && line.rfind("node", 0) == 0)) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(line_no, "expected node,label");
    const auto node = line.substr(0, comma), cls = line.substr(comma + 1);
    auto it = id.find(node);
    if (it == id.end()) continue;  // outside the loaded graph
    auto [c, fresh] = classes.try_emplace(cls, static_cast<std::int32_t>(classes.size()));
    out[it->second] = c->second;
  }
  return out;
}

namespace detail {

inline std::ifstream open_input(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw DataError("cannot open " + p.string());
  return f;
}

struct RawDataset {
  Graph graph;
  std::optional<std::vector<std::int32_t>> labels;
};

inline RawDataset read_gml_dataset(const std::filesystem::path& p) {
  auto f = open_input(p);
  auto gml = load_gml(f);
  RawDataset raw{std::move(gml.graph), std::nullopt};
  bool any = false;
  std::unordered_map<std::string, std::int32_t> classes;
  std::vector<std::int32_t> labels(raw.graph.node_count(), kNoLabel);
  for (NodeId v = 0; v < raw.graph.node_count(); ++v)
    if (gml.values[v]) {
      any = true;
      labels[v] = classes.try_emplace(*gml.values[v], static_cast<std::int32_t>(classes.size())).first->second;
    }
  if (any) raw.labels = std::move(labels);
  return raw;
}

inline RawDataset read_edge_dataset(const std::filesystem::path& edges, const std::filesystem::path& labels) {
  auto f = open_input(edges);
  RawDataset raw{load_edge_list(f).graph, std::nullopt};
  if (std::filesystem::exists(labels)) {
    auto lf = open_input(labels);
    raw.labels = read_labels_csv(lf, raw.graph);
  }
  return raw;
}

}  // namespace detail

inline Dataset load_dataset_file(const std::filesystem::path& p, const std::string& name) {
  Dataset ds;
  ds.name = name;
  ds.source = p;
  auto raw = p.extension() == ".gml" ? detail::read_gml_dataset(p)
                                     : detail::read_edge_dataset(p, p.parent_path() / "labels.csv");
  ds.raw_nodes = raw.graph.node_count();
  ds.raw_edges = raw.graph.edge_count();
  auto lcc = largest_connected_component(raw.graph);
  ds.graph = std::move(lcc.graph);
  if (raw.labels) {
    std::vector<std::int32_t> l;
    for (NodeId v : lcc.original) l.push_back((*raw.labels)[v]);
    ds.labels = std::move(l);
  }
  return ds;
}

// Resolves a dataset name or path. A registered name looks under the data
// root for <name>/<name>.gml first, then <name>/graph.edges (+ labels.csv).
// A directory is read the same way; a file is read by extension. The graph
// is reduced to its largest connected component.
inline Dataset load_dataset(const std::string& spec) {
  namespace fs = std::filesystem;
  fs::path dir;
  std::string name = spec;
  if (fs::exists(spec)) {
    const fs::path p(spec);
    if (!fs::is_directory(p)) return load_dataset_file(p, p.stem().string());
    dir = p;
    name = fs::absolute(p).lexically_normal().filename().string();
    if (name.empty()) name = fs::absolute(p).lexically_normal().parent_path().filename().string();
  } else {
    bool known = false;
    for (auto k : kRegisteredDatasets) known |= spec == k;
    if (!known) {
      std::string names;
      for (auto k : kRegisteredDatasets) names += std::string(names.empty() ? "" : ", ") + k;
      throw UsageError("unknown dataset '" + spec + "' (registered: " + names + ", or a path)");
    }
    dir = data_root() / spec;
  }
  for (const auto& candidate : {dir / (name + ".gml"), dir / "graph.edges"})
    if (fs::exists(candidate)) return load_dataset_file(candidate, name);
  throw DataError("dataset '" + spec + "' not found under " + dir.string() + " (expected " + name +
                  ".gml or graph.edges; see scripts/fetch_datasets.sh)");
}

}  // namespace aca
