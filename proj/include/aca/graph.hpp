#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aca/common.hpp"

namespace aca {

using Edge = std::pair<NodeId, NodeId>;

// Canonical (min, max) form of an undirected pair.
inline Edge make_edge(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline std::uint64_t edge_key(NodeId a, NodeId b) {
  auto [u, v] = make_edge(a, b);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Undirected simple graph on dense ids 0..N-1. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Builds from an arbitrary pair list; self-loops and duplicates are dropped.
  Graph(std::size_t n, std::span<const Edge> pairs) : adj_(n) {
    for (auto [a, b] : pairs) {
      if (a == b) continue;
      if (a >= n || b >= n) throw Error("edge endpoint out of range");
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    for (auto& nb : adj_) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v : adj_[u])
        if (u < v) edges_.emplace_back(u, v);
  }

  Graph(std::size_t n, std::initializer_list<Edge> pairs)
      : Graph(n, std::span<const Edge>(pairs.begin(), pairs.size())) {}

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t degree(NodeId v) const { return adj_[v].size(); }
  std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(NodeId a, NodeId b) const {
    if (a >= adj_.size() || b >= adj_.size()) return false;
    const auto& nb = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
    NodeId other = adj_[a].size() <= adj_[b].size() ? b : a;
    return std::binary_search(nb.begin(), nb.end(), other);
  }

  // Optional external labels (original tokens) for reporting.
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) { labels_ = std::move(labels); }
  std::string label(NodeId v) const {
    return v < labels_.size() ? labels_[v] : std::to_string(v);
  }

 private:
  std::vector<std::vector<NodeId>> adj_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

// A base graph plus a set of added edges disjoint from the base.
class EdgeOverlay {
 public:
  explicit EdgeOverlay(const Graph& base) : base_(&base), extra_(base.node_count()) {}

  const Graph& base() const { return *base_; }
  const std::vector<Edge>& added() const { return added_; }

  // Returns false (and records nothing) for self-loops, base edges and
  // pairs already added.
  bool add(NodeId a, NodeId b) {
    if (a == b || base_->has_edge(a, b)) return false;
    auto& ea = extra_[a];
    if (std::find(ea.begin(), ea.end(), b) != ea.end()) return false;
    ea.push_back(b);
    extra_[b].push_back(a);
    added_.push_back(make_edge(a, b));
    return true;
  }

  std::size_t node_count() const { return base_->node_count(); }
  std::size_t edge_count() const { return base_->edge_count() + added_.size(); }
  std::size_t degree(NodeId v) const { return base_->degree(v) + extra_[v].size(); }

  bool has_edge(NodeId a, NodeId b) const {
    if (base_->has_edge(a, b)) return true;
    const auto& ea = extra_[a];
    return std::find(ea.begin(), ea.end(), b) != ea.end();
  }

  std::vector<NodeId> neighbors(NodeId v) const {
    std::vector<NodeId> out(base_->neighbors(v).begin(), base_->neighbors(v).end());
    out.insert(out.end(), extra_[v].begin(), extra_[v].end());
    std::sort(out.begin(), out.end());
    return out;
  }

  // Snapshot as a standalone graph (E union E').
  Graph materialize() const {
    std::vector<Edge> all(base_->edges());
    all.insert(all.end(), added_.begin(), added_.end());
    Graph g(base_->node_count(), all);
    g.set_labels(base_->labels());
    return g;
  }

 private:
  const Graph* base_;
  std::vector<std::vector<NodeId>> extra_;
  std::vector<Edge> added_;
};

inline Graph with_added_edges(const Graph& g, std::span<const Edge> extra) {
  EdgeOverlay ov(g);
  for (auto [a, b] : extra) ov.add(a, b);
  return ov.materialize();
}

struct EdgeListLoad {
  Graph graph;
  std::size_t dropped_self_loops = 0;
  std::size_t dropped_duplicates = 0;
  std::size_t lines_read = 0;
  // Pairs read before symmetrisation and de-duplication; for a directed
  // listing this is the original arc count.
  std::size_t input_pairs = 0;
};

// Reads whitespace-separated node pairs; '#' lines are comments. Tokens may
// be integers or arbitrary strings; ids are assigned in first-appearance
// order. Extra columns (weights) are ignored.
inline EdgeListLoad load_edge_list(std::istream& in) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> names;
  std::vector<Edge> pairs;
  auto id_of = [&](const std::string& tok) {
    auto [it, inserted] = ids.try_emplace(tok, static_cast<NodeId>(names.size()));
    if (inserted) names.push_back(tok);
    return it->second;
  };
  EdgeListLoad out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a >> b)) throw ParseError(line_no, "expected two node tokens");
    NodeId ia = id_of(a);
    NodeId ib = id_of(b);
    if (ia == ib) {
      ++out.dropped_self_loops;
      continue;
    }
    pairs.push_back(make_edge(ia, ib));
  }
  out.lines_read = line_no;
  out.input_pairs = pairs.size() + out.dropped_self_loops;
  if (names.empty()) throw DataError("edge list is empty");
  std::size_t before = pairs.size();
  out.graph = Graph(names.size(), pairs);
  out.dropped_duplicates = before - out.graph.edge_count();
  out.graph.set_labels(std::move(names));
  return out;
}

// Component id per node, components numbered by smallest contained node.
inline std::vector<std::uint32_t> connected_components(const Graph& g, std::size_t* count = nullptr) {
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp(g.node_count(), unset);
  std::uint32_t next = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(u))
        if (comp[w] == unset) {
          comp[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

inline bool is_connected(const Graph& g) {
  std::size_t k = 0;
  connected_components(g, &k);
  return k <= 1;
}

struct Subgraph {
  Graph graph;
  std::vector<NodeId> original;  // new id -> old id
};

// Induced subgraph on `keep` (sorted ascending keeps the relative order).
inline Subgraph induced_subgraph(const Graph& g, std::vector<NodeId> keep) {
  std::sort(keep.begin(), keep.end());
  std::vector<NodeId> remap(g.node_count(), std::numeric_limits<NodeId>::max());
  for (NodeId i = 0; i < keep.size(); ++i) remap[keep[i]] = i;
  std::vector<Edge> pairs;
  for (auto [a, b] : g.edges())
    if (remap[a] != std::numeric_limits<NodeId>::max() && remap[b] != std::numeric_limits<NodeId>::max())
      pairs.emplace_back(remap[a], remap[b]);
  Subgraph out{Graph(keep.size(), pairs), keep};
  if (!g.labels().empty()) {
    std::vector<std::string> names;
    names.reserve(keep.size());
    for (NodeId v : keep) names.push_back(g.labels()[v]);
    out.graph.set_labels(std::move(names));
  }
  return out;
}

// Largest component; ties go to the component holding the smallest node id.
inline Subgraph largest_connected_component(const Graph& g) {
  if (g.node_count() == 0) throw DataError("largest_connected_component: empty graph");
  std::size_t k = 0;
  auto comp = connected_components(g, &k);
  std::vector<std::size_t> size(k, 0);
  for (auto c : comp) ++size[c];
  // Components are numbered by first node, so the first maximum wins ties.
  std::size_t best = std::max_element(size.begin(), size.end()) - size.begin();
  std::vector<NodeId> keep;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (comp[v] == best) keep.push_back(v);
  return induced_subgraph(g, std::move(keep));
}

// Jaccard similarity of the closed neighbourhoods N[i] and N[j].
inline double jaccard_neighborhood(const Graph& g, NodeId i, NodeId j);

// Same quantity as an exact (intersection, union) pair.
inline std::pair<std::size_t, std::size_t> closed_neighborhood_overlap(const Graph& g, NodeId i, NodeId j) {
  auto closed = [&](NodeId v) {
    std::vector<NodeId> s(g.neighbors(v).begin(), g.neighbors(v).end());
    s.insert(std::lower_bound(s.begin(), s.end(), v), v);
    return s;
  };
  auto a = closed(i);
  auto b = closed(j);
  std::size_t inter = 0;
  for (std::size_t x = 0, y = 0; x < a.size() && y < b.size();) {
    if (a[x] < b[y]) {
      ++x;
    } else if (b[y] < a[x]) {
      ++y;
    } else {
      ++inter;
      ++x;
      ++y;
    }
  }
  return {inter, a.size() + b.size() - inter};
}

inline double jaccard_neighborhood(const Graph& g, NodeId i, NodeId j) {
  auto [inter, uni] = closed_neighborhood_overlap(g, i, j);
  return static_cast<double>(inter) / static_cast<double>(uni);
}

// BFS hop distances; unreachable nodes get -1.
inline std::vector<int> bfs_distances(const Graph& g, NodeId source) {
  std::vector<int> dist(g.node_count(), -1);
  std::vector<NodeId> frontier{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    NodeId u = frontier[head];
    for (NodeId w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        frontier.push_back(w);
      }
  }
  return dist;
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

}  // namespace aca
