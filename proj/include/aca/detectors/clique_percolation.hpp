#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "aca/graph.hpp"
#include "aca/triage.hpp"

namespace aca {

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

inline std::vector<NodeId> sorted_intersection(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

// All maximal cliques (Bron-Kerbosch with pivoting over a degeneracy
// ordering). Each clique is returned sorted.
inline std::vector<std::vector<NodeId>> maximal_cliques(const Graph& g) {
  const auto n = g.node_count();
  // Degeneracy order by repeated removal of a minimum-degree node.
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (NodeId v = 0; v < n; ++v) max_deg = std::max(max_deg, deg[v] = g.degree(v));
  std::vector<std::vector<NodeId>> buckets(max_deg + 1);
  for (NodeId v = 0; v < n; ++v) buckets[deg[v]].push_back(v);
  std::vector<char> removed(n, 0);
  std::vector<std::size_t> position(n);
  std::vector<NodeId> order;
  order.reserve(n);
  for (std::size_t d = 0; order.size() < n;) {
    if (d > max_deg) break;
    if (buckets[d].empty()) {
      ++d;
      continue;
    }
    NodeId v = buckets[d].back();
    buckets[d].pop_back();
    if (removed[v] || deg[v] != d) continue;
    removed[v] = 1;
    position[v] = order.size();
    order.push_back(v);
    for (NodeId u : g.neighbors(v))
      if (!removed[u]) {
        --deg[u];
        buckets[deg[u]].push_back(u);
        d = std::min(d, deg[u]);
      }
  }

  std::vector<std::vector<NodeId>> cliques;
  std::vector<NodeId> r;

  // Recursive Bron-Kerbosch with the Tomita pivot; P and X are sorted.
  auto expand = [&](auto&& self, std::vector<NodeId>& p, std::vector<NodeId>& x) -> void {
    if (p.empty()) {
      if (x.empty()) {
        auto c = r;
        std::sort(c.begin(), c.end());
        cliques.push_back(std::move(c));
      }
      return;
    }
    NodeId pivot = p.front();
    std::size_t best = 0;
    for (const auto* set : {&p, &x})
      for (NodeId u : *set) {
        auto nb = g.neighbors(u);
        std::size_t cnt = detail::sorted_intersection(p, nb).size();
        if (cnt >= best) {
          if (cnt > best || u < pivot) pivot = u;
          best = cnt;
        }
      }
    std::vector<NodeId> candidates;
    auto pn = g.neighbors(pivot);
    std::set_difference(p.begin(), p.end(), pn.begin(), pn.end(), std::back_inserter(candidates));
    for (NodeId v : candidates) {
      auto nv = g.neighbors(v);
      auto np = detail::sorted_intersection(p, nv);
      auto nx = detail::sorted_intersection(x, nv);
      r.push_back(v);
      self(self, np, nx);
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  };

  for (NodeId v : order) {
    std::vector<NodeId> p, x;
    for (NodeId u : g.neighbors(v)) (position[u] > position[v] ? p : x).push_back(u);
    r.assign(1, v);
    expand(expand, p, x);
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

// k-clique percolation. Two maximal cliques of size >= k belong to the same
// community when they share at least k-1 nodes (equivalent to chaining
// k-cliques that overlap in k-1 nodes); each community is the union of its
// cliques. Nodes in no k-clique become singletons.
inline CommunityCover clique_percolation(const Graph& g, std::size_t k = 3) {
  if (k < 3) throw Error("clique_percolation: k must be at least 3");
  std::vector<std::vector<NodeId>> cliques;
  for (auto& c : maximal_cliques(g))
    if (c.size() >= k) cliques.push_back(std::move(c));

  std::vector<std::vector<std::uint32_t>> by_node(g.node_count());
  for (std::uint32_t i = 0; i < cliques.size(); ++i)
    for (NodeId v : cliques[i]) by_node[v].push_back(i);

  detail::UnionFind uf(cliques.size());
  std::vector<std::uint32_t> shared(cliques.size(), 0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t i = 0; i < cliques.size(); ++i) {
    touched.clear();
    for (NodeId v : cliques[i])
      for (auto j : by_node[v])
        if (j > i) {
          if (shared[j]++ == 0) touched.push_back(j);
        }
    for (auto j : touched) {
      if (shared[j] >= k - 1) uf.unite(i, j);
      shared[j] = 0;
    }
  }

  std::vector<Community> groups(cliques.size());
  for (std::uint32_t i = 0; i < cliques.size(); ++i) {
    auto& grp = groups[uf.find(i)];
    grp.insert(grp.end(), cliques[i].begin(), cliques[i].end());
  }
  return CommunityCover::from_sets(g.node_count(), std::move(groups));
}

}  // namespace aca
