#pragma once

// Weighted multigraph used by the modularity optimisers. Aggregating a
// partition turns intra-community edges into self-loop weight.

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aca/graph.hpp"

namespace aca::detail {

struct WeightedGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no self entries
  std::vector<double> self_loop;  // weight of internal edges folded into the node
  std::vector<double> strength;   // sum of incident weights, self-loops counted twice
  double total_weight = 0.0;      // m

  std::size_t size() const { return adj.size(); }

  static WeightedGraph from_graph(const Graph& g) {
    WeightedGraph w;
    const auto n = g.node_count();
    w.adj.resize(n);
    w.self_loop.assign(n, 0.0);
    w.strength.assign(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
      w.adj[v].reserve(g.degree(v));
      for (NodeId u : g.neighbors(v)) w.adj[v].emplace_back(u, 1.0);
      w.strength[v] = static_cast<double>(g.degree(v));
    }
    w.total_weight = static_cast<double>(g.edge_count());
    return w;
  }

  // Collapses each community (ids 0..k-1) into one node.
  WeightedGraph aggregate(const std::vector<std::uint32_t>& comm, std::uint32_t k) const {
    WeightedGraph out;
    out.adj.resize(k);
    out.self_loop.assign(k, 0.0);
    out.strength.assign(k, 0.0);
    out.total_weight = total_weight;
    std::vector<std::unordered_map<std::uint32_t, double>> acc(k);
    for (std::uint32_t v = 0; v < size(); ++v) {
      const auto cv = comm[v];
      out.self_loop[cv] += self_loop[v];
      out.strength[cv] += strength[v];
      for (auto [u, wt] : adj[v]) {
        const auto cu = comm[u];
        if (cu == cv) {
          if (v < u) out.self_loop[cv] += wt;
        } else {
          acc[cv][cu] += wt;
        }
      }
    }
    for (std::uint32_t c = 0; c < k; ++c) {
      out.adj[c].assign(acc[c].begin(), acc[c].end());
      std::sort(out.adj[c].begin(), out.adj[c].end());
    }
    return out;
  }

  double modularity(const std::vector<std::uint32_t>& comm) const {
    if (total_weight <= 0) return 0.0;
    std::uint32_t k = 0;
    for (auto c : comm) k = std::max(k, c + 1);
    std::vector<double> in(k, 0.0), tot(k, 0.0);
    for (std::uint32_t v = 0; v < size(); ++v) {
      in[comm[v]] += self_loop[v];
      tot[comm[v]] += strength[v];
      for (auto [u, wt] : adj[v])
        if (v < u && comm[u] == comm[v]) in[comm[v]] += wt;
    }
    double q = 0.0;
    const double m2 = 2.0 * total_weight;
    for (std::uint32_t c = 0; c < k; ++c) q += in[c] / total_weight - (tot[c] / m2) * (tot[c] / m2);
    return q;
  }
};

// Renumbers labels to 0..k-1 in order of first appearance; returns k.
inline std::uint32_t renumber(std::vector<std::uint32_t>& comm) {
  std::unordered_map<std::uint32_t, std::uint32_t> map;
  for (auto& c : comm) {
    auto [it, inserted] = map.try_emplace(c, static_cast<std::uint32_t>(map.size()));
    c = it->second;
  }
  return static_cast<std::uint32_t>(map.size());
}

// One local-moving phase: repeated passes over the nodes in `order`, moving
// each node to the neighbouring community with the largest modularity gain,
// until a pass moves nothing. `comm` is updated in place; returns whether
// any node moved.
template <typename Rng>
bool local_moving(const WeightedGraph& g, std::vector<std::uint32_t>& comm, Rng& rng) {
  constexpr double kEps = 1e-12;
  const auto n = static_cast<std::uint32_t>(g.size());
  if (g.total_weight <= 0) return false;
  const double m2 = 2.0 * g.total_weight;
  std::uint32_t k = 0;
  for (auto c : comm) k = std::max(k, c + 1);
  std::vector<double> tot(std::max<std::uint32_t>(k, n), 0.0);
  for (std::uint32_t v = 0; v < n; ++v) tot[comm[v]] += g.strength[v];

  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);

  std::vector<double> link(tot.size(), 0.0);
  std::vector<char> seen(tot.size(), 0);
  std::vector<std::uint32_t> touched;
  bool any_move = false;
  for (bool moved = true; moved;) {
    moved = false;
    for (auto v : order) {
      const auto old = comm[v];
      const double kv = g.strength[v];
      touched.clear();
      touched.push_back(old);
      seen[old] = 1;
      for (auto [u, wt] : g.adj[v]) {
        const auto cu = comm[u];
        if (!seen[cu]) {
          seen[cu] = 1;
          touched.push_back(cu);
        }
        link[cu] += wt;
      }
      tot[old] -= kv;
      double best_gain = link[old] - tot[old] * kv / m2;
      auto best = old;
      for (auto c : touched) {
        if (c == old) continue;
        double gain = link[c] - tot[c] * kv / m2;
        if (gain > best_gain + kEps) {
          best_gain = gain;
          best = c;
        }
      }
      tot[best] += kv;
      if (best != old) {
        comm[v] = best;
        moved = true;
        any_move = true;
      }
      for (auto c : touched) {
        link[c] = 0.0;
        seen[c] = 0;
      }
    }
  }
  return any_move;
}

}  // namespace aca::detail
