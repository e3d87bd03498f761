#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "aca/detectors/louvain.hpp"
#include "aca/detectors/weighted_graph.hpp"
#include "aca/random.hpp"
#include "aca/triage.hpp"

namespace aca {

namespace detail {

// Leiden refinement for modularity. Inside every community of `comm`, start
// from singletons and merge a node into a well-connected sub-community of
// its own community when the modularity gain is non-negative, picking the
// best gain. Merges only follow edges, so every sub-community induces a
// connected subgraph.
template <typename Rng>
std::vector<std::uint32_t> refine_partition(const WeightedGraph& g, const std::vector<std::uint32_t>& comm,
                                            Rng& rng) {
  const auto n = static_cast<std::uint32_t>(g.size());
  const double m2 = 2.0 * g.total_weight;
  std::uint32_t k = 0;
  for (auto c : comm) k = std::max(k, c + 1);

  std::vector<double> comm_strength(k, 0.0);
  for (std::uint32_t v = 0; v < n; ++v) comm_strength[comm[v]] += g.strength[v];

  // Weight from each node to the rest of its community.
  std::vector<double> to_comm(n, 0.0);
  for (std::uint32_t v = 0; v < n; ++v)
    for (auto [u, w] : g.adj[v])
      if (comm[u] == comm[v]) to_comm[v] += w;

  std::vector<std::uint32_t> sub(n);
  for (std::uint32_t v = 0; v < n; ++v) sub[v] = v;
  std::vector<double> sub_strength(g.strength);
  std::vector<double> sub_external(to_comm);  // weight from sub-community to rest of its community
  std::vector<std::uint32_t> sub_size(n, 1);

  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);

  std::vector<double> link(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> touched;
  for (auto v : order) {
    if (sub_size[sub[v]] != 1) continue;
    const double kv = g.strength[v];
    const double kc = comm_strength[comm[v]];
    if (to_comm[v] < kv * (kc - kv) / m2) continue;  // v not well connected

    touched.clear();
    for (auto [u, w] : g.adj[v]) {
      if (comm[u] != comm[v]) continue;
      const auto s = sub[u];
      if (!seen[s]) {
        seen[s] = 1;
        touched.push_back(s);
      }
      link[s] += w;
    }
    const auto own = sub[v];
    double best_gain = 0.0;
    std::uint32_t best = own;
    for (auto s : touched) {
      if (s == own) continue;
      const double ks = sub_strength[s];
      if (sub_external[s] < ks * (kc - ks) / m2) continue;  // sub-community not well connected
      const double gain = link[s] - kv * ks / m2;
      if (gain < 0.0) continue;
      if (best == own || gain > best_gain + 1e-12 || (gain > best_gain - 1e-12 && s < best)) {
        best_gain = gain;
        best = s;
      }
    }
    if (best != own) {
      sub_external[best] = sub_external[best] + to_comm[v] - 2.0 * link[best];
      sub_strength[best] += kv;
      sub_size[best] += 1;
      sub_size[own] = 0;
      sub[v] = best;
    }
    for (auto s : touched) {
      link[s] = 0.0;
      seen[s] = 0;
    }
  }
  return sub;
}

}  // namespace detail

// Leiden: local moving, refinement, aggregation of the refined partition
// with the unrefined partition as the starting point at the next level.
inline ModularityRun leiden_run(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  const auto base = detail::WeightedGraph::from_graph(g);
  auto level = base;
  const auto n = static_cast<std::uint32_t>(g.node_count());

  std::vector<std::uint32_t> node_level(n);  // original node -> node of current level
  for (std::uint32_t v = 0; v < n; ++v) node_level[v] = v;
  std::vector<std::uint32_t> comm(n);  // partition of the current level
  for (std::uint32_t v = 0; v < n; ++v) comm[v] = v;

  auto flatten = [&] {
    std::vector<std::uint32_t> out(n);
    for (std::uint32_t v = 0; v < n; ++v) out[v] = comm[node_level[v]];
    return out;
  };

  ModularityRun run;
  run.phase_modularity.push_back(base.modularity(flatten()));
  for (;;) {
    detail::local_moving(level, comm, rng);
    const auto k = detail::renumber(comm);
    run.phase_modularity.push_back(base.modularity(flatten()));
    if (k == level.size()) break;

    auto sub = detail::refine_partition(level, comm, rng);
    const auto ks = detail::renumber(sub);
    if (ks == level.size()) break;  // refinement merged nothing; fixed point

    std::vector<std::uint32_t> next_comm(ks);
    for (std::uint32_t v = 0; v < level.size(); ++v) next_comm[sub[v]] = comm[v];
    level = level.aggregate(sub, ks);
    for (auto& x : node_level) x = sub[x];
    comm = std::move(next_comm);
  }

  // Split any community that is not connected in the input graph. Splitting
  // disconnected parts never lowers modularity.
  auto membership = flatten();
  std::vector<std::uint32_t> split(n, UINT32_MAX);
  std::uint32_t next = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (split[s] != UINT32_MAX) continue;
    split[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(u))
        if (split[w] == UINT32_MAX && membership[w] == membership[u]) {
          split[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  if (detail::renumber(membership) != next) run.phase_modularity.push_back(base.modularity(split));
  run.partition = CommunityCover::from_membership(split);
  return run;
}

inline CommunityCover leiden(const Graph& g, std::uint64_t seed) { return leiden_run(g, seed).partition; }

}  // namespace aca
