#pragma once

#include <cstdint>
#include <vector>

#include "aca/graph.hpp"
#include "aca/random.hpp"
#include "aca/triage.hpp"

namespace aca::synth {

struct NoReduciblePair : Error {
  NoReduciblePair() : Error("swap_to_reduce: no reducible pair") {}
};

struct Swap {
  NodeId to_zero;  // u: label 1 -> 0
  NodeId to_one;   // v: label 0 -> 1
  std::int64_t d_u = 0, d_v = 0;
};

// d = A x with x_i = +1 for label 1 and -1 for label 0.
inline std::vector<std::int64_t> signed_neighbor_sums(const Graph& g, const LabelMap& labels) {
  std::vector<std::int64_t> d(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (NodeId u : g.neighbors(v)) d[v] += labels[u] ? 1 : -1;
  return d;
}

// One label exchange: u drawn from label 1 with weight d_u (d_u >= 0), v
// from label 0 with weight |d_v| (d_v < 0). Swaps `labels` in place.
inline Swap swap_to_reduce(const Graph& g, LabelMap& labels, Rng& rng) {
  if (labels.size() != g.node_count()) throw Error("swap_to_reduce: label count mismatch");
  const auto d = signed_neighbor_sums(g, labels);
  const auto n = g.node_count();
  std::vector<double> wu(n, 0.0), wv(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    if (labels[i] == 1 && d[i] >= 0) wu[i] = static_cast<double>(d[i]);
    if (labels[i] == 0 && d[i] < 0) wv[i] = static_cast<double>(-d[i]);
  }
  const auto u = rng.weighted(wu);
  if (u == n) throw NoReduciblePair();
  const auto v = rng.weighted(wv);
  if (v == n) throw NoReduciblePair();
  labels[u] = 0;
  labels[v] = 1;
  return {static_cast<NodeId>(u), static_cast<NodeId>(v), d[u], d[v]};
}

struct ReduceReport {
  LabelMap labels;
  std::int64_t initial_delta = 0;
  std::int64_t achieved_delta = 0;
  std::size_t swaps = 0;
  bool reached = false;     // achieved_delta <= target
  bool exhausted = false;   // stopped on "no reducible pair"
};

// Swaps until delta <= target_delta, max_steps swaps, or no reducible pair.
inline ReduceReport reduce_homophily(const Graph& g, LabelMap labels, std::int64_t target_delta, std::size_t max_steps,
                                     Rng& rng) {
  ReduceReport r;
  r.initial_delta = r.achieved_delta = delta_homophily(g, labels);
  while (r.achieved_delta > target_delta && r.swaps < max_steps) {
    try {
      auto s = swap_to_reduce(g, labels, rng);
      // Exchanging x_u = +1 and x_v = -1 changes delta by -2(d_u - d_v) - 4 [u ~ v].
      r.achieved_delta += -2 * (s.d_u - s.d_v) - (g.has_edge(s.to_zero, s.to_one) ? 4 : 0);
      ++r.swaps;
    } catch (const NoReduciblePair&) {
      r.exhausted = true;
      break;
    }
  }
  r.reached = r.achieved_delta <= target_delta;
  r.labels = std::move(labels);
  return r;
}

}  // namespace aca::synth
