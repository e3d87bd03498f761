#pragma once

#include <cstdint>
#include <vector>

#include "aca/detectors/weighted_graph.hpp"
#include "aca/random.hpp"
#include "aca/triage.hpp"

namespace aca {

struct ModularityRun {
  CommunityCover partition;
  // Modularity of the flattened partition after each phase, on the input graph.
  std::vector<double> phase_modularity;
};

// Louvain: local moving followed by aggregation, repeated until a level
// produces no move.
inline ModularityRun louvain_run(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  auto level = detail::WeightedGraph::from_graph(g);
  const auto n = static_cast<std::uint32_t>(g.node_count());
  std::vector<std::uint32_t> node_comm(n);
  for (std::uint32_t v = 0; v < n; ++v) node_comm[v] = v;
  const auto base = level;

  ModularityRun run;
  run.phase_modularity.push_back(base.modularity(node_comm));
  for (;;) {
    std::vector<std::uint32_t> comm(level.size());
    for (std::uint32_t i = 0; i < comm.size(); ++i) comm[i] = i;
    if (!detail::local_moving(level, comm, rng)) break;
    const auto k = detail::renumber(comm);
    for (auto& c : node_comm) c = comm[c];
    run.phase_modularity.push_back(base.modularity(node_comm));
    if (k == level.size()) break;
    level = level.aggregate(comm, k);
  }
  run.partition = CommunityCover::from_membership(node_comm);
  return run;
}

inline CommunityCover louvain(const Graph& g, std::uint64_t seed) { return louvain_run(g, seed).partition; }

}  // namespace aca
