#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "aca/detectors/clique_percolation.hpp"
#include "aca/detectors/detectors.hpp"
#include "aca/parallel.hpp"
#include "aca/random.hpp"

namespace aca {

struct StableStructureSet {
  std::vector<Community> structures;  // disjoint, each of size >= 2, sorted
  std::vector<std::int32_t> structure_of;  // per node, -1 when in none
  std::size_t trials = 0;
  DetectorSpec detector;
};

// Groups nodes that share a community in every one of `runs`. Pairs
// co-assigned in all runs form a graph whose components of size >= 2 are
// the structures.
inline StableStructureSet stable_structures_from_runs(std::size_t n, std::span<const CommunityCover> runs) {
  if (runs.size() < 2) throw Error("stable_structures: need at least two trials");
  const auto trials = runs.size();
  // Candidate pairs from the first run, filtered by the others.
  std::vector<std::uint64_t> pairs;
  for (const auto& c : runs[0].communities())
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) pairs.push_back(edge_key(c[a], c[b]));
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  for (std::size_t t = 1; t < trials; ++t) {
    const auto& run = runs[t];
    std::erase_if(pairs, [&](std::uint64_t key) {
      auto u = static_cast<NodeId>(key >> 32);
      auto v = static_cast<NodeId>(key & 0xffffffffu);
      auto mu = run.memberships(u);
      auto mv = run.memberships(v);
      for (auto a : mu)
        if (std::find(mv.begin(), mv.end(), a) != mv.end()) return false;
      return true;
    });
  }

  detail::UnionFind uf(n);
  for (auto key : pairs) uf.unite(static_cast<std::size_t>(key >> 32), static_cast<std::size_t>(key & 0xffffffffu));
  std::vector<std::vector<NodeId>> groups(n);
  for (NodeId v = 0; v < n; ++v) groups[uf.find(v)].push_back(v);

  StableStructureSet out;
  out.trials = trials;
  out.structure_of.assign(n, -1);
  for (auto& grp : groups)
    if (grp.size() >= 2) out.structures.push_back(std::move(grp));
  std::sort(out.structures.begin(), out.structures.end());
  for (std::size_t i = 0; i < out.structures.size(); ++i)
    for (NodeId v : out.structures[i]) out.structure_of[v] = static_cast<std::int32_t>(i);
  return out;
}

// Trial t runs the detector with derive_seed(seed, "stable", t).
inline StableStructureSet stable_structures(const Graph& g, const Detector& detector, std::size_t trials,
                                            std::uint64_t seed, std::size_t workers = 1) {
  if (trials < 2) throw Error("stable_structures: need at least two trials");
  std::vector<CommunityCover> runs(trials);
  parallel_for(trials, workers,
               [&](std::size_t t) { runs[t] = detector.run(g, derive_seed(seed, "stable", t)); });
  auto out = stable_structures_from_runs(g.node_count(), runs);
  out.detector = detector.spec();
  return out;
}

}  // namespace aca
