#pragma once

// Hierarchical link clustering. Edges sharing an endpoint k are compared by
// the Jaccard similarity of the closed neighbourhoods of their other
// endpoints; single-linkage merges run from the most similar pair down.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "aca/detectors/clique_percolation.hpp"
#include "aca/graph.hpp"
#include "aca/triage.hpp"

namespace aca {

struct HlcResult {
  CommunityCover cover;
  std::vector<std::uint32_t> edge_cluster;  // cluster id per edge of g.edges()
  double cut_similarity = 1.0;              // pairs at or above this were merged
  double partition_density = 0.0;
};

namespace detail {

struct EdgePair {
  std::uint32_t e1, e2;
  std::uint32_t inter, uni;  // similarity inter/uni
};

// Partition density of an edge partition: (2/M) sum_c m_c (m_c - (n_c - 1)) / ((n_c - 2)(n_c - 1)).
struct DensityTracker {
  std::vector<std::size_t> edges;
  std::vector<std::vector<NodeId>> nodes;  // sorted endpoint sets per root
  double sum = 0.0;                        // sum of the per-cluster terms

  static double term(std::size_t m, std::size_t n) {
    if (n <= 2) return 0.0;
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    return md * (md - (nd - 1.0)) / ((nd - 2.0) * (nd - 1.0));
  }
};

}  // namespace detail

// With `threshold` unset, the dendrogram is cut at the level of maximum
// partition density (the earliest such level on ties); otherwise every pair
// with similarity >= threshold is merged.
inline HlcResult hlc_run(const Graph& g, std::optional<double> threshold = std::nullopt) {
  const auto& edges = g.edges();
  const auto m = edges.size();
  std::unordered_map<std::uint64_t, std::uint32_t> edge_index;
  edge_index.reserve(m * 2);
  for (std::uint32_t i = 0; i < m; ++i) edge_index[edge_key(edges[i].first, edges[i].second)] = i;

  // Similarities between edge pairs (k,i) and (k,j) for every shared k.
  std::vector<detail::EdgePair> pairs;
  for (NodeId k = 0; k < g.node_count(); ++k) {
    auto nb = g.neighbors(k);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        auto [inter, uni] = closed_neighborhood_overlap(g, nb[a], nb[b]);
        pairs.push_back({edge_index[edge_key(k, nb[a])], edge_index[edge_key(k, nb[b])],
                         static_cast<std::uint32_t>(inter), static_cast<std::uint32_t>(uni)});
      }
  }
  auto more_similar = [](const detail::EdgePair& x, const detail::EdgePair& y) {
    auto lhs = static_cast<std::uint64_t>(x.inter) * y.uni;
    auto rhs = static_cast<std::uint64_t>(y.inter) * x.uni;
    if (lhs != rhs) return lhs > rhs;
    return std::tie(x.e1, x.e2) < std::tie(y.e1, y.e2);
  };
  std::sort(pairs.begin(), pairs.end(), more_similar);
  auto same_level = [](const detail::EdgePair& x, const detail::EdgePair& y) {
    return static_cast<std::uint64_t>(x.inter) * y.uni == static_cast<std::uint64_t>(y.inter) * x.uni;
  };

  std::size_t cut = 0;  // number of sorted pairs to merge
  double best_density = 0.0;
  if (threshold) {
    while (cut < pairs.size() &&
           static_cast<double>(pairs[cut].inter) / static_cast<double>(pairs[cut].uni) >= *threshold)
      ++cut;
  } else if (m > 0) {
    detail::UnionFind uf(m);
    detail::DensityTracker dt;
    dt.edges.assign(m, 1);
    dt.nodes.resize(m);
    for (std::uint32_t i = 0; i < m; ++i) dt.nodes[i] = {edges[i].first, edges[i].second};
    for (std::size_t i = 0; i < pairs.size();) {
      std::size_t j = i;
      for (; j < pairs.size() && same_level(pairs[i], pairs[j]); ++j) {
        auto ra = uf.find(pairs[j].e1);
        auto rb = uf.find(pairs[j].e2);
        if (ra == rb) continue;
        dt.sum -= detail::DensityTracker::term(dt.edges[ra], dt.nodes[ra].size());
        dt.sum -= detail::DensityTracker::term(dt.edges[rb], dt.nodes[rb].size());
        std::vector<NodeId> merged;
        std::set_union(dt.nodes[ra].begin(), dt.nodes[ra].end(), dt.nodes[rb].begin(), dt.nodes[rb].end(),
                       std::back_inserter(merged));
        const auto me = dt.edges[ra] + dt.edges[rb];
        uf.unite(ra, rb);
        auto root = uf.find(ra);
        auto other = root == ra ? rb : ra;
        dt.nodes[root] = std::move(merged);
        dt.nodes[other].clear();
        dt.nodes[other].shrink_to_fit();
        dt.edges[root] = me;
        dt.sum += detail::DensityTracker::term(me, dt.nodes[root].size());
      }
      const double density = 2.0 / static_cast<double>(m) * dt.sum;
      if (density > best_density + 1e-12) {
        best_density = density;
        cut = j;
      }
      i = j;
    }
  }

  detail::UnionFind uf(m);
  for (std::size_t i = 0; i < cut; ++i) uf.unite(pairs[i].e1, pairs[i].e2);

  HlcResult out;
  out.edge_cluster.resize(m);
  std::unordered_map<std::size_t, std::uint32_t> cluster_id;
  std::vector<Community> groups;
  for (std::uint32_t e = 0; e < m; ++e) {
    auto [it, inserted] = cluster_id.try_emplace(uf.find(e), static_cast<std::uint32_t>(groups.size()));
    if (inserted) groups.emplace_back();
    out.edge_cluster[e] = it->second;
    groups[it->second].push_back(edges[e].first);
    groups[it->second].push_back(edges[e].second);
  }
  if (cut > 0) out.cut_similarity = static_cast<double>(pairs[cut - 1].inter) / pairs[cut - 1].uni;
  out.partition_density = best_density;
  out.cover = CommunityCover::from_sets(g.node_count(), std::move(groups));
  return out;
}

inline CommunityCover hlc(const Graph& g, std::optional<double> threshold = std::nullopt) {
  return hlc_run(g, threshold).cover;
}

}  // namespace aca
