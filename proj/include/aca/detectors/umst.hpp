#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "aca/detectors/clique_percolation.hpp"
#include "aca/graph.hpp"
#include "aca/triage.hpp"

namespace aca {

// Union of all maximum spanning trees (forests) under Jaccard edge weights.
// An edge belongs to some maximum spanning tree iff its endpoints are not
// already joined by strictly heavier edges, so edges are processed in
// groups of equal weight: every edge of a group that bridges two distinct
// components of the strictly-heavier forest is kept, then the group is
// merged.
inline Graph union_of_maximum_spanning_trees(const Graph& g) {
  struct Weighted {
    Edge e;
    std::uint32_t inter, uni;
  };
  std::vector<Weighted> ws;
  ws.reserve(g.edge_count());
  for (auto e : g.edges()) {
    auto [inter, uni] = closed_neighborhood_overlap(g, e.first, e.second);
    ws.push_back({e, static_cast<std::uint32_t>(inter), static_cast<std::uint32_t>(uni)});
  }
  auto weight_cmp = [](const Weighted& a, const Weighted& b) {
    return static_cast<std::uint64_t>(a.inter) * b.uni <=> static_cast<std::uint64_t>(b.inter) * a.uni;
  };
  std::sort(ws.begin(), ws.end(), [&](const Weighted& a, const Weighted& b) {
    auto c = weight_cmp(a, b);
    if (c != 0) return c > 0;
    return a.e < b.e;
  });

  detail::UnionFind uf(g.node_count());
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < ws.size();) {
    std::size_t j = i;
    while (j < ws.size() && weight_cmp(ws[i], ws[j]) == 0) ++j;
    for (std::size_t t = i; t < j; ++t)
      if (uf.find(ws[t].e.first) != uf.find(ws[t].e.second)) kept.push_back(ws[t].e);
    for (std::size_t t = i; t < j; ++t) uf.unite(ws[t].e.first, ws[t].e.second);
    i = j;
  }
  return Graph(g.node_count(), kept);
}

// Seed community of v: v together with every node of a UMST triangle
// through v. Communities whose overlap coefficient |A n B| / min(|A|,|B|)
// reaches `merge_threshold` are merged until no such pair remains.
inline CommunityCover umst_method(const Graph& g, double merge_threshold = 0.5) {
  if (!is_connected(g)) throw Error("umst_method: input graph must be connected");
  const Graph tree = union_of_maximum_spanning_trees(g);
  const auto n = g.node_count();

  std::vector<Community> comms;
  for (NodeId v = 0; v < n; ++v) {
    Community c{v};
    auto nb = tree.neighbors(v);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (tree.has_edge(nb[a], nb[b])) {
          c.push_back(nb[a]);
          c.push_back(nb[b]);
        }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    comms.push_back(std::move(c));
  }
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());

  // Only seeds that contain a triangle take part in merging; the rest stay
  // singletons.
  std::vector<char> alive(comms.size());

  std::vector<std::vector<std::uint32_t>> by_node(n);
  auto index = [&](std::uint32_t i) {
    for (NodeId v : comms[i]) by_node[v].push_back(i);
  };
  for (std::uint32_t i = 0; i < comms.size(); ++i) {
    alive[i] = comms[i].size() > 1;
    if (alive[i]) index(i);
  }

  std::vector<std::uint32_t> shared(comms.size(), 0);
  std::vector<std::uint32_t> touched;
  for (bool merged_any = true; merged_any;) {
    merged_any = false;
    for (std::uint32_t i = 0; i < comms.size(); ++i) {
      if (!alive[i]) continue;
      for (bool merged = true; merged;) {
        merged = false;
        touched.clear();
        for (NodeId v : comms[i])
          for (auto j : by_node[v])
            if (j != i && alive[j] && shared[j]++ == 0) touched.push_back(j);
        std::sort(touched.begin(), touched.end());
        std::uint32_t partner = UINT32_MAX;
        for (auto j : touched) {
          const double coef = static_cast<double>(shared[j]) /
                              static_cast<double>(std::min(comms[i].size(), comms[j].size()));
          if (partner == UINT32_MAX && coef >= merge_threshold) partner = j;
        }
        for (auto j : touched) shared[j] = 0;
        if (partner != UINT32_MAX) {
          Community u;
          std::set_union(comms[i].begin(), comms[i].end(), comms[partner].begin(), comms[partner].end(),
                         std::back_inserter(u));
          alive[partner] = 0;
          comms[i] = std::move(u);
          for (NodeId v : comms[i])
            if (std::find(by_node[v].begin(), by_node[v].end(), i) == by_node[v].end()) by_node[v].push_back(i);
          merged = merged_any = true;
        }
      }
    }
  }

  std::vector<Community> out;
  for (std::uint32_t i = 0; i < comms.size(); ++i)
    if (alive[i]) out.push_back(comms[i]);
  return CommunityCover::from_sets(n, std::move(out));
}

}  // namespace aca
