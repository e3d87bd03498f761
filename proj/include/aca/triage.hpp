#pragma once

// Temperatures, covers, and every metric the analyst computes over them.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aca/common.hpp"
#include "aca/graph.hpp"

namespace aca {

enum class Temperature : std::int8_t { Cold = -1, Unknown = 0, Hot = 1 };

inline int to_int(Temperature t) { return static_cast<int>(t); }

// One temperature per node of the accompanying graph.
using TemperatureMap = std::vector<Temperature>;

// Binary label per node (0 or 1).
using LabelMap = std::vector<std::uint8_t>;

using Community = std::vector<NodeId>;  // sorted, non-empty

// A collection of node sets covering V. Overlaps are allowed; a partition
// is the special case with disjoint members.
class CommunityCover {
 public:
  CommunityCover() = default;

  // Normalises raw detector output: each set sorted and de-duplicated,
  // empty sets dropped, repeated sets removed, uncovered nodes appended as
  // singletons, and the list sorted lexicographically.
  static CommunityCover from_sets(std::size_t node_count, std::vector<Community> sets) {
    CommunityCover c;
    c.node_count_ = node_count;
    std::vector<char> covered(node_count, 0);
    for (auto& s : sets) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      for (NodeId v : s) {
        if (v >= node_count) throw Error("community member out of range");
        covered[v] = 1;
      }
    }
    std::erase_if(sets, [](const Community& s) { return s.empty(); });
    for (NodeId v = 0; v < node_count; ++v)
      if (!covered[v]) sets.push_back({v});
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    c.communities_ = std::move(sets);
    c.build_index();
    return c;
  }

  // From a membership vector (node -> community id).
  static CommunityCover from_membership(std::span<const std::uint32_t> membership) {
    std::uint32_t k = 0;
    for (auto m : membership) k = std::max(k, m + 1);
    std::vector<Community> sets(k);
    for (NodeId v = 0; v < membership.size(); ++v) sets[membership[v]].push_back(v);
    return from_sets(membership.size(), std::move(sets));
  }

  std::size_t node_count() const { return node_count_; }
  std::size_t size() const { return communities_.size(); }
  const std::vector<Community>& communities() const { return communities_; }
  const Community& operator[](std::size_t i) const { return communities_[i]; }

  // Indices of the communities containing v.
  std::span<const std::uint32_t> memberships(NodeId v) const { return member_of_[v]; }

  bool is_partition() const {
    for (const auto& m : member_of_)
      if (m.size() != 1) return false;
    return true;
  }

  friend bool operator==(const CommunityCover& a, const CommunityCover& b) {
    return a.node_count_ == b.node_count_ && a.communities_ == b.communities_;
  }

 private:
  void build_index() {
    member_of_.assign(node_count_, {});
    for (std::uint32_t i = 0; i < communities_.size(); ++i)
      for (NodeId v : communities_[i]) member_of_[v].push_back(i);
  }

  std::size_t node_count_ = 0;
  std::vector<Community> communities_;
  std::vector<std::vector<std::uint32_t>> member_of_;
};

// Mean temperature of a community as an exact fraction.
inline Fraction community_temperature(std::span<const NodeId> members, const TemperatureMap& temps) {
  if (members.empty()) throw Error("community_temperature: empty community");
  std::int64_t sum = 0;
  for (NodeId v : members) sum += to_int(temps.at(v));
  return Fraction(sum, static_cast<std::int64_t>(members.size()));
}

// Temperature of the hottest community containing v.
inline Fraction node_community_temperature(NodeId v, const CommunityCover& cover, const TemperatureMap& temps) {
  auto ms = cover.memberships(v);
  if (ms.empty()) throw Error("node is not covered");
  Fraction best = community_temperature(cover[ms[0]], temps);
  for (std::size_t i = 1; i < ms.size(); ++i) best = std::max(best, community_temperature(cover[ms[i]], temps));
  return best;
}

struct RankResult {
  std::size_t rank = 0;
  Fraction t_comm;
};

// Size of the union of all communities at least as hot as v's hottest one.
inline RankResult rank_and_temperature(NodeId v, const CommunityCover& cover, const TemperatureMap& temps) {
  std::vector<Fraction> t(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) t[i] = community_temperature(cover[i], temps);
  auto ms = cover.memberships(v);
  if (ms.empty()) throw Error("node is not covered");
  Fraction threshold = t[ms[0]];
  for (auto i : ms) threshold = std::max(threshold, t[i]);
  std::vector<char> seen(cover.node_count(), 0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (t[i] < threshold) continue;
    for (NodeId u : cover[i])
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
      }
  }
  return {count, threshold};
}

inline std::size_t rank(NodeId v, const CommunityCover& cover, const TemperatureMap& temps) {
  return rank_and_temperature(v, cover, temps).rank;
}

// Newman modularity of a partition, computed per community as
// sum_c [ L_c / M - (D_c / 2M)^2 ].
inline double modularity(const Graph& g, const CommunityCover& partition) {
  if (!partition.is_partition()) throw Error("modularity requires a partition, got overlapping cover");
  const double m = static_cast<double>(g.edge_count());
  if (m == 0) return 0.0;
  std::vector<double> internal(partition.size(), 0.0), degree(partition.size(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) degree[partition.memberships(v)[0]] += static_cast<double>(g.degree(v));
  for (auto [a, b] : g.edges()) {
    auto ca = partition.memberships(a)[0];
    if (ca == partition.memberships(b)[0]) internal[ca] += 1.0;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < partition.size(); ++c) {
    double d = degree[c] / (2.0 * m);
    q += internal[c] / m - d * d;
  }
  return q;
}

struct LabelEdgeCounts {
  std::size_t e00 = 0, e11 = 0, e01 = 0;
  std::size_t n0 = 0, n1 = 0;
};

inline LabelEdgeCounts count_label_edges(const Graph& g, const LabelMap& labels) {
  if (labels.size() != g.node_count()) throw Error("label map size does not match graph");
  LabelEdgeCounts c;
  for (auto l : labels) (l ? c.n1 : c.n0)++;
  for (auto [a, b] : g.edges()) {
    if (labels[a] != labels[b])
      ++c.e01;
    else if (labels[a] == 0)
      ++c.e00;
    else
      ++c.e11;
  }
  return c;
}

// Within-label minus cross-label edge count.
inline std::int64_t delta_homophily(const Graph& g, const LabelMap& labels) {
  auto c = count_label_edges(g, labels);
  return static_cast<std::int64_t>(c.e00 + c.e11) - static_cast<std::int64_t>(c.e01);
}

// Observed cross-label edges over their expectation under random rewiring:
// |E01| / (|V0| |V1| M / C(N,2)).
inline double heterophilicity(const Graph& g, const LabelMap& labels) {
  auto c = count_label_edges(g, labels);
  if (c.n0 == 0 || c.n1 == 0) throw Error("heterophilicity: a label class is empty");
  if (g.edge_count() == 0) throw Error("heterophilicity: graph has no edges");
  const double n = static_cast<double>(g.node_count());
  const double pairs = n * (n - 1.0) / 2.0;
  const double expected = static_cast<double>(c.n0) * static_cast<double>(c.n1) *
                          static_cast<double>(g.edge_count()) / pairs;
  return static_cast<double>(c.e01) / expected;
}

}  // namespace aca
