#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "aca/attacks/plan.hpp"
#include "aca/detectors/stable.hpp"
#include "aca/spectral.hpp"

namespace aca {

// Nodes the target could still connect to: not itself, not a neighbor.
inline std::vector<NodeId> attack_candidates(const Graph& g, NodeId target) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (v != target && !g.has_edge(target, v)) out.push_back(v);
  return out;
}

inline AttackPlan plan_to_nodes(Strategy s, const Graph& g, NodeId target, std::span<const NodeId> order,
                                std::size_t b, std::uint64_t seed = 0) {
  AttackPlan plan{s, target, {}, b, seed};
  for (NodeId v : order) {
    if (plan.edges.size() >= b) break;
    plan.edges.push_back(make_edge(target, v));
  }
  return plan;
}

inline void check_target(const Graph& g, NodeId target) {
  if (target >= g.node_count()) throw Error("attack target out of range");
}

// C&L: cold, then unknown, then hot non-neighbors; lower degree first, then id.
inline AttackPlan cold_and_lonely(const Graph& g, NodeId target, const TemperatureMap& temps, std::size_t b) {
  check_target(g, target);
  auto cand = attack_candidates(g, target);
  std::sort(cand.begin(), cand.end(), [&](NodeId a, NodeId c) {
    const auto ka = std::tuple(to_int(temps.at(a)), g.degree(a), a);
    const auto kc = std::tuple(to_int(temps.at(c)), g.degree(c), c);
    return ka < kc;
  });
  return plan_to_nodes(Strategy::ColdLonely, g, target, cand, b);
}

// Full SS connection order: structures by increasing temperature (index on
// ties) with a seeded shuffle inside each, then the remaining nodes by
// increasing temperature with seeded tie order.
inline std::vector<NodeId> stable_structure_order(const Graph& g, NodeId target, const TemperatureMap& temps,
                                                  const StableStructureSet& ss, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "ss-order"));
  std::vector<std::size_t> idx(ss.structures.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Fraction> t;
  for (const auto& s : ss.structures) t.push_back(community_temperature(s, temps));
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t c) { return t[a] < t[c]; });

  auto usable = [&](NodeId v) { return v != target && !g.has_edge(target, v); };
  std::vector<NodeId> order;
  for (auto i : idx) {
    std::vector<NodeId> seg;
    for (NodeId v : ss.structures[i])
      if (usable(v)) seg.push_back(v);
    rng.shuffle(seg);
    order.insert(order.end(), seg.begin(), seg.end());
  }
  std::vector<NodeId> rest;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (ss.structure_of[v] < 0 && usable(v)) rest.push_back(v);
  rng.shuffle(rest);
  std::stable_sort(rest.begin(), rest.end(),
                   [&](NodeId a, NodeId c) { return to_int(temps.at(a)) < to_int(temps.at(c)); });
  order.insert(order.end(), rest.begin(), rest.end());
  return order;
}

inline StableStructureSet attack_structures(const Graph& g, const Detector& detector, std::size_t trials,
                                            std::uint64_t seed, std::size_t workers) {
  return stable_structures(g, detector, trials, derive_seed(seed, "ss-structures"), workers);
}

inline AttackPlan stable_structure_attack(const Graph& g, NodeId target, const TemperatureMap& temps,
                                          const Detector& detector, std::size_t trials, std::size_t b,
                                          std::uint64_t seed, std::size_t workers = 1) {
  check_target(g, target);
  const auto ss = attack_structures(g, detector, trials, seed, workers);
  const auto order = stable_structure_order(g, target, temps, ss, seed);
  return plan_to_nodes(Strategy::StableStructure, g, target, order, b, seed);
}

// SS order where each new neighbor w is also linked to the target's
// original neighbors.
inline AttackPlan ss_nbr_from_order(const Graph& g, NodeId target, std::span<const NodeId> order, std::size_t b,
                                    std::uint64_t seed) {
  AttackPlan plan{Strategy::SsNbr, target, {}, b, seed};
  std::unordered_set<std::uint64_t> used;
  auto push = [&](NodeId a, NodeId c) {
    if (plan.edges.size() < b && used.insert(edge_key(a, c)).second) plan.edges.push_back(make_edge(a, c));
  };
  const auto original = g.neighbors(target);
  for (NodeId w : order) {
    if (plan.edges.size() >= b) break;
    push(target, w);
    for (NodeId n : original)
      if (n != w && !g.has_edge(w, n)) push(w, n);
  }
  return plan;
}

inline AttackPlan ss_nbr_attack(const Graph& g, NodeId target, const TemperatureMap& temps, const Detector& detector,
                                std::size_t trials, std::size_t b, std::uint64_t seed, std::size_t workers = 1) {
  check_target(g, target);
  const auto ss = attack_structures(g, detector, trials, seed, workers);
  const auto order = stable_structure_order(g, target, temps, ss, seed);
  return ss_nbr_from_order(g, target, order, b, seed);
}

struct EmbeddingScores {
  std::vector<NodeId> candidates;
  std::vector<double> score;  // increase of the squared reconstruction loss
};

// First-order change of loss^2 = sum_E 2/(d_i d_j) - sum_top lambda^2 when
// edge {t,u} is added. The first sum is exact; each retained generalised
// eigenvalue moves by 2 x_t x_u - lambda (x_t^2 + x_u^2).
inline EmbeddingScores embedding_scores(const Graph& g, NodeId target, std::size_t dim, std::uint64_t seed) {
  check_target(g, target);
  const auto pairs = generalized_adjacency_eigenpairs(g, dim, derive_seed(seed, "emb"));
  const auto n = g.node_count();
  std::vector<double> inv_sum(n, 0.0);  // S_v = sum over neighbors of 1/d_w
  for (NodeId v = 0; v < n; ++v)
    for (NodeId w : g.neighbors(v)) inv_sum[v] += 1.0 / static_cast<double>(g.degree(w));

  auto edge_part = [&](NodeId v) {
    const auto d = static_cast<double>(g.degree(v));
    const double before = d > 0 ? 2.0 * inv_sum[v] / d : 0.0;
    return 2.0 * inv_sum[v] / (d + 1.0) - before;
  };

  EmbeddingScores out;
  out.candidates = attack_candidates(g, target);
  const double t_part = edge_part(target);
  const double dt = static_cast<double>(g.degree(target));
  for (NodeId u : out.candidates) {
    const double du = static_cast<double>(g.degree(u));
    double s = t_part + edge_part(u) + 2.0 / ((dt + 1.0) * (du + 1.0));
    for (std::size_t k = 0; k < pairs.values.size(); ++k) {
      const double lam = pairs.values[k];
      const double xt = pairs.vectors[k][target], xu = pairs.vectors[k][u];
      const double moved = lam + 2.0 * xt * xu - lam * (xt * xt + xu * xu);
      s -= moved * moved - lam * lam;
    }
    out.score.push_back(s);
  }
  return out;
}

inline AttackPlan embedding_attack(const Graph& g, NodeId target, std::size_t b, std::size_t dim, std::uint64_t seed) {
  if (dim < 2) throw Error("embedding_attack: dim must be at least 2");
  const auto sc = embedding_scores(g, target, dim, seed);
  std::vector<std::size_t> idx(sc.candidates.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t c) { return sc.score[a] > sc.score[c]; });
  std::vector<NodeId> order;
  for (auto i : idx) order.push_back(sc.candidates[i]);
  return plan_to_nodes(Strategy::Embedding, g, target, order, b, seed);
}

// Each node goes to its hottest community (lowest index on ties), which
// turns any cover into a partition.
inline std::vector<std::uint32_t> disjointify(const CommunityCover& cover, const TemperatureMap& temps) {
  std::vector<Fraction> t(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) t[i] = community_temperature(cover[i], temps);
  std::vector<std::uint32_t> out(cover.node_count());
  for (NodeId v = 0; v < cover.node_count(); ++v) {
    auto ms = cover.memberships(v);
    std::uint32_t best = ms[0];
    for (auto i : ms)
      if (t[i] > t[best]) best = i;
    out[v] = best;
  }
  return out;
}

// Community (partition id) the target should join to maximise Q, among
// those with at least one non-neighbor; nullopt when none qualifies.
// Moving t into C changes 4M^2 Q by 4M k_C - 2 D_C d_t - d_t^2 relative to
// t being a singleton elsewhere, so the comparison is exact in integers.
inline std::optional<std::uint32_t> best_modularity_community(const Graph& g, NodeId target,
                                                              std::span<const std::uint32_t> part) {
  const auto n = g.node_count();
  std::uint32_t k = 0;
  for (auto c : part) k = std::max(k, c + 1);
  std::vector<std::int64_t> vol(k, 0), link(k, 0), open(k, 0);
  for (NodeId v = 0; v < n; ++v) vol[part[v]] += static_cast<std::int64_t>(g.degree(v));
  for (NodeId w : g.neighbors(target)) ++link[part[w]];
  for (NodeId v = 0; v < n; ++v)
    if (v != target && !g.has_edge(target, v)) ++open[part[v]];
  const auto m = static_cast<std::int64_t>(g.edge_count());
  const auto dt = static_cast<std::int64_t>(g.degree(target));
  std::optional<std::uint32_t> best;
  std::int64_t best_score = 0;
  for (std::uint32_t c = 0; c < k; ++c) {
    if (c == part[target] || open[c] == 0) continue;
    const auto score = 4 * m * link[c] - 2 * vol[c] * dt - dt * dt;
    if (!best || score > best_score) {
      best = c;
      best_score = score;
    }
  }
  return best;
}

inline AttackPlan modularity_attack(const Graph& g, NodeId target, const Detector& detector,
                                    const TemperatureMap& temps, std::size_t b) {
  check_target(g, target);
  AttackPlan plan{Strategy::Modularity, target, {}, b, 0};
  EdgeOverlay ov(g);
  while (plan.edges.size() < b) {
    const auto cur = ov.materialize();
    const auto part = disjointify(detector(cur), temps);
    const auto c = best_modularity_community(cur, target, part);
    if (!c) break;
    std::optional<NodeId> pick;
    for (NodeId v = 0; v < cur.node_count(); ++v) {
      if (part[v] != *c || v == target || cur.has_edge(target, v)) continue;
      if (!pick || cur.degree(v) > cur.degree(*pick)) pick = v;
    }
    ov.add(target, *pick);
    plan.edges.push_back(make_edge(target, *pick));
  }
  return plan;
}

// I(u,C) = (sum over w in N_C(u) of |N_C(u) ∩ N_C(w)|) (deg u - 1) / deg u,
// with N_C the neighbors inside C; degree 0 is treated as 1.
inline double bih_importance(const Graph& g, NodeId u, std::span<const NodeId> community) {
  std::vector<char> in(g.node_count(), 0);
  for (NodeId v : community) in[v] = 1;
  std::vector<char> mark(g.node_count(), 0);
  std::vector<NodeId> nu;
  for (NodeId w : g.neighbors(u))
    if (in[w]) {
      nu.push_back(w);
      mark[w] = 1;
    }
  std::size_t total = 0;
  for (NodeId w : nu)
    for (NodeId x : g.neighbors(w))
      if (in[x] && mark[x]) ++total;
  const double d = static_cast<double>(std::max<std::size_t>(1, g.degree(u)));
  return static_cast<double>(total) * (d - 1.0) / d;
}

inline AttackPlan bih_attack(const Graph& g, NodeId target, const Detector& detector, std::size_t b) {
  check_target(g, target);
  const auto cover = detector(g);
  AttackPlan plan{Strategy::Bih, target, {}, b, 0};
  std::vector<char> taken(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) taken[v] = v == target || g.has_edge(target, v);
  std::vector<char> done(cover.size(), 0);
  while (plan.edges.size() < b) {
    std::optional<std::size_t> best;
    std::size_t best_open = 0;
    for (std::size_t i = 0; i < cover.size(); ++i) {
      if (done[i]) continue;
      std::size_t open = 0;
      for (NodeId v : cover[i]) open += !taken[v];
      if (open > 0 && (!best || open > best_open)) {
        best = i;
        best_open = open;
      }
    }
    if (!best) break;
    done[*best] = 1;
    std::vector<std::pair<double, NodeId>> members;
    for (NodeId v : cover[*best])
      if (!taken[v]) members.emplace_back(-bih_importance(g, v, cover[*best]), v);
    std::sort(members.begin(), members.end());
    for (auto [neg, v] : members) {
      if (plan.edges.size() >= b) break;
      taken[v] = 1;
      plan.edges.push_back(make_edge(target, v));
    }
  }
  return plan;
}

}  // namespace aca
