#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <map>
#include <set>

#include "aca/attacks/attacks.hpp"
#include "attack_fixtures.hpp"
#include "test_graphs.hpp"

namespace aca {
namespace {

using testing::clique_ring;
using testing::random_graph;
using T = Temperature;

Detector louvain_detector(std::uint64_t seed = 1) { return Detector(DetectorSpec{.kind = DetectorKind::Louvain, .seed = seed}); }

TemperatureMap random_temps(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  TemperatureMap t(n);
  for (auto& x : t) x = static_cast<Temperature>(static_cast<int>(rng.below(3)) - 1);
  return t;
}

Graph star(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(0, v);
  return Graph(n, e);
}

std::vector<NodeId> other_ends(const AttackPlan& p) {
  std::vector<NodeId> out;
  for (auto [a, b] : p.edges) out.push_back(a == p.target ? b : a);
  return out;
}

// ---- prefix evaluation ----

TEST(Prefixes, ArgmaxPrefersSmallestPrefix) {
  EXPECT_EQ(best_prefix_of({10, 10, 25}), 2u);
  EXPECT_EQ(best_prefix_of({10, 25, 25}), 1u);
  EXPECT_EQ(best_prefix_of({7}), 0u);
}

TEST(Prefixes, EmptyPlanIsTheBaseline) {
  auto g = clique_ring(3, 4);
  auto temps = random_temps(g.node_count(), 3);
  auto det = louvain_detector();
  AttackPlan plan{Strategy::ColdLonely, 0, {}, 5, 0};
  auto ev = evaluate_prefixes(g, plan, det, temps);
  ASSERT_EQ(ev.rank.size(), 1u);
  EXPECT_EQ(ev.rank[0], rank(0, det(g), temps));
  EXPECT_EQ(ev.t_comm[0], node_community_temperature(0, det(g), temps));
}

TEST(Prefixes, EachPrefixMatchesDirectEvaluation) {
  auto g = clique_ring(4, 4);
  auto temps = random_temps(g.node_count(), 9);
  auto det = louvain_detector(4);
  auto plan = cold_and_lonely(g, 1, temps, 6);
  auto ev = evaluate_prefixes(g, plan, det, temps, 3);
  ASSERT_EQ(ev.rank.size(), 7u);
  for (std::size_t s = 0; s <= 6; ++s) {
    std::vector<Edge> e(g.edges());
    e.insert(e.end(), plan.edges.begin(), plan.edges.begin() + static_cast<std::ptrdiff_t>(s));
    EXPECT_EQ(ev.rank[s], rank(1, det(Graph(g.node_count(), e)), temps)) << s;
  }
  EXPECT_EQ(ev.rank[ev.best_prefix], *std::max_element(ev.rank.begin(), ev.rank.end()));
}

TEST(Prefixes, DetectorErrorsCarryThePrefixSize) {
  auto g = clique_ring(2, 4);
  Detector bad(DetectorSpec{.kind = DetectorKind::CliquePercolation, .cp_k = 2});
  AttackPlan plan{Strategy::ColdLonely, 0, {}, 1, 0};
  try {
    evaluate_prefixes(g, plan, bad, TemperatureMap(g.node_count(), T::Unknown));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("prefix 0"), std::string::npos);
  }
}

TEST(Plans, ValidationRejectsBadPlans) {
  auto g = clique_ring(2, 3, false);
  EXPECT_THROW(validate_plan(g, {Strategy::ColdLonely, 0, {{0, 1}}, 5, 0}), Error);          // existing
  EXPECT_THROW(validate_plan(g, {Strategy::ColdLonely, 0, {{0, 4}, {4, 0}}, 5, 0}), Error);  // repeated
  EXPECT_THROW(validate_plan(g, {Strategy::ColdLonely, 0, {{0, 4}, {0, 5}}, 1, 0}), Error);  // budget
  EXPECT_THROW(validate_plan(g, {Strategy::ColdLonely, 0, {{1, 4}}, 5, 0}), Error);          // off target
  EXPECT_NO_THROW(validate_plan(g, {Strategy::SsNbr, 0, {{1, 4}}, 5, 0}));
}

TEST(Plans, NamesRoundTrip) {
  for (auto s : kAllStrategies) EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  EXPECT_EQ(parse_strategy("c&l"), Strategy::ColdLonely);
  EXPECT_FALSE(parse_strategy("nope"));
}

// ---- C&L ----

TEST(ColdLonely, StarCenterHasNoCandidates) {
  auto g = star(6);
  EXPECT_TRUE(cold_and_lonely(g, 0, TemperatureMap(6, T::Cold), 3).edges.empty());
}

TEST(ColdLonely, LowDegreeFirstWithinClass) {
  // Target 0 isolated; cold nodes 1..5 with degrees 3,1,2,1,1 via a small
  // side structure.
  Graph g(6, {{1, 2}, {1, 3}, {1, 4}, {3, 5}});
  // degrees: 1->3, 2->1, 3->2, 4->1, 5->1
  auto plan = cold_and_lonely(g, 0, TemperatureMap(6, T::Cold), 2);
  EXPECT_EQ(other_ends(plan), (std::vector<NodeId>{2, 4}));
}

TEST(ColdLonely, MatchesBucketSortOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = random_graph(25, 0.15, seed);
    auto temps = random_temps(25, seed + 100);
    const NodeId t = static_cast<NodeId>(seed % 25);
    auto plan = cold_and_lonely(g, t, temps, 1000);
    // Oracle: stable bucketing by temperature, then by degree, visiting ids in order.
    std::vector<NodeId> expect;
    for (int temp : {-1, 0, 1})
      for (std::size_t d = 0; d < 25; ++d)
        for (NodeId v = 0; v < 25; ++v)
          if (v != t && !g.has_edge(t, v) && to_int(temps[v]) == temp && g.degree(v) == d) expect.push_back(v);
    EXPECT_EQ(other_ends(plan), expect);
    // Hot never precedes unknown, unknown never precedes cold.
    auto ends = other_ends(plan);
    for (std::size_t i = 1; i < ends.size(); ++i) EXPECT_LE(to_int(temps[ends[i - 1]]), to_int(temps[ends[i]]));
  }
}

// ---- SS / SS-Nbr ----

StableStructureSet make_structures(std::size_t n, std::vector<Community> s) {
  StableStructureSet out;
  out.structure_of.assign(n, -1);
  std::sort(s.begin(), s.end());
  out.structures = std::move(s);
  for (std::size_t i = 0; i < out.structures.size(); ++i)
    for (NodeId v : out.structures[i]) out.structure_of[v] = static_cast<std::int32_t>(i);
  return out;
}

TEST(StableStructureOrder, ColderStructureFirst) {
  Graph g(9, std::initializer_list<Edge>{});
  // {1,2}: mean (-1+0)/2 = -0.5; {3..7}: (1+0+0+0+0)/5 = 0.2
  TemperatureMap temps{T::Unknown, T::Cold, T::Unknown, T::Hot, T::Unknown, T::Unknown, T::Unknown, T::Unknown, T::Hot};
  auto ss = make_structures(9, {{3, 4, 5, 6, 7}, {1, 2}});
  auto order = stable_structure_order(g, 0, temps, ss, 5);
  ASSERT_EQ(order.size(), 8u);
  EXPECT_EQ(std::set<NodeId>(order.begin(), order.begin() + 2), (std::set<NodeId>{1, 2}));
  EXPECT_EQ(std::set<NodeId>(order.begin() + 2, order.begin() + 7), (std::set<NodeId>{3, 4, 5, 6, 7}));
  EXPECT_EQ(order[7], 8u);
}

TEST(StableStructureOrder, SingleStructureIsSeededPermutation) {
  auto g = testing::path_graph(8);  // target 0 adjacent to 1
  auto ss = make_structures(8, {{0, 1, 2, 3, 4, 5, 6, 7}});
  TemperatureMap temps(8, T::Unknown);
  auto a = stable_structure_order(g, 0, temps, ss, 11);
  auto b = stable_structure_order(g, 0, temps, ss, 11);
  EXPECT_EQ(a, b);
  std::vector<NodeId> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<NodeId>{2, 3, 4, 5, 6, 7}));
  bool differs = false;
  for (std::uint64_t s = 0; s < 20 && !differs; ++s) differs = stable_structure_order(g, 0, temps, ss, s) != a;
  EXPECT_TRUE(differs);
}

TEST(StableStructureOrder, SegmentsMatchHandOrder) {
  // Structures at temperatures 2/3, -1 and 0 plus hot, cold and unknown leftovers.
  const std::size_t n = 14;
  Graph g(n, {{0, 1}});
  TemperatureMap temps(n, T::Unknown);
  for (NodeId v : {2u, 3u}) temps[v] = T::Hot;  // structure {2,3,4}: 2/3
  for (NodeId v : {5u, 6u}) temps[v] = T::Cold;  // structure {5,6}: -1
  // structure {7,8,9}: 0
  temps[10] = T::Hot;
  temps[11] = T::Cold;
  temps[12] = T::Unknown;
  temps[13] = T::Cold;
  auto ss = make_structures(n, {{2, 3, 4}, {5, 6}, {7, 8, 9}, {0, 1}});
  // {0,1}: target and neighbor only, contributes nothing.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto order = stable_structure_order(g, 0, temps, ss, seed);
    ASSERT_EQ(order.size(), 12u);
    using S = std::multiset<NodeId>;
    EXPECT_EQ(S(order.begin(), order.begin() + 2), (S{5, 6}));
    EXPECT_EQ(S(order.begin() + 2, order.begin() + 5), (S{7, 8, 9}));
    EXPECT_EQ(S(order.begin() + 5, order.begin() + 8), (S{2, 3, 4}));
    EXPECT_EQ(S(order.begin() + 8, order.begin() + 10), (S{11, 13}));
    EXPECT_EQ(order[10], 12u);
    EXPECT_EQ(order[11], 10u);
  }
}

TEST(SsNbr, LinksNewNeighborToOriginalNeighbors) {
  // Target 0 with neighbors 1 and 2; w = 3 adjacent to neither.
  Graph g(5, {{0, 1}, {0, 2}, {3, 4}});
  std::vector<NodeId> order{3, 4};
  auto plan = ss_nbr_from_order(g, 0, order, 10, 0);
  ASSERT_GE(plan.edges.size(), 3u);
  EXPECT_EQ(plan.edges[0], make_edge(0, 3));
  EXPECT_EQ(plan.edges[1], make_edge(3, 1));
  EXPECT_EQ(plan.edges[2], make_edge(3, 2));
  EXPECT_EQ(ss_nbr_from_order(g, 0, order, 1, 0).edges, (std::vector<Edge>{make_edge(0, 3)}));
  validate_plan(g, plan);
}

TEST(SsNbr, RespectsBudget51) {
  auto g = random_graph(80, 0.08, 4);
  auto temps = random_temps(80, 5);
  auto plan = ss_nbr_attack(g, 7, temps, louvain_detector(), 4, 51, 9);
  EXPECT_LE(plan.edges.size(), 51u);
  EXPECT_NO_THROW(validate_plan(g, plan));
}

// ---- Emb ----

struct DenseScores {
  std::map<NodeId, double> score;
};

// Same first-order loss change, from a dense generalised eigensolve.
DenseScores dense_embedding_scores(const Graph& g, NodeId t, int dim) {
  const int n = static_cast<int>(g.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n), d = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
  for (int i = 0; i < n; ++i) d(i, i) = static_cast<double>(g.degree(i));
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, d);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int x, int y) { return std::abs(es.eigenvalues()(x)) > std::abs(es.eigenvalues()(y)); });
  auto edge_sum = [&](const Graph& h) {
    double s = 0;
    for (auto [u, v] : h.edges()) s += 2.0 / (static_cast<double>(h.degree(u)) * static_cast<double>(h.degree(v)));
    return s;
  };
  const double base = edge_sum(g);
  DenseScores out;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (u == t || g.has_edge(t, u)) continue;
    double s = edge_sum(with_added_edges(g, std::vector<Edge>{{t, u}})) - base;
    for (int k = 0; k < dim; ++k) {
      const double lam = es.eigenvalues()(idx[k]);
      const double xt = es.eigenvectors()(t, idx[k]), xu = es.eigenvectors()(u, idx[k]);
      const double moved = lam + 2 * xt * xu - lam * (xt * xt + xu * xu);
      s -= moved * moved - lam * lam;
    }
    out.score[u] = s;
  }
  return out;
}

Graph two_clusters(std::uint64_t seed, double p = 0.6) {
  Rng rng(seed);
  std::vector<Edge> e;
  for (NodeId a = 0; a < 20; ++a)
    for (NodeId b = a + 1; b < 20; ++b) {
      const bool same = (a < 10) == (b < 10);
      if (rng.bernoulli(same ? p : 0.0)) e.emplace_back(a, b);
    }
  e.emplace_back(9, 10);
  return Graph(20, e);
}

TEST(Embedding, ScoresMatchDenseOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = two_clusters(seed);
    if (!is_connected(g)) continue;
    const NodeId t = 0;
    auto sc = embedding_scores(g, t, 4, 3);
    auto dense = dense_embedding_scores(g, t, 4);
    ASSERT_EQ(sc.candidates.size(), dense.score.size());
    for (std::size_t i = 0; i < sc.candidates.size(); ++i)
      EXPECT_NEAR(sc.score[i], dense.score.at(sc.candidates[i]), 1e-7);
  }
}

// With one embedding direction per cluster, pulling the target across the
// cut costs the most reconstruction loss.
TEST(Embedding, CrossClusterCandidatesOutscoreWithinCluster) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = two_clusters(seed, 0.8);
    if (!is_connected(g)) continue;
    auto dense = dense_embedding_scores(g, 0, 2);
    double within = -INFINITY, across = INFINITY;
    for (auto [u, s] : dense.score) (u < 10 ? within : across) = u < 10 ? std::max(within, s) : std::min(across, s);
    if (within == -INFINITY) continue;
    EXPECT_GT(across, within) << seed;
    auto plan = embedding_attack(g, 0, 3, 2, 3);
    for (NodeId u : other_ends(plan)) EXPECT_GE(u, 10u);
  }
}

TEST(Embedding, DeterministicAndTruncated) {
  auto g = clique_ring(3, 5);
  auto a = embedding_attack(g, 2, 100, 4, 7);
  EXPECT_EQ(a.edges.size(), attack_candidates(g, 2).size());
  EXPECT_EQ(a.edges, embedding_attack(g, 2, 100, 4, 7).edges);
  for (double s : embedding_scores(g, 2, 4, 7).score) EXPECT_TRUE(std::isfinite(s));
  EXPECT_THROW(embedding_attack(g, 2, 3, 1, 7), Error);
}

// ---- Mod ----

// Greedy oracle: full modularity recomputed for every candidate move.
std::vector<Edge> greedy_modularity_oracle(const Graph& g, NodeId t, const Detector& det, const TemperatureMap& temps,
                                           std::size_t b) {
  std::vector<Edge> added;
  while (added.size() < b) {
    std::vector<Edge> all(g.edges());
    all.insert(all.end(), added.begin(), added.end());
    Graph cur(g.node_count(), all);
    auto cover = det(cur);
    EXPECT_TRUE(cover.is_partition());
    std::vector<int> comm(cur.node_count());
    for (std::size_t i = 0; i < cover.size(); ++i)
      for (NodeId v : cover[i]) comm[v] = static_cast<int>(i);
    double best_q = -INFINITY;
    int best_c = -1;
    for (int c = 0; c < static_cast<int>(cover.size()); ++c) {
      if (c == comm[t]) continue;
      bool open = false;
      for (NodeId v : cover[c]) open |= !cur.has_edge(t, v);
      if (!open) continue;
      auto moved = comm;
      moved[t] = c;
      const double q = testing::modularity_oracle(cur, moved);
      if (q > best_q + 1e-12) {
        best_q = q;
        best_c = c;
      }
    }
    if (best_c < 0) break;
    NodeId pick = 0;
    std::size_t best_deg = 0;
    bool found = false;
    for (NodeId v : cover[best_c])
      if (!cur.has_edge(t, v) && (!found || cur.degree(v) > best_deg)) {
        pick = v;
        best_deg = cur.degree(v);
        found = true;
      }
    added.push_back(make_edge(t, pick));
  }
  return added;
}

TEST(Modularity, FirstEdgeGoesToOppositeTriangle) {
  auto g = testing::two_triangles_bridge();
  auto det = louvain_detector();
  TemperatureMap temps(6, T::Unknown);
  auto plan = modularity_attack(g, 0, det, temps, 1);
  ASSERT_EQ(plan.edges.size(), 1u);
  EXPECT_GE(other_ends(plan)[0], 3u);
  EXPECT_EQ(plan.edges, greedy_modularity_oracle(g, 0, det, temps, 1));
}

TEST(Modularity, NoCandidatesGivesEmptyPlan) {
  auto g = star(5);
  EXPECT_TRUE(modularity_attack(g, 0, louvain_detector(), TemperatureMap(5, T::Unknown), 3).edges.empty());
}

TEST(Modularity, MatchesGreedyOracle) {
  auto g = clique_ring(4, 5);
  auto det = louvain_detector(2);
  TemperatureMap temps(g.node_count(), T::Unknown);
  for (NodeId t : {0u, 7u, 13u}) {
    auto plan = modularity_attack(g, t, det, temps, 3);
    EXPECT_EQ(plan.edges, greedy_modularity_oracle(g, t, det, temps, 3)) << t;
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto r = random_graph(30, 0.12, seed);
    TemperatureMap rt(30, T::Unknown);
    auto plan = modularity_attack(r, 3, det, rt, 4);
    EXPECT_EQ(plan.edges, greedy_modularity_oracle(r, 3, det, rt, 4)) << seed;
  }
}

TEST(Modularity, DisjointifyPicksHottestCommunity) {
  auto cover = CommunityCover::from_sets(4, {{0, 1, 2}, {2, 3}});
  TemperatureMap temps{T::Cold, T::Cold, T::Unknown, T::Hot};
  auto part = disjointify(cover, temps);
  EXPECT_EQ(part, (std::vector<std::uint32_t>{0, 0, 1, 1}));
}

// ---- BIH ----

TEST(Bih, ImportanceMatchesHandValues) {
  // C = {0,1,2,3}: edges 0-1, 0-2, 0-3, 1-2 inside; 0-4, 4-5 outside.
  Graph g(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {0, 4}, {4, 5}});
  std::vector<NodeId> c{0, 1, 2, 3};
  EXPECT_DOUBLE_EQ(bih_importance(g, 0, c), 2.0 * 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(bih_importance(g, 1, c), 2.0 * 1.0 / 2.0);
  EXPECT_DOUBLE_EQ(bih_importance(g, 3, c), 0.0);
  EXPECT_DOUBLE_EQ(bih_importance(Graph(2, std::initializer_list<Edge>{}), 0, std::vector<NodeId>{0, 1}), 0.0);
}

Graph bih_fixture() {
  // Triangle {0,1,2} with the target, a 5-clique {3..7}, a triangle {8,9,10}.
  std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {8, 9}, {9, 10}, {8, 10}};
  for (NodeId a = 3; a < 8; ++a)
    for (NodeId b = a + 1; b < 8; ++b) e.emplace_back(a, b);
  return Graph(11, e);
}

TEST(Bih, LargestOpenCommunityFirstThenExhaustion) {
  auto g = bih_fixture();
  Detector cp(DetectorSpec{.kind = DetectorKind::CliquePercolation});
  auto plan = bih_attack(g, 0, cp, 5);
  auto ends = other_ends(plan);
  EXPECT_EQ(std::set<NodeId>(ends.begin(), ends.end()), (std::set<NodeId>{3, 4, 5, 6, 7}));
  auto all = other_ends(bih_attack(g, 0, cp, 20));
  ASSERT_EQ(all.size(), 8u);
  EXPECT_EQ(std::set<NodeId>(all.begin() + 5, all.end()), (std::set<NodeId>{8, 9, 10}));
}

// ---- EPA ----

TEST(Epa, ZeroGenerationsReturnsBestSeed) {
  testing::EpaFixture f;
  auto det = louvain_detector();
  EpaOptions opt{.population = 12, .generations = 0};
  auto r = epa_attack(f.graph, f.target, det, f.temps, 2, 3, {}, opt);
  ASSERT_EQ(r.best_per_generation.size(), 1u);
  EXPECT_EQ(r.best_rank, r.best_per_generation[0]);
  auto ev = evaluate_prefixes(f.graph, r.plan, det, f.temps);
  EXPECT_EQ(ev.rank.back(), r.best_rank);
}

TEST(Epa, BestFitnessNeverDecreases) {
  auto g = random_graph(30, 0.15, 8);
  auto temps = random_temps(30, 2);
  auto det = louvain_detector();
  auto cl = cold_and_lonely(g, 4, temps, 6);
  EpaOptions opt{.population = 20, .generations = 8, .workers = 2};
  auto r = epa_attack(g, 4, det, temps, 6, 5, std::span(&cl, 1), opt);
  ASSERT_EQ(r.best_per_generation.size(), 9u);
  for (std::size_t i = 1; i < r.best_per_generation.size(); ++i)
    EXPECT_GE(r.best_per_generation[i], r.best_per_generation[i - 1]);
  // The seeded C&L plan is in the initial population.
  const auto cl_rank = evaluate_prefixes(g, cl, det, temps).rank.back();
  EXPECT_GE(r.best_per_generation[0], cl_rank);
  validate_plan(g, r.plan);
  // Independent of worker count.
  opt.workers = 1;
  EXPECT_EQ(epa_attack(g, 4, det, temps, 6, 5, std::span(&cl, 1), opt).plan.edges, r.plan.edges);
}

TEST(Epa, ReachesExhaustiveOptimumOnSmallFixture) {
  testing::EpaFixture f;
  auto det = louvain_detector();
  const auto best = testing::exhaustive_best_rank(f.graph, f.target, det, f.temps, 2);
  EpaOptions opt{.population = 50, .generations = 20};
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto r = epa_attack(f.graph, f.target, det, f.temps, 2, seed, {}, opt);
    hits += r.best_rank + 1 >= best;
  }
  EXPECT_GE(hits, 9);
}

// ---- all strategies ----

TEST(AllStrategies, PlansAreValidAndDeterministic) {
  AttackSettings cfg;
  cfg.budget = 12;
  cfg.ss_trials = 3;
  cfg.emb_dim = 6;
  cfg.epa = {.population = 8, .generations = 2};
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto g = largest_connected_component(random_graph(40, 0.1, seed)).graph;
    auto temps = random_temps(g.node_count(), seed);
    auto det = louvain_detector(seed);
    const NodeId t = static_cast<NodeId>(seed % g.node_count());
    std::vector<AttackPlan> prior;
    for (auto s : kAllStrategies) {
      auto p = make_plan(s, g, t, temps, det, cfg, seed, prior);
      EXPECT_EQ(p.strategy, s);
      EXPECT_LE(p.edges.size(), cfg.budget);
      EXPECT_EQ(make_plan(s, g, t, temps, det, cfg, seed, prior).edges, p.edges) << strategy_name(s);
      prior.push_back(std::move(p));
    }
  }
}

}  // namespace
}  // namespace aca
