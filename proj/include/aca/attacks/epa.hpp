#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "aca/attacks/plan.hpp"
#include "aca/attacks/strategies.hpp"

namespace aca {

struct EpaOptions {
  std::size_t population = 100;
  std::size_t generations = 10;
  double crossover_rate = 0.8;
  double mutation_rate = 0.3;
  std::size_t workers = 1;
};

struct EpaResult {
  AttackPlan plan;
  std::size_t best_rank = 0;
  std::vector<std::size_t> best_per_generation;  // index 0: initial population
};

namespace detail {

using Gene = std::vector<NodeId>;  // other endpoints, in insertion order

inline std::vector<NodeId> gene_key(const Gene& gene) {
  Gene k = gene;
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace detail

// Genetic search over sets of at most b target-incident edges, with the
// target's rank as fitness and the best gene carried over each generation.
inline EpaResult epa_attack(const Graph& g, NodeId target, const Detector& detector, const TemperatureMap& temps,
                            std::size_t b, std::uint64_t seed, std::span<const AttackPlan> seeds_from = {},
                            const EpaOptions& opt = {}) {
  using detail::Gene;
  check_target(g, target);
  if (opt.population < 2) throw Error("epa_attack: population must be at least 2");
  EpaResult result;
  result.plan = AttackPlan{Strategy::Epa, target, {}, b, seed};
  const auto cand = attack_candidates(g, target);
  if (cand.empty() || b == 0) {
    result.best_rank = rank(target, detector(g), temps);
    result.best_per_generation.assign(opt.generations + 1, result.best_rank);
    return result;
  }
  std::vector<char> is_cand(g.node_count(), 0);
  for (NodeId v : cand) is_cand[v] = 1;

  // Mutation weights: pre-attack hop distance, unreachable as max + 1.
  const auto dist = bfs_distances(g, target);
  const int far = *std::max_element(dist.begin(), dist.end()) + 1;
  std::vector<double> reach(g.node_count(), 0.0);
  for (NodeId v : cand) reach[v] = dist[v] < 0 ? far : dist[v];

  Rng rng(derive_seed(seed, "epa"));
  std::vector<Gene> pop;
  auto add_seed = [&](Gene gene) {
    if (!gene.empty() && pop.size() < opt.population) pop.push_back(std::move(gene));
  };
  for (const auto& p : seeds_from) {
    Gene full;
    for (auto [a, c] : p.edges) {
      const NodeId other = a == target ? c : (c == target ? a : target);
      if (other != target && is_cand[other] && std::find(full.begin(), full.end(), other) == full.end())
        full.push_back(other);
      if (full.size() == b) break;
    }
    for (std::size_t len : {full.size(), full.size() / 2, full.size() / 4}) {
      if (len == 0) continue;
      Gene prefix(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(len));
      if (std::find(pop.begin(), pop.end(), prefix) == pop.end()) add_seed(std::move(prefix));
    }
  }
  const auto max_len = std::min(b, cand.size());
  while (pop.size() < opt.population) {
    auto pool = cand;
    rng.shuffle(pool);
    pool.resize(1 + rng.below(max_len));
    pop.push_back(std::move(pool));
  }

  std::map<std::vector<NodeId>, std::size_t> cache;
  auto evaluate = [&](const std::vector<Gene>& genes) {
    std::vector<std::vector<NodeId>> todo;
    for (const auto& gene : genes) {
      auto key = detail::gene_key(gene);
      if (!cache.contains(key) && std::find(todo.begin(), todo.end(), key) == todo.end()) todo.push_back(key);
    }
    std::vector<std::size_t> ranks(todo.size());
    parallel_for(todo.size(), opt.workers, [&](std::size_t i) {
      EdgeOverlay ov(g);
      for (NodeId v : todo[i]) ov.add(target, v);
      ranks[i] = rank(target, detector(ov.materialize()), temps);
    });
    for (std::size_t i = 0; i < todo.size(); ++i) cache[todo[i]] = ranks[i];
    std::vector<std::size_t> fit;
    for (const auto& gene : genes) fit.push_back(cache.at(detail::gene_key(gene)));
    return fit;
  };

  auto fit = evaluate(pop);
  auto best_index = [&] { return static_cast<std::size_t>(std::max_element(fit.begin(), fit.end()) - fit.begin()); };
  result.best_per_generation.push_back(fit[best_index()]);

  for (std::size_t gen = 0; gen < opt.generations; ++gen) {
    const std::vector<double> weights(fit.begin(), fit.end());
    auto pick = [&]() -> const Gene& {
      auto i = rng.weighted(weights);
      if (i == weights.size()) i = rng.below(weights.size());
      return pop[i];
    };
    std::vector<Gene> next{pop[best_index()]};
    while (next.size() < opt.population) {
      const Gene& p1 = pick();
      const Gene& p2 = pick();
      Gene child;
      if (rng.bernoulli(opt.crossover_rate)) {
        for (NodeId v : p1)
          if (std::find(p2.begin(), p2.end(), v) != p2.end()) child.push_back(v);
        for (const Gene* p : {&p1, &p2})
          for (NodeId v : *p)
            if (std::find(child.begin(), child.end(), v) == child.end() && rng.bernoulli(0.5)) child.push_back(v);
        if (child.size() > b) child.resize(b);
      } else {
        child = p1;
      }
      if (rng.bernoulli(opt.mutation_rate) && child.size() < cand.size()) {
        if (child.size() == b) child.erase(child.begin() + static_cast<std::ptrdiff_t>(rng.below(child.size())));
        auto w = reach;
        for (NodeId v : child) w[v] = 0.0;
        const auto v = rng.weighted(w);
        if (v < w.size()) child.push_back(static_cast<NodeId>(v));
      }
      if (child.empty()) child.push_back(cand[rng.below(cand.size())]);
      next.push_back(std::move(child));
    }
    pop = std::move(next);
    fit = evaluate(pop);
    result.best_per_generation.push_back(fit[best_index()]);
  }

  const auto& best = pop[best_index()];
  result.best_rank = fit[best_index()];
  for (NodeId v : best) result.plan.edges.push_back(make_edge(target, v));
  return result;
}

}  // namespace aca
