#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "aca/detectors/detectors.hpp"
#include "aca/parallel.hpp"
#include "aca/triage.hpp"

namespace aca {

enum class Strategy { ColdLonely, StableStructure, Embedding, Modularity, Bih, Epa, SsNbr };

inline constexpr std::array kAllStrategies = {Strategy::ColdLonely, Strategy::StableStructure, Strategy::Embedding,
                                              Strategy::Modularity, Strategy::Bih,           Strategy::Epa,
                                              Strategy::SsNbr};

inline constexpr std::array kDefaultStrategies = {Strategy::ColdLonely, Strategy::StableStructure,
                                                  Strategy::Embedding, Strategy::Modularity, Strategy::Bih};

inline std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::ColdLonely: return "C&L";
    case Strategy::StableStructure: return "SS";
    case Strategy::Embedding: return "Emb";
    case Strategy::Modularity: return "Mod";
    case Strategy::Bih: return "BIH";
    case Strategy::Epa: return "EPA";
    case Strategy::SsNbr: return "SS-Nbr";
  }
  return "?";
}

inline std::optional<Strategy> parse_strategy(std::string_view s) {
  auto lower = [](std::string_view x) {
    std::string out(x);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const auto key = lower(s);
  for (auto k : kAllStrategies)
    if (key == lower(strategy_name(k))) return k;
  if (key == "cl" || key == "cold-lonely") return Strategy::ColdLonely;
  if (key == "ss-nbr" || key == "ssnbr") return Strategy::SsNbr;
  return std::nullopt;
}

struct AttackPlan {
  Strategy strategy = Strategy::ColdLonely;
  NodeId target = 0;
  std::vector<Edge> edges;  // in order of addition
  std::size_t budget = 0;
  std::uint64_t seed = 0;
};

// Throws unless the plan adds only new, distinct edges within budget, all
// touching the target (SS-Nbr excepted).
inline void validate_plan(const Graph& g, const AttackPlan& plan) {
  if (plan.edges.size() > plan.budget) throw Error("plan exceeds budget");
  std::unordered_set<std::uint64_t> seen;
  for (auto [a, b] : plan.edges) {
    if (a == b || a >= g.node_count() || b >= g.node_count()) throw Error("plan edge invalid");
    if (g.has_edge(a, b)) throw Error("plan edge already in graph");
    if (!seen.insert(edge_key(a, b)).second) throw Error("plan edge repeated");
    if (plan.strategy != Strategy::SsNbr && a != plan.target && b != plan.target)
      throw Error("plan edge does not touch the target");
  }
}

struct PrefixEvaluation {
  std::vector<std::size_t> rank;    // index = prefix size
  std::vector<Fraction> t_comm;
  std::size_t best_prefix = 0;

  std::size_t best_rank() const { return rank.at(best_prefix); }
};

// Argmax rank over prefix sizes, smallest prefix on ties.
inline std::size_t best_prefix_of(const std::vector<std::size_t>& ranks) {
  std::size_t best = 0;
  for (std::size_t s = 1; s < ranks.size(); ++s)
    if (ranks[s] > ranks[best]) best = s;
  return best;
}

inline Graph apply_prefix(const Graph& g, const AttackPlan& plan, std::size_t s) {
  EdgeOverlay ov(g);
  for (std::size_t i = 0; i < s; ++i) ov.add(plan.edges[i].first, plan.edges[i].second);
  return ov.materialize();
}

// Rank and community temperature of the target after each prefix
// 0..len(plan) of the plan.
inline PrefixEvaluation evaluate_prefixes(const Graph& g, const AttackPlan& plan, const Detector& detector,
                                          const TemperatureMap& temps, std::size_t workers = 1) {
  const auto count = plan.edges.size() + 1;
  PrefixEvaluation out;
  out.rank.assign(count, 0);
  out.t_comm.assign(count, Fraction{});
  parallel_for(count, workers, [&](std::size_t s) {
    try {
      const auto cover = detector(apply_prefix(g, plan, s));
      const auto r = rank_and_temperature(plan.target, cover, temps);
      out.rank[s] = r.rank;
      out.t_comm[s] = r.t_comm;
    } catch (const Error& e) {
      throw Error("prefix " + std::to_string(s) + ": " + e.what());
    }
  });
  out.best_prefix = best_prefix_of(out.rank);
  return out;
}

}  // namespace aca
