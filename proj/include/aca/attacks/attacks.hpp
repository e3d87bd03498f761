#pragma once

#include <span>

#include "aca/attacks/epa.hpp"
#include "aca/attacks/plan.hpp"
#include "aca/attacks/strategies.hpp"

namespace aca {

struct AttackSettings {
  std::size_t budget = 50;
  std::size_t ss_trials = 8;
  std::size_t emb_dim = 32;
  EpaOptions epa;
  std::size_t workers = 1;
};

// Builds the plan for one strategy. EPA seeds its population from `prior`.
inline AttackPlan make_plan(Strategy s, const Graph& g, NodeId target, const TemperatureMap& temps,
                            const Detector& detector, const AttackSettings& cfg, std::uint64_t seed,
                            std::span<const AttackPlan> prior = {}) {
  const auto b = cfg.budget;
  AttackPlan plan;
  switch (s) {
    case Strategy::ColdLonely: plan = cold_and_lonely(g, target, temps, b); break;
    case Strategy::StableStructure:
      plan = stable_structure_attack(g, target, temps, detector, cfg.ss_trials, b, seed, cfg.workers);
      break;
    case Strategy::Embedding: plan = embedding_attack(g, target, b, cfg.emb_dim, seed); break;
    case Strategy::Modularity: plan = modularity_attack(g, target, detector, temps, b); break;
    case Strategy::Bih: plan = bih_attack(g, target, detector, b); break;
    case Strategy::Epa: {
      auto opt = cfg.epa;
      opt.workers = cfg.workers;
      plan = epa_attack(g, target, detector, temps, b, seed, prior, opt).plan;
      break;
    }
    case Strategy::SsNbr:
      plan = ss_nbr_attack(g, target, temps, detector, cfg.ss_trials, b, seed, cfg.workers);
      break;
  }
  plan.seed = seed;
  validate_plan(g, plan);
  return plan;
}

}  // namespace aca
