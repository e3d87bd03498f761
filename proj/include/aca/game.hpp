#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "aca/attacks/attacks.hpp"
#include "aca/detectors/stable.hpp"

namespace aca {

inline constexpr std::int32_t kNoLabel = -1;

struct GameConfig {
  std::vector<DetectorSpec> detectors;
  std::vector<Strategy> strategies{kDefaultStrategies.begin(), kDefaultStrategies.end()};
  AttackSettings attack;  // budget, SS trials, Emb dim, EPA options
  std::vector<NodeId> targets;
  std::optional<Fraction> attack_probability;
  std::uint64_t seed = 0;
  bool force_target_hot = false;
  std::size_t workers = 1;

  void validate(const Graph& g) const {
    if (detectors.empty()) throw UsageError("game: no detectors");
    if (strategies.empty()) throw UsageError("game: no attack strategies");
    if (targets.empty()) throw UsageError("game: no targets");
    for (NodeId t : targets)
      if (t >= g.node_count()) throw UsageError("game: target out of range");
    if (attack_probability && (attack_probability->num < 0 || attack_probability->num > attack_probability->den))
      throw UsageError("game: attack probability outside [0, 1]");
  }
};

// Same-label nodes are hot 0.3 / cold 0.1 / unknown 0.6; all others have
// hot and cold reversed. The target is drawn like any same-label node
// unless force_target_hot is set.
inline TemperatureMap assign_temperatures(std::size_t n, NodeId target, std::span<const std::int32_t> node_label,
                                          std::uint64_t seed, bool force_target_hot = false) {
  if (target >= n || node_label.size() != n) throw Error("assign_temperatures: bad input sizes");
  if (node_label[target] == kNoLabel) throw Error("assign_temperatures: target has no label");
  Rng rng(seed);
  TemperatureMap temps(n);
  for (NodeId v = 0; v < n; ++v) {
    const bool same = node_label[v] == node_label[target];
    const double u = rng.uniform();
    const double hot = same ? 0.3 : 0.1;
    temps[v] = u < hot ? Temperature::Hot : (u < 0.4 ? Temperature::Cold : Temperature::Unknown);
  }
  if (force_target_hot) temps[target] = Temperature::Hot;
  return temps;
}

struct TargetSelection {
  std::vector<NodeId> targets;
  std::vector<std::int32_t> node_label;  // ground truth, or stable-structure index
  std::size_t structures = 0;            // structures found
  std::size_t kept = 0;                  // structures kept as homogeneous
};

inline constexpr std::size_t kTargetSelectionTrials = 20;

// Targets are drawn from the union of homogeneous stable structures of 20
// Louvain runs. Without ground truth every structure is its own label.
inline TargetSelection select_targets(const Graph& g, const std::optional<std::vector<std::int32_t>>& labels,
                                      std::size_t count, std::uint64_t seed, std::size_t workers = 1) {
  if (count == 0) throw UsageError("select_targets: count must be at least 1");
  if (labels && labels->size() != g.node_count()) throw Error("select_targets: label count mismatch");
  Detector louvain_handle(DetectorSpec{.kind = DetectorKind::Louvain, .seed = derive_seed(seed, "targets-detector")});
  const auto ss = stable_structures(g, louvain_handle, kTargetSelectionTrials, derive_seed(seed, "targets"), workers);
  TargetSelection out;
  out.structures = ss.structures.size();
  out.node_label.assign(g.node_count(), kNoLabel);
  if (labels) out.node_label = *labels;
  std::vector<NodeId> pool;
  for (std::size_t i = 0; i < ss.structures.size(); ++i) {
    const auto& s = ss.structures[i];
    bool homogeneous = true;
    if (labels)
      for (NodeId v : s) homogeneous &= (*labels)[v] == (*labels)[s[0]] && (*labels)[v] != kNoLabel;
    if (!homogeneous) continue;
    ++out.kept;
    for (NodeId v : s) {
      pool.push_back(v);
      if (!labels) out.node_label[v] = static_cast<std::int32_t>(i);
    }
  }
  if (pool.empty()) throw DataError("select_targets: no homogeneous stable structure");
  if (pool.size() < count)
    throw DataError("select_targets: only " + std::to_string(pool.size()) + " candidate targets for " +
                    std::to_string(count) + " requested");
  std::sort(pool.begin(), pool.end());
  Rng rng(derive_seed(seed, "targets-sample"));
  rng.shuffle(pool);
  pool.resize(count);
  out.targets = std::move(pool);
  return out;
}

struct StrategyOutcome {
  Strategy strategy = Strategy::ColdLonely;
  std::optional<AttackPlan> plan;
  std::optional<PrefixEvaluation> eval;
  std::string error;  // set when the strategy failed and was skipped
};

struct TargetOutcome {
  NodeId target = 0;
  std::size_t baseline_rank = 0;
  Fraction baseline_t_comm;
  std::vector<StrategyOutcome> strategies;
  std::optional<std::size_t> chosen;  // index into strategies
  std::size_t max_rank = 0;

  const StrategyOutcome* chosen_strategy() const { return chosen ? &strategies[*chosen] : nullptr; }
};

struct DetectorOutcome {
  DetectorSpec spec;
  std::vector<TargetOutcome> targets;  // in config target order
  Fraction mean_rank;                  // mean best-attack rank
  Fraction mean_baseline;
  double standard_error = 0.0;
};

struct MixedPoint {
  Fraction p;
  std::vector<Fraction> objective;  // per detector
  std::size_t chosen = 0;
};

struct GameRecord {
  std::vector<DetectorOutcome> detectors;
  std::size_t chosen_detector = 0;
  std::vector<MixedPoint> mixed;
  std::vector<TemperatureMap> temperatures;  // per target, config order
};

inline std::uint64_t attack_seed(std::uint64_t seed, std::size_t detector, NodeId target, Strategy s) {
  return derive_seed(seed, "attack", detector, target, static_cast<std::uint64_t>(s));
}

// Runs every enabled strategy against one (detector, target) and keeps the
// highest rank; ties go to the earlier strategy, then the smaller prefix.
// Failing strategies are recorded and skipped.
inline TargetOutcome best_attack(const Graph& g, NodeId target, const TemperatureMap& temps, const Detector& detector,
                                 const GameConfig& cfg, std::size_t detector_index = 0) {
  TargetOutcome out;
  out.target = target;
  const auto base = rank_and_temperature(target, detector(g), temps);
  out.baseline_rank = out.max_rank = base.rank;
  out.baseline_t_comm = base.t_comm;
  std::vector<AttackPlan> prior;
  for (auto s : cfg.strategies) {
    StrategyOutcome so;
    so.strategy = s;
    try {
      auto plan = make_plan(s, g, target, temps, detector, cfg.attack, attack_seed(cfg.seed, detector_index, target, s),
                            prior);
      so.eval = evaluate_prefixes(g, plan, detector, temps);
      prior.push_back(plan);
      so.plan = std::move(plan);
    } catch (const Error& e) {
      so.error = e.what();
    }
    out.strategies.push_back(std::move(so));
  }
  for (std::size_t i = 0; i < out.strategies.size(); ++i) {
    const auto& ev = out.strategies[i].eval;
    if (!ev) continue;
    if (!out.chosen || ev->best_rank() > out.max_rank) {
      out.chosen = i;
      out.max_rank = std::max(out.max_rank, ev->best_rank());
    }
  }
  return out;
}

inline Fraction mean_of(const std::vector<std::size_t>& xs) {
  std::int64_t sum = 0;
  for (auto x : xs) sum += static_cast<std::int64_t>(x);
  return Fraction(sum, static_cast<std::int64_t>(xs.size()));
}

inline double standard_error_of(const std::vector<std::size_t>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = mean_of(xs).value();
  double ss = 0.0;
  for (auto x : xs) ss += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
}

// Exact mixture p*attacked + (1-p)*baseline of the per-target means.
inline Fraction mixed_objective(const DetectorOutcome& d, Fraction p) {
  std::int64_t attacked = 0, baseline = 0;
  for (const auto& t : d.targets) {
    attacked += static_cast<std::int64_t>(t.max_rank);
    baseline += static_cast<std::int64_t>(t.baseline_rank);
  }
  const auto n = static_cast<std::int64_t>(d.targets.size());
  return Fraction(p.num * attacked + (p.den - p.num) * baseline, p.den * n);
}

inline std::size_t argmin_of(const std::vector<Fraction>& xs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] < xs[best]) best = i;
  return best;
}

inline MixedPoint mixed_point(const GameRecord& r, Fraction p) {
  MixedPoint mp;
  mp.p = p;
  for (const auto& d : r.detectors) mp.objective.push_back(mixed_objective(d, p));
  mp.chosen = argmin_of(mp.objective);
  return mp;
}

// Every (detector, target) pair is an independent job; temperatures depend
// only on the target so all detectors face the same analyst knowledge.
inline GameRecord defender_select(const Graph& g, const GameConfig& cfg,
                                  std::span<const std::int32_t> node_label) {
  cfg.validate(g);
  GameRecord rec;
  for (NodeId t : cfg.targets)
    rec.temperatures.push_back(
        assign_temperatures(g.node_count(), t, node_label, derive_seed(cfg.seed, "temps", t), cfg.force_target_hot));
  const auto nd = cfg.detectors.size(), nt = cfg.targets.size();
  std::vector<TargetOutcome> jobs(nd * nt);
  GameConfig inner = cfg;
  inner.attack.workers = 1;
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t j) {
    const auto d = j / nt, t = j % nt;
    jobs[j] = best_attack(g, cfg.targets[t], rec.temperatures[t], Detector(cfg.detectors[d]), inner, d);
  });
  std::vector<Fraction> means;
  for (std::size_t d = 0; d < nd; ++d) {
    DetectorOutcome out;
    out.spec = cfg.detectors[d];
    std::vector<std::size_t> attacked, baseline;
    for (std::size_t t = 0; t < nt; ++t) {
      attacked.push_back(jobs[d * nt + t].max_rank);
      baseline.push_back(jobs[d * nt + t].baseline_rank);
      out.targets.push_back(std::move(jobs[d * nt + t]));
    }
    out.mean_rank = mean_of(attacked);
    out.mean_baseline = mean_of(baseline);
    out.standard_error = standard_error_of(attacked);
    means.push_back(out.mean_rank);
    rec.detectors.push_back(std::move(out));
  }
  rec.chosen_detector = argmin_of(means);
  return rec;
}

// Adds the mixture evaluation at each grid probability; with a single p the
// record's defender choice becomes the mixture argmin.
inline void mixed_defender_select(GameRecord& rec, std::span<const Fraction> grid) {
  rec.mixed.clear();
  for (auto p : grid) {
    if (p.num < 0 || p.num > p.den) throw UsageError("attack probability outside [0, 1]");
    rec.mixed.push_back(mixed_point(rec, p));
  }
}

// Internal consistency of a record: each chosen strategy attains its
// target's maximum, the defender choice attains the minimum mean, every
// maximum is at least the baseline, and mixture values are convex
// combinations of the endpoints.
inline std::vector<std::string> check_record(const GameRecord& rec) {
  std::vector<std::string> problems;
  std::vector<Fraction> means;
  for (const auto& d : rec.detectors) {
    std::vector<std::size_t> attacked;
    for (const auto& t : d.targets) {
      std::size_t best = t.baseline_rank;
      for (const auto& s : t.strategies)
        if (s.eval) best = std::max(best, *std::max_element(s.eval->rank.begin(), s.eval->rank.end()));
      if (best != t.max_rank) problems.push_back(d.spec.name() + " target " + std::to_string(t.target) + ": max rank");
      if (t.max_rank < t.baseline_rank) problems.push_back(d.spec.name() + ": max below baseline");
      if (const auto* c = t.chosen_strategy(); c && c->eval->best_rank() != t.max_rank)
        problems.push_back(d.spec.name() + " target " + std::to_string(t.target) + ": chosen strategy");
      attacked.push_back(t.max_rank);
    }
    if (!(mean_of(attacked) == d.mean_rank)) problems.push_back(d.spec.name() + ": mean rank");
    means.push_back(d.mean_rank);
  }
  if (!means.empty() && argmin_of(means) != rec.chosen_detector) problems.push_back("defender choice");
  for (const auto& mp : rec.mixed)
    for (std::size_t d = 0; d < rec.detectors.size(); ++d) {
      const auto one = mixed_objective(rec.detectors[d], Fraction(1, 1));
      const auto zero = mixed_objective(rec.detectors[d], Fraction(0, 1));
      // p*one + (1-p)*zero as one fraction, compared exactly.
      const Fraction combo(mp.p.num * one.num * zero.den + (mp.p.den - mp.p.num) * zero.num * one.den,
                           mp.p.den * one.den * zero.den);
      if (!(combo == mp.objective[d])) problems.push_back(rec.detectors[d].spec.name() + ": mixture identity");
    }
  return problems;
}

}  // namespace aca
