#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "aca/game.hpp"
#include "aca/harness/registry.hpp"

namespace aca {

#ifndef ACA_VERSION
#define ACA_VERSION "0.1.0"
#endif

inline constexpr const char* kCurvesSchema = "# aca-curves v1";

using nlohmann::json;

inline std::string fraction_string(Fraction f) { return std::to_string(f.num) + "/" + std::to_string(f.den); }

inline Fraction parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw DataError("bad fraction '" + s + "'");
  return Fraction(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

// Decimal probability such as "0.25" as an exact fraction.
inline Fraction parse_probability(const std::string& s) {
  std::size_t dot = s.find('.');
  std::string digits = s;
  std::int64_t den = 1;
  if (dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  }
  if (digits.empty() || digits.size() > 12 || digits.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("bad attack probability '" + s + "'");
  Fraction p(std::stoll(digits), den);
  if (p.num > p.den) throw UsageError("attack probability '" + s + "' outside [0, 1]");
  return p;
}

inline std::string temperature_string(const TemperatureMap& t) {
  std::string s;
  for (auto x : t) s += x == Temperature::Hot ? 'H' : (x == Temperature::Cold ? 'C' : 'U');
  return s;
}

inline TemperatureMap parse_temperatures(const std::string& s) {
  TemperatureMap t;
  for (char c : s) {
    if (c == 'H') t.push_back(Temperature::Hot);
    else if (c == 'C') t.push_back(Temperature::Cold);
    else if (c == 'U') t.push_back(Temperature::Unknown);
    else throw DataError("bad temperature code");
  }
  return t;
}

inline json to_json(const DetectorSpec& d) {
  json j = {{"kind", d.name()}, {"seed", d.seed}, {"cp_k", d.cp_k}, {"umst_merge", d.umst_merge},
            {"bp_dim", d.bp_dim}, {"bp_threshold", d.bp_threshold}, {"bp_iterations", d.bp_iterations}};
  j["hlc_threshold"] = d.hlc_threshold ? json(*d.hlc_threshold) : json(nullptr);
  return j;
}

inline DetectorSpec detector_from_json(const json& j) {
  auto kind = parse_detector(j.at("kind").get<std::string>());
  if (!kind) throw DataError("unknown detector in record");
  DetectorSpec d;
  d.kind = *kind;
  d.seed = j.at("seed").get<std::uint64_t>();
  d.cp_k = j.at("cp_k").get<std::size_t>();
  d.umst_merge = j.at("umst_merge").get<double>();
  d.bp_dim = j.at("bp_dim").get<std::size_t>();
  d.bp_threshold = j.at("bp_threshold").get<double>();
  d.bp_iterations = j.at("bp_iterations").get<std::size_t>();
  if (!j.at("hlc_threshold").is_null()) d.hlc_threshold = j.at("hlc_threshold").get<double>();
  return d;
}

inline json to_json(const AttackPlan& p) {
  json edges = json::array();
  for (auto [a, b] : p.edges) edges.push_back({a, b});
  return {{"strategy", strategy_name(p.strategy)}, {"target", p.target}, {"budget", p.budget},
          {"seed", p.seed}, {"edges", edges}};
}

inline AttackPlan plan_from_json(const json& j) {
  auto s = parse_strategy(j.at("strategy").get<std::string>());
  if (!s) throw DataError("unknown strategy in plan file");
  AttackPlan p{*s, j.at("target").get<NodeId>(), {}, j.at("budget").get<std::size_t>(), j.at("seed").get<std::uint64_t>()};
  for (const auto& e : j.at("edges")) p.edges.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
  return p;
}

inline json to_json(const PrefixEvaluation& ev) {
  json t = json::array();
  for (auto f : ev.t_comm) t.push_back(fraction_string(f));
  return {{"rank", ev.rank}, {"t_comm", t}, {"best_prefix", ev.best_prefix}};
}

inline json to_json(const GameConfig& c) {
  json detectors = json::array(), strategies = json::array();
  for (const auto& d : c.detectors) detectors.push_back(to_json(d));
  for (auto s : c.strategies) strategies.push_back(strategy_name(s));
  return {{"detectors", detectors},
          {"strategies", strategies},
          {"budget", c.attack.budget},
          {"ss_trials", c.attack.ss_trials},
          {"emb_dim", c.attack.emb_dim},
          {"epa", {{"population", c.attack.epa.population},
                   {"generations", c.attack.epa.generations},
                   {"crossover_rate", c.attack.epa.crossover_rate},
                   {"mutation_rate", c.attack.epa.mutation_rate}}},
          {"targets", c.targets},
          {"seed", c.seed},
          {"force_target_hot", c.force_target_hot}};
}

// Node ids are dense indices into the loaded graph; each target also
// carries its dataset token.
inline json to_json(const GameRecord& r, const Graph& g) {
  json detectors = json::array();
  for (const auto& d : r.detectors) {
    json targets = json::array();
    for (const auto& t : d.targets) {
      json strategies = json::array();
      for (const auto& s : t.strategies) {
        json js = {{"strategy", strategy_name(s.strategy)}};
        if (s.eval) js["evaluation"] = to_json(*s.eval);
        if (!s.error.empty()) js["error"] = s.error;
        strategies.push_back(js);
      }
      targets.push_back({{"target", t.target},
                         {"token", g.label(t.target)},
                         {"baseline_rank", t.baseline_rank},
                         {"baseline_t_comm", fraction_string(t.baseline_t_comm)},
                         {"max_rank", t.max_rank},
                         {"chosen_strategy", t.chosen ? json(strategy_name(t.strategies[*t.chosen].strategy)) : json(nullptr)},
                         {"strategies", strategies}});
    }
    detectors.push_back({{"detector", to_json(d.spec)},
                         {"mean_rank", d.mean_rank.value()},
                         {"mean_rank_exact", fraction_string(d.mean_rank)},
                         {"standard_error", d.standard_error},
                         {"mean_baseline", d.mean_baseline.value()},
                         {"targets", targets}});
  }
  json mixed = json::array();
  for (const auto& mp : r.mixed) {
    json obj = json::array(), exact = json::array();
    for (auto f : mp.objective) {
      obj.push_back(f.value());
      exact.push_back(fraction_string(f));
    }
    mixed.push_back({{"p", mp.p.value()}, {"p_exact", fraction_string(mp.p)}, {"objective", obj},
                     {"objective_exact", exact},
                     {"chosen", r.detectors[mp.chosen].spec.name()}});
  }
  json temps = json::array();
  for (const auto& t : r.temperatures) temps.push_back(temperature_string(t));
  return {{"detectors", detectors},
          {"defender_choice", r.detectors[r.chosen_detector].spec.name()},
          {"mixed", mixed},
          {"temperatures", temps}};
}

inline std::string format_fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

// Per-prefix curves, one row per (detector, attack, target, prefix size)
// for every size 0..budget. A plan that stopped short of its budget has no
// longer prefixes, so sizes past its end repeat the full plan's values.
inline void write_curves_csv(std::ostream& out, const std::string& dataset, const GameRecord& r, const Graph& g) {
  out << kCurvesSchema << '\n' << "dataset,detector,attack,target,prefix_size,rank,t_comm\n";
  for (const auto& d : r.detectors)
    for (const auto& t : d.targets)
      for (const auto& s : t.strategies) {
        if (!s.eval) continue;
        const auto last = s.eval->rank.size() - 1;
        for (std::size_t k = 0; k <= std::max(last, s.plan->budget); ++k) {
          const auto i = std::min(k, last);
          out << dataset << ',' << d.spec.name() << ',' << strategy_name(s.strategy) << ',' << g.label(t.target) << ','
              << k << ',' << s.eval->rank[i] << ',' << format_fixed(s.eval->t_comm[i].value()) << '\n';
        }
      }
}

inline void write_mixed_csv(std::ostream& out, const GameRecord& r) {
  out << "# aca-mixed v1\n" << "p,detector,objective,chosen\n";
  for (const auto& mp : r.mixed)
    for (std::size_t d = 0; d < r.detectors.size(); ++d)
      out << format_fixed(mp.p.value()) << ',' << r.detectors[d].spec.name() << ','
          << format_fixed(mp.objective[d].value()) << ',' << (mp.chosen == d ? 1 : 0) << '\n';
}

inline json plans_json(const GameRecord& r) {
  json plans = json::array();
  for (std::size_t d = 0; d < r.detectors.size(); ++d)
    for (std::size_t t = 0; t < r.detectors[d].targets.size(); ++t)
      for (const auto& s : r.detectors[d].targets[t].strategies)
        if (s.plan) plans.push_back({{"detector_index", d}, {"target_index", t}, {"plan", to_json(*s.plan)}});
  return plans;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f || !(f << text)) throw Error("cannot write " + p.string());
}

inline json read_json(const std::filesystem::path& p) {
  std::ifstream f(p);
  if (!f) throw DataError("cannot open " + p.string());
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw DataError(p.string() + ": " + e.what());
  }
}

// A bundle written inside the run directory wins, then the recorded source
// path, then the dataset name through the registry.
inline std::string resolve_dataset_source(const json& d, const std::filesystem::path& run_dir) {
  if (d.contains("bundle")) return (run_dir / d.at("bundle").get<std::string>()).string();
  const auto source = d.at("source").get<std::string>();
  if (std::filesystem::exists(source)) return source;
  return d.at("spec").get<std::string>();
}

struct ReplayReport {
  std::size_t checks = 0;
  std::vector<std::string> mismatches;
};

// Re-runs every persisted plan through its detector and compares the
// per-prefix ranks and temperatures with the stored record.
inline ReplayReport replay_run(const std::filesystem::path& manifest_path, std::size_t workers = 1) {
  const auto manifest = read_json(manifest_path);
  const auto dir = manifest_path.parent_path();
  const auto outputs = manifest.at("outputs");
  const auto record = read_json(dir / outputs.at("record").get<std::string>());
  const auto plans = read_json(dir / outputs.at("plans").get<std::string>());
  const auto ds = load_dataset(resolve_dataset_source(manifest.at("dataset"), dir));
  const auto& g = ds.graph;

  std::vector<TemperatureMap> temps;
  for (const auto& t : record.at("temperatures")) temps.push_back(parse_temperatures(t.get<std::string>()));
  const auto& detectors = record.at("detectors");

  ReplayReport report;
  report.checks = plans.size();
  std::vector<std::string> problem(plans.size());
  parallel_for(plans.size(), workers, [&](std::size_t i) {
    const auto& entry = plans[i];
    const auto d = entry.at("detector_index").get<std::size_t>();
    const auto t = entry.at("target_index").get<std::size_t>();
    const auto plan = plan_from_json(entry.at("plan"));
    const auto& drec = detectors.at(d);
    const auto label = drec.at("detector").at("kind").get<std::string>() + " target " +
                       g.label(plan.target) + " " + std::string(strategy_name(plan.strategy));
    try {
      validate_plan(g, plan);
      const Detector det(detector_from_json(drec.at("detector")));
      const auto ev = evaluate_prefixes(g, plan, det, temps.at(t));
      const auto& trec = drec.at("targets").at(t);
      const json* stored = nullptr;
      for (const auto& s : trec.at("strategies"))
        if (s.at("strategy") == strategy_name(plan.strategy) && s.contains("evaluation")) stored = &s.at("evaluation");
      if (!stored || trec.at("target").get<NodeId>() != plan.target) {
        problem[i] = label + ": no stored evaluation";
        return;
      }
      if (to_json(ev) != *stored) problem[i] = label + ": ranks differ from the record";
    } catch (const Error& e) {
      problem[i] = label + ": " + e.what();
    }
  });
  for (auto& p : problem)
    if (!p.empty()) report.mismatches.push_back(std::move(p));
  return report;
}

}  // namespace aca
