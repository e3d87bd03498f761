// Command-line front end: synthetic data generation, the detector/attacker
// game, replay of persisted runs and GML conversion.

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "aca/harness/io.hpp"
#include "aca/synth/pipeline.hpp"

namespace fs = std::filesystem;
using namespace aca;

namespace {

enum Exit { kOk = 0, kUsage = 2, kData = 3, kRuntime = 4 };

struct SynthFlags {
  std::string model;
  std::optional<std::size_t> n;
  double avg_degree = 10.0;
  synth::ModelParams params;
  double homophily_fraction = 1.0;
  std::size_t max_swaps = 1'000'000;
  std::string attr_accuracy = "0.9";

  void add_to(CLI::App& cmd) {
    cmd.add_option("--n", n, "Node count before taking the largest component");
    cmd.add_option("--avg-degree", avg_degree, "Target average degree")->capture_default_str();
    cmd.add_option("--beta", params.ws_beta, "Watts-Strogatz rewiring probability")->capture_default_str();
    cmd.add_option("--ws-k", params.ws_k, "Watts-Strogatz lattice degree (0: from --avg-degree)");
    cmd.add_option("--ba-m", params.ba_m, "Barabasi-Albert edges per new node (0: from --avg-degree)");
    cmd.add_option("--mu", params.lfr_mu, "LFR mixing parameter")->capture_default_str();
    cmd.add_option("--tau1", params.lfr_tau1, "LFR degree exponent")->capture_default_str();
    cmd.add_option("--tau2", params.lfr_tau2, "LFR community-size exponent")->capture_default_str();
    cmd.add_option("--min-community", params.lfr_min_community, "LFR smallest community")->capture_default_str();
    cmd.add_option("--max-community", params.lfr_max_community, "LFR largest community")->capture_default_str();
    cmd.add_option("--max-degree", params.lfr_max_degree, "LFR maximum degree (0: 5x average)");
    cmd.add_option("--mag-attributes", params.mag_attributes, "MAG binary attributes")->capture_default_str();
    cmd.add_option("--homophily-fraction", homophily_fraction,
                   "Swap labels until delta <= fraction x initial delta")->capture_default_str();
    cmd.add_option("--max-swaps", max_swaps, "Swap step cap")->capture_default_str();
    cmd.add_option("--attr-accuracy", attr_accuracy, "Target GLRT accuracy, or 'none'")->capture_default_str();
  }

  std::pair<synth::SynthConfig, synth::PipelineOptions> build(std::uint64_t seed) const {
    auto m = synth::parse_model(model);
    if (!m) throw UsageError("unknown model '" + model + "' (er, ws, ba, lfr, mag)");
    if (!n) throw UsageError("--n is required with --model");
    synth::SynthConfig cfg{*m, *n, avg_degree, params, seed};
    cfg.validate();
    synth::PipelineOptions opt;
    opt.homophily_fraction = homophily_fraction;
    opt.max_swaps = max_swaps;
    if (attr_accuracy == "none")
      opt.attribute_accuracy.reset();
    else
      try {
        opt.attribute_accuracy = std::stod(attr_accuracy);
      } catch (const std::exception&) {
        throw UsageError("--attr-accuracy must be a number or 'none'");
      }
    return {cfg, opt};
  }
};

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
  return s;
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json synth_summary(const synth::SyntheticDataset& ds) {
  return synth::dataset_meta(ds);
}

void print_synth(const synth::SyntheticDataset& ds) {
  std::cout << "nodes " << ds.graph().node_count() << ", edges " << ds.graph().edge_count() << " (largest component)\n"
            << "delta " << ds.reduction.initial_delta << " -> " << ds.reduction.achieved_delta << " after "
            << ds.reduction.swaps << " swaps\n"
            << "heterophilicity " << format_fixed(ds.heterophilicity) << '\n';
  if (ds.profile)
    std::cout << "GLRT accuracy " << format_fixed(ds.profile->measured_accuracy) << " (target "
              << ds.profile->target_accuracy << ", shift " << ds.profile->shift << ")\n";
}

int run_generate(const SynthFlags& flags, std::uint64_t seed, const fs::path& out, const std::string& cmd) {
  const auto t0 = std::chrono::steady_clock::now();
  auto [cfg, opt] = flags.build(seed);
  const auto ds = synth::build_dataset(cfg, opt);
  synth::write_bundle(out, ds);
  json outputs = {{"edges", "graph.edges"}, {"labels", "labels.csv"}, {"meta", "meta.json"}};
  if (ds.profile) outputs["attributes"] = "attrs.bin";
  const json manifest = {{"command", cmd},
                         {"tool_version", ACA_VERSION},
                         {"config", synth_summary(ds).at("config")},
                         {"seeds", {{"master", seed}}},
                         {"started_at", utc_now()},
                         {"wall_clock_seconds", seconds_since(t0)},
                         {"outputs", outputs}};
  write_text(out / "manifest.json", manifest.dump(2) + "\n");
  print_synth(ds);
  std::cout << "wrote " << out.string() << '\n';
  return kOk;
}

struct GameFlags {
  std::string data;
  std::optional<std::size_t> budget;
  std::size_t targets = 10;
  std::vector<std::string> target_nodes;
  std::vector<std::string> detectors;
  std::vector<std::string> attacks;
  std::vector<std::string> capabilities;
  std::vector<std::string> prob_grid;
  std::size_t ss_trials = 8;
  std::size_t emb_dim = 32;
  std::size_t epa_population = 100;
  std::size_t epa_generations = 10;
  bool force_target_hot = false;
};

template <typename T, typename Parse>
std::vector<T> parse_list(const std::vector<std::string>& names, Parse parse, const std::string& what,
                          const std::string& valid) {
  std::vector<T> out;
  for (const auto& s : names) {
    auto v = parse(s);
    if (!v) throw UsageError("unknown " + what + " '" + s + "' (valid: " + valid + ")");
    if (std::find(out.begin(), out.end(), *v) == out.end()) out.push_back(*v);
  }
  return out;
}

std::string valid_detectors() {
  std::string s;
  for (auto k : kAllDetectors) s += (s.empty() ? "" : ", ") + std::string(detector_name(k));
  return s;
}

std::string valid_strategies() {
  std::string s;
  for (auto k : kAllStrategies) s += (s.empty() ? "" : ", ") + std::string(strategy_name(k));
  return s;
}

int run_game(const GameFlags& f, const SynthFlags& synth_flags, std::uint64_t seed, const fs::path& out,
             std::size_t workers, const std::string& cmd) {
  const auto t0 = std::chrono::steady_clock::now();
  if (f.data.empty() == synth_flags.model.empty()) throw UsageError("game needs exactly one of --data or --model");

  // Validate names before any expensive work.
  std::vector<DetectorKind> kinds =
      f.detectors.empty() ? std::vector<DetectorKind>(kAllDetectors.begin(), kAllDetectors.end())
                          : parse_list<DetectorKind>(f.detectors, [](const std::string& s) { return parse_detector(s); },
                                                     "detector", valid_detectors());
  std::vector<Strategy> strategies =
      f.attacks.empty() ? std::vector<Strategy>(kDefaultStrategies.begin(), kDefaultStrategies.end())
                        : parse_list<Strategy>(f.attacks, [](const std::string& s) { return parse_strategy(s); },
                                               "attack", valid_strategies());
  bool ss_nbr = false;
  for (const auto& c : f.capabilities) {
    if (c != "ss-nbr") throw UsageError("unknown capability '" + c + "' (valid: ss-nbr)");
    ss_nbr = true;
  }
  if (ss_nbr && std::find(strategies.begin(), strategies.end(), Strategy::SsNbr) == strategies.end())
    strategies.push_back(Strategy::SsNbr);
  if (!ss_nbr && std::find(strategies.begin(), strategies.end(), Strategy::SsNbr) != strategies.end())
    throw UsageError("the SS-Nbr attack needs --capability ss-nbr");
  std::vector<Fraction> grid;
  for (const auto& p : f.prob_grid) grid.push_back(parse_probability(p));

  fs::create_directories(out);
  Dataset ds;
  json dataset_json;
  if (!f.data.empty()) {
    ds = load_dataset(f.data);
    dataset_json = {{"spec", f.data}, {"name", ds.name}, {"source", fs::absolute(ds.source).string()}};
  } else {
    auto [cfg, opt] = synth_flags.build(seed);
    const auto synthetic = synth::build_dataset(cfg, opt);
    synth::write_bundle(out / "dataset", synthetic);
    // Reload so node ids match what replay will see.
    ds = load_dataset((out / "dataset").string());
    ds.name = std::string(synth::model_name(cfg.model));
    dataset_json = {{"spec", "model:" + ds.name}, {"name", ds.name}, {"source", fs::absolute(ds.source).string()},
                    {"bundle", "dataset"}};
  }
  const Graph& g = ds.graph;
  dataset_json["nodes"] = g.node_count();
  dataset_json["edges"] = g.edge_count();
  dataset_json["labelled"] = ds.labels.has_value();

  GameConfig cfg;
  for (auto k : kinds)
    cfg.detectors.push_back(DetectorSpec{
        .kind = k,
        .seed = derive_seed(seed, "detector",
                            static_cast<std::uint64_t>(std::find(kAllDetectors.begin(), kAllDetectors.end(), k) -
                                                       kAllDetectors.begin()))});
  cfg.strategies = strategies;
  cfg.attack.budget = f.budget.value_or(ss_nbr ? 51 : 50);
  cfg.attack.ss_trials = f.ss_trials;
  cfg.attack.emb_dim = f.emb_dim;
  cfg.attack.epa.population = f.epa_population;
  cfg.attack.epa.generations = f.epa_generations;
  cfg.seed = seed;
  cfg.force_target_hot = f.force_target_hot;
  cfg.workers = workers;

  // Node labels drive temperatures; structure membership stands in when
  // the dataset has no ground truth.
  auto selection = select_targets(g, ds.labels, f.target_nodes.empty() ? f.targets : 1, seed, workers);
  if (f.target_nodes.empty()) {
    cfg.targets = selection.targets;
  } else {
    std::map<std::string, NodeId> id;
    for (NodeId v = 0; v < g.node_count(); ++v) id.emplace(g.label(v), v);
    for (const auto& tok : f.target_nodes) {
      auto it = id.find(tok);
      if (it == id.end()) throw UsageError("target node '" + tok + "' not in the largest component");
      if (selection.node_label[it->second] == kNoLabel)
        throw UsageError("target node '" + tok + "' has no label and lies in no stable structure");
      cfg.targets.push_back(it->second);
    }
  }

  auto record = defender_select(g, cfg, selection.node_label);
  if (!grid.empty()) mixed_defender_select(record, grid);
  if (auto problems = check_record(record); !problems.empty()) {
    for (const auto& p : problems) std::cerr << "inconsistent record: " << p << '\n';
    return kRuntime;
  }

  json outputs = {{"record", "record.json"}, {"plans", "plans.json"}, {"curves", "curves.csv"}};
  write_text(out / "record.json", to_json(record, g).dump(2) + "\n");
  write_text(out / "plans.json", plans_json(record).dump(1) + "\n");
  {
    std::ostringstream csv;
    write_curves_csv(csv, ds.name, record, g);
    write_text(out / "curves.csv", csv.str());
  }
  if (!grid.empty()) {
    std::ostringstream csv;
    write_mixed_csv(csv, record);
    write_text(out / "mixed.csv", csv.str());
    outputs["mixed"] = "mixed.csv";
  }
  json target_tokens = json::array();
  for (NodeId t : cfg.targets) target_tokens.push_back(g.label(t));
  const json manifest = {{"command", cmd},
                         {"tool_version", ACA_VERSION},
                         {"config", to_json(cfg)},
                         {"target_tokens", target_tokens},
                         {"capabilities", f.capabilities},
                         {"attack_prob_grid", f.prob_grid},
                         {"seeds", {{"master", seed}}},
                         {"dataset", dataset_json},
                         {"workers", workers},
                         {"started_at", utc_now()},
                         {"wall_clock_seconds", seconds_since(t0)},
                         {"outputs", outputs}};
  write_text(out / "manifest.json", manifest.dump(2) + "\n");

  std::cout << "dataset " << ds.name << ": " << g.node_count() << " nodes, " << g.edge_count() << " edges, "
            << cfg.targets.size() << " targets, budget " << cfg.attack.budget << '\n';
  for (std::size_t d = 0; d < record.detectors.size(); ++d) {
    const auto& det = record.detectors[d];
    std::map<std::string, int> wins;
    for (const auto& t : det.targets)
      if (const auto* s = t.chosen_strategy()) ++wins[std::string(strategy_name(s->strategy))];
    std::cout << std::left << std::setw(10) << det.spec.name() << " mean rank " << std::right << std::setw(8)
              << format_fixed(det.mean_rank.value()).substr(0, format_fixed(det.mean_rank.value()).size() - 4)
              << " +- " << format_fixed(det.standard_error).substr(0, 5) << "  baseline "
              << format_fixed(det.mean_baseline.value()).substr(0, format_fixed(det.mean_baseline.value()).size() - 4)
              << "  best attack:";
    for (const auto& [k, v] : wins) std::cout << ' ' << k << 'x' << v;
    std::cout << (d == record.chosen_detector ? "  <- defender choice" : "") << '\n';
  }
  for (const auto& mp : record.mixed)
    std::cout << "p_A " << format_fixed(mp.p.value()).substr(0, 4) << " -> " << record.detectors[mp.chosen].spec.name()
              << '\n';
  std::cout << "wrote " << out.string() << '\n';
  return kOk;
}

int run_replay(const fs::path& manifest, std::size_t workers) {
  if (!fs::exists(manifest)) throw DataError("manifest not found: " + manifest.string());
  const auto report = replay_run(manifest, workers);
  for (const auto& m : report.mismatches) std::cout << "mismatch: " << m << '\n';
  if (!report.mismatches.empty()) {
    std::cout << report.mismatches.size() << " of " << report.checks << " checks failed\n";
    return kRuntime;
  }
  std::cout << "all " << report.checks << " checks passed\n";
  return kOk;
}

std::string sanitize_token(std::string s) {
  for (auto& c : s)
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') c = '_';
  return s.empty() ? "_" : s;
}

int run_convert(const fs::path& input, const fs::path& out) {
  std::ifstream in(input);
  if (!in) throw DataError("cannot open " + input.string());
  const auto gml = load_gml(in);
  const auto& g = gml.graph;
  std::vector<std::string> tokens;
  for (NodeId v = 0; v < g.node_count(); ++v) tokens.push_back(sanitize_token(g.label(v)));
  fs::create_directories(out);
  std::ostringstream edges;
  edges << "# converted from " << input.filename().string() << '\n';
  for (auto [a, b] : g.edges()) edges << tokens[a] << ' ' << tokens[b] << '\n';
  write_text(out / "graph.edges", edges.str());
  bool any = false;
  std::ostringstream labels;
  labels << "node,label\n";
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (gml.values[v]) {
      any = true;
      labels << tokens[v] << ',' << *gml.values[v] << '\n';
    }
  if (any) write_text(out / "labels.csv", labels.str());
  std::cout << "converted " << g.node_count() << " nodes, " << g.edge_count() << " edges"
            << (any ? " with labels" : "") << " to " << out.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection under a node-hiding attacker"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  std::size_t workers = default_workers();
  std::string out_dir;

  SynthFlags gen_flags;
  auto* gen = app.add_subcommand("generate", "Generate a synthetic labelled graph bundle");
  gen->add_option("--model", gen_flags.model, "er, ws, ba, lfr or mag")->required();
  gen_flags.add_to(*gen);
  gen->add_option("--seed", seed, "Master seed")->capture_default_str();
  gen->add_option("--out-dir", out_dir, "Output directory")->required();

  GameFlags game_flags;
  SynthFlags game_synth;
  auto* game = app.add_subcommand("game", "Play the detector/attacker game and write records and curves");
  game->add_option("--data", game_flags.data, "Dataset name or path");
  game->add_option("--model", game_synth.model, "Synthetic model instead of --data");
  game_synth.add_to(*game);
  game->add_option("--budget", game_flags.budget, "Edges the attacker may add (default 50, 51 with ss-nbr)");
  game->add_option("--targets", game_flags.targets, "Number of targets to draw")->capture_default_str();
  game->add_option("--target-nodes", game_flags.target_nodes, "Explicit target node tokens")->delimiter(',');
  game->add_option("--seed", seed, "Master seed")->capture_default_str();
  game->add_option("--detectors", game_flags.detectors, "Comma list of detectors (default: all)")->delimiter(',');
  game->add_option("--attacks", game_flags.attacks, "Comma list of attacks (default: C&L,SS,Emb,Mod,BIH)")
      ->delimiter(',');
  game->add_option("--capability", game_flags.capabilities, "Attacker capabilities: ss-nbr")->delimiter(',');
  game->add_option("--attack-prob-grid", game_flags.prob_grid, "Comma list of attack probabilities")->delimiter(',');
  game->add_option("--ss-trials", game_flags.ss_trials, "Detector runs per stable-structure computation")
      ->capture_default_str();
  game->add_option("--emb-dim", game_flags.emb_dim, "Embedding dimension for Emb")->capture_default_str();
  game->add_option("--epa-pop", game_flags.epa_population, "EPA population")->capture_default_str();
  game->add_option("--epa-gens", game_flags.epa_generations, "EPA generations")->capture_default_str();
  game->add_flag("--force-target-hot", game_flags.force_target_hot, "Mark every target hot");
  game->add_option("--out-dir", out_dir, "Output directory")->required();
  game->add_option("--workers", workers, "Worker threads (default: logical cores)");

  std::string manifest;
  auto* replay = app.add_subcommand("replay", "Re-run the plans of a game run and compare ranks");
  replay->add_option("manifest", manifest, "manifest.json of a game run")->required();
  replay->add_option("--workers", workers, "Worker threads (default: logical cores)");

  std::string gml_input;
  auto* convert = app.add_subcommand("convert-gml", "Convert a GML graph to an edge list and labels.csv");
  convert->add_option("input", gml_input, "GML file")->required();
  convert->add_option("--out-dir", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  }

  const auto cmd = command_line(argc, argv);
  try {
    if (*gen) return run_generate(gen_flags, seed, out_dir, cmd);
    if (*game) return run_game(game_flags, game_synth, seed, out_dir, std::max<std::size_t>(1, workers), cmd);
    if (*replay) return run_replay(manifest, std::max<std::size_t>(1, workers));
    if (*convert) return run_convert(gml_input, out_dir);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
