// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Arguments select a subset by number ("1 3 7").
//
// Criteria 5, 6 and 8 drive the command-line tool against the shipped
// football fixture; the rest call the library against oracles defined here
// or in test_graphs.hpp.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "aca/attacks/epa.hpp"
#include "aca/detectors/detectors.hpp"
#include "aca/harness/io.hpp"
#include "aca/synth/pipeline.hpp"
#include "attack_fixtures.hpp"
#include "test_graphs.hpp"

namespace fs = std::filesystem;
using namespace aca;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// First failure wins the detail slot; later ones are counted.
struct Checker {
  std::size_t failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures == 0) return {true, summary};
    return {false, std::to_string(failures) + " failure(s), first: " + first};
  }
};

fs::path work_dir() {
  static const fs::path d = [] {
    auto p = fs::temp_directory_path() / ("aca_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

int run_cli(const std::string& args, const fs::path& log) {
  const auto cmd = std::string(ACA_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string last_line(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return last;
}

// ---- exact rational helpers for record checks ----

struct Q {
  __int128 num = 0, den = 1;
};
Q q_of(const std::string& s) {
  const auto f = parse_fraction(s);
  return {f.num, f.den};
}
Q q_add(Q a, Q b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Q q_mul(Q a, Q b) { return {a.num * b.num, a.den * b.den}; }
bool q_eq(Q a, Q b) { return a.num * b.den == b.num * a.den; }
bool q_lt(Q a, Q b) { return a.num * b.den < b.num * a.den; }

// ---- 1: metric oracles ----

Outcome oracle_equivalence() {
  Checker c;
  std::mt19937_64 gen(20240601);
  auto below = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(gen); };
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + below(7);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (coin(0.5)) edges.emplace_back(u, v);
    const Graph g(n, edges);
    const auto adj = testing::adjacency_matrix(g);
    const auto tag = "graph " + std::to_string(trial);

    // Modularity of a random partition.
    if (g.edge_count() > 0) {
      std::vector<int> comm(n);
      std::vector<std::uint32_t> membership(n);
      for (std::size_t v = 0; v < n; ++v) membership[v] = static_cast<std::uint32_t>(comm[v] = static_cast<int>(below(3)));
      const double q = modularity(g, CommunityCover::from_membership(membership));
      const double o = testing::modularity_oracle(g, comm);
      c.expect(std::abs(q - o) <= 1e-12 * std::max(1.0, std::abs(o)), tag + ": modularity");
    }

    // Community temperature and rank over a random overlapping cover.
    TemperatureMap t(n);
    for (auto& x : t) x = static_cast<Temperature>(static_cast<int>(below(3)) - 1);
    std::vector<std::set<NodeId>> sets(1 + below(4));
    for (auto& s : sets)
      for (NodeId v = 0; v < n; ++v)
        if (coin(0.45)) s.insert(v);
    std::vector<Community> raw;
    for (auto& s : sets) raw.emplace_back(s.begin(), s.end());
    const auto cover = CommunityCover::from_sets(n, raw);
    std::vector<std::set<NodeId>> normalised;
    for (const auto& com : cover.communities()) normalised.emplace_back(com.begin(), com.end());
    for (NodeId v = 0; v < n; ++v) {
      // Hottest community containing v as (sum, size); rank is the union of
      // communities whose mean is at least that.
      long best_sum = 0, best_size = 0;
      for (const auto& s : normalised)
        if (s.count(v)) {
          long sum = 0;
          for (auto u : s) sum += to_int(t[u]);
          const long size = static_cast<long>(s.size());
          if (best_size == 0 || sum * best_size > best_sum * size) best_sum = sum, best_size = size;
        }
      std::set<NodeId> uni;
      for (const auto& s : normalised) {
        long sum = 0;
        for (auto u : s) sum += to_int(t[u]);
        if (sum * best_size >= best_sum * static_cast<long>(s.size())) uni.insert(s.begin(), s.end());
      }
      c.expect(node_community_temperature(v, cover, t) == Fraction(best_sum, best_size), tag + ": T_comm");
      c.expect(rank(v, cover, t) == uni.size(), tag + ": rank");
    }

    // Heterophilicity and delta over a random binary labelling.
    LabelMap l(n);
    for (auto& x : l) x = static_cast<std::uint8_t>(below(2));
    long within = 0, cross = 0, cross_pairs = 0;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) {
        if (adj[u][v]) (l[u] == l[v] ? within : cross)++;
        cross_pairs += l[u] != l[v];
      }
    c.expect(delta_homophily(g, l) == within - cross, tag + ": delta");
    if (cross_pairs > 0 && g.edge_count() > 0) {
      // Expected cross edges when the same edge count is spread uniformly
      // over all node pairs.
      const double expected =
          static_cast<double>(cross_pairs) * static_cast<double>(g.edge_count()) / (n * (n - 1) / 2.0);
      const double h = heterophilicity(g, l), o = static_cast<double>(cross) / expected;
      c.expect(std::abs(h - o) <= 1e-12 * std::max(1.0, o), tag + ": heterophilicity");
    }
  }
  return c.outcome("200 graphs, N <= 8");
}

// ---- 2: detector invariants ----

std::vector<Community> triangle_percolation_oracle(const Graph& g) {
  const auto a = testing::adjacency_matrix(g);
  const auto n = g.node_count();
  std::vector<std::array<NodeId, 3>> tris;
  for (NodeId x = 0; x < n; ++x)
    for (NodeId y = x + 1; y < n; ++y)
      for (NodeId z = y + 1; z < n; ++z)
        if (a[x][y] && a[y][z] && a[x][z]) tris.push_back({x, y, z});
  // Union-find over triangles sharing two nodes.
  std::vector<std::size_t> parent(tris.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < tris.size(); ++i)
    for (std::size_t j = i + 1; j < tris.size(); ++j) {
      int common = 0;
      for (auto p : tris[i])
        for (auto q : tris[j]) common += p == q;
      if (common == 2) parent[find(i)] = find(j);
    }
  std::map<std::size_t, std::set<NodeId>> groups;
  std::vector<char> covered(n, 0);
  for (std::size_t i = 0; i < tris.size(); ++i)
    for (auto v : tris[i]) groups[find(i)].insert(v), covered[v] = 1;
  std::vector<Community> out;
  for (auto& [root, s] : groups) out.emplace_back(s.begin(), s.end());
  for (NodeId v = 0; v < n; ++v)
    if (!covered[v]) out.push_back({v});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool connected_within(const Graph& g, const Community& com) {
  std::set<NodeId> in(com.begin(), com.end()), seen{com.front()};
  std::vector<NodeId> stack{com.front()};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (NodeId u : g.neighbors(v))
      if (in.count(u) && seen.insert(u).second) stack.push_back(u);
  }
  return seen.size() == in.size();
}

Outcome detector_invariants() {
  Checker c;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = testing::random_graph(50, 0.1, 1000 + s);
    if (g.edge_count() == 0) continue;
    const auto tag = "graph " + std::to_string(s);
    for (const auto& [name, run] : {std::pair{"LV", louvain_run(g, s)}, std::pair{"LD", leiden_run(g, s)}}) {
      for (std::size_t i = 1; i < run.phase_modularity.size(); ++i)
        c.expect(run.phase_modularity[i] >= run.phase_modularity[i - 1] - 1e-12,
                 tag + ": " + name + " phase modularity decreased");
      c.expect(run.partition.is_partition(), tag + ": " + name + " not a partition");
    }
    const auto ld = leiden(g, s);
    for (const auto& com : ld.communities())
      c.expect(connected_within(g, com), tag + ": Leiden community disconnected");

    const auto h = hlc_run(g);
    c.expect(h.edge_cluster.size() == g.edge_count(), tag + ": HLC edge clusters do not cover the edges");
    std::map<std::uint32_t, std::set<NodeId>> ends;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      ends[h.edge_cluster[e]].insert(g.edges()[e].first);
      ends[h.edge_cluster[e]].insert(g.edges()[e].second);
    }
    const auto comms = h.cover.communities();
    for (auto& [id, set] : ends)
      c.expect(std::find(comms.begin(), comms.end(), Community(set.begin(), set.end())) != comms.end(),
               tag + ": HLC community is not an edge-cluster endpoint union");

    const auto fit = bp_overlap_fit(g, 3, s);
    for (std::size_t i = 1; i < fit.objective.size(); ++i)
      c.expect(fit.objective[i] >= fit.objective[i - 1], tag + ": BPOverlap likelihood decreased");
  }
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + gen() % 10;
    const auto g = testing::random_graph(n, 0.2 + 0.6 * std::uniform_real_distribution<>(0, 1)(gen), gen());
    c.expect(clique_percolation(g, 3).communities() == triangle_percolation_oracle(g),
             "CP graph " + std::to_string(trial) + " differs from brute force");
  }
  return c.outcome("LV/LD phases, LD connectivity, CP k=3 brute force (200 graphs, N <= 12), HLC, BPOverlap");
}

// ---- 3: swap identity ----

Outcome swap_identity() {
  Checker c;
  std::mt19937_64 gen(4242);
  std::size_t checked = 0;
  for (int graph = 0; graph < 100; ++graph) {
    const auto g = testing::random_graph(30, 0.2, gen());
    LabelMap l(30);
    for (auto& x : l) x = static_cast<std::uint8_t>(gen() % 2);
    const auto ones = std::count(l.begin(), l.end(), 1);
    Rng rng(gen());
    for (int step = 0; step < 100; ++step) {
      const auto before = delta_homophily(g, l);
      const auto old = l;
      synth::Swap s;
      try {
        s = synth::swap_to_reduce(g, l, rng);
      } catch (const synth::NoReduciblePair&) {
        break;
      }
      // Degrees and labels read from the graph, not from the swap record.
      std::size_t changed = 0;
      for (NodeId v = 0; v < 30; ++v) changed += l[v] != old[v];
      c.expect(changed == 2 && old[s.to_zero] == 1 && old[s.to_one] == 0, "swap did not exchange one pair");
      if (g.has_edge(s.to_zero, s.to_one)) continue;
      ++checked;
      // d is the signed neighbour sum under the pre-swap labels (+1 for
      // label 1, -1 for label 0).
      auto signed_sum = [&](NodeId v) {
        std::int64_t d = 0;
        for (NodeId w : g.neighbors(v)) d += old[w] ? 1 : -1;
        return d;
      };
      const auto du = signed_sum(s.to_zero), dv = signed_sum(s.to_one);
      c.expect(delta_homophily(g, l) == before - 2 * (du - dv),
               "graph " + std::to_string(graph) + " step " + std::to_string(step) + ": delta identity");
      c.expect(std::count(l.begin(), l.end(), 1) == ones, "class sizes changed");
    }
  }
  c.expect(checked >= 100, "only " + std::to_string(checked) + " non-adjacent swaps exercised");
  return c.outcome(std::to_string(checked) + " non-adjacent swaps on 100 graphs");
}

// ---- 4: attribute calibration ----

// Independent re-measurement: estimate Bernoulli parameters from 200
// samples per class and score 5000 fresh samples per class.
double remeasure(const synth::AttributeProfile& p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<> u(0, 1);
  const auto w = p.base_probs.size();
  auto sample = [&](int label) {
    std::vector<int> x(w);
    for (std::size_t j = 0; j < w; ++j) {
      const double pj = label == 0 ? p.base_probs[j] : p.base_probs[(j + w - p.shift) % w];
      x[j] = u(gen) < pj;
    }
    return x;
  };
  std::vector<double> est[2];
  for (int k = 0; k < 2; ++k) {
    est[k].assign(w, 1.0);
    for (int i = 0; i < 200; ++i) {
      auto x = sample(k);
      for (std::size_t j = 0; j < w; ++j) est[k][j] += x[j];
    }
    for (auto& e : est[k]) e /= 202.0;
  }
  int correct = 0;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 5000; ++i) {
      auto x = sample(k);
      double llr = 0;
      for (std::size_t j = 0; j < w; ++j)
        llr += x[j] ? std::log(est[1][j] / est[0][j]) : std::log((1 - est[1][j]) / (1 - est[0][j]));
      correct += (llr > 0 ? 1 : 0) == k;
    }
  return correct / 10000.0;
}

Outcome attribute_calibration() {
  Checker c;
  std::ostringstream detail;
  for (double target : {0.5, 0.7, 0.9}) {
    synth::AttributeProfile p;
    try {
      p = synth::build_attribute_profile(target, 2024);
    } catch (const Error& e) {
      c.expect(false, e.what());
      continue;
    }
    const double again = remeasure(p, 99);
    detail << target << "->" << format_fixed(p.measured_accuracy).substr(0, 5) << "/" << format_fixed(again).substr(0, 5)
           << " ";
    c.expect(std::abs(p.measured_accuracy - target) <= 0.05, "reported accuracy off for " + std::to_string(target));
    c.expect(std::abs(again - target) <= 0.05, "re-measured accuracy off for " + std::to_string(target));
  }
  return c.outcome("target->reported/re-measured " + detail.str());
}

// ---- 5, 6, 8: the game through the command line ----

const std::string kFootballFlags = "game --data football --budget 50 --targets 10 --seed 1 --attack-prob-grid 0,0.5,1";
const std::string kSmallFlags =
    "game --data football --budget 12 --targets 3 --seed 9 --detectors LV,HLC,CP --attack-prob-grid 0,0.5,1";

struct GameRun {
  int code = -1;
  fs::path dir;
  std::string log;
};

GameRun& football_run() {
  static GameRun run = [] {
    GameRun r;
    r.dir = work_dir() / "football";
    r.code = run_cli(kFootballFlags + " --out-dir " + r.dir.string(), work_dir() / "football.log");
    r.log = slurp(work_dir() / "football.log");
    return r;
  }();
  return run;
}

// Per-target strategy choice, per-detector choice and the mixture, checked
// from the persisted record alone.
void check_stackelberg(const json& rec, const std::string& tag, Checker& c) {
  const auto& dets = rec.at("detectors");
  std::vector<Q> means;
  for (const auto& d : dets) {
    const auto& targets = d.at("targets");
    std::int64_t sum = 0, base = 0;
    for (const auto& t : targets) {
      std::size_t best = 0;
      std::string first;
      for (const auto& s : t.at("strategies")) {
        if (!s.contains("evaluation")) continue;
        const auto& ranks = s.at("evaluation").at("rank");
        std::size_t m = 0;
        for (const auto& r : ranks) m = std::max(m, r.get<std::size_t>());
        c.expect(ranks.at(s.at("evaluation").at("best_prefix").get<std::size_t>()).get<std::size_t>() == m,
                 tag + ": best prefix is not the rank maximum");
        if (first.empty() || m > best) best = m, first = s.at("strategy").get<std::string>();
      }
      c.expect(t.at("max_rank").get<std::size_t>() == best, tag + ": max_rank is not the strategy maximum");
      c.expect(t.at("chosen_strategy").is_null() ? first.empty() : t.at("chosen_strategy") == first,
               tag + ": chosen strategy is not the first argmax");
      sum += static_cast<std::int64_t>(best);
      base += t.at("baseline_rank").get<std::int64_t>();
    }
    const auto n = static_cast<std::int64_t>(targets.size());
    means.push_back({sum, n});
    c.expect(q_eq(q_of(d.at("mean_rank_exact").get<std::string>()), {sum, n}), tag + ": mean rank");
  }
  std::size_t argmin = 0;
  for (std::size_t d = 1; d < means.size(); ++d)
    if (q_lt(means[d], means[argmin])) argmin = d;
  c.expect(rec.at("defender_choice") == dets.at(argmin).at("detector").at("kind"),
           tag + ": defender choice is not the mean-rank argmin");

  const auto& mixed = rec.at("mixed");
  c.expect(mixed.size() == 3, tag + ": expected a 3-point grid");
  if (mixed.size() != 3) return;
  const Q zero = q_of(mixed[0].at("p_exact")), one = q_of(mixed[2].at("p_exact"));
  c.expect(q_eq(zero, {0, 1}) && q_eq(one, {1, 1}), tag + ": grid must include 0 and 1");
  for (const auto& mp : mixed) {
    const Q p = q_of(mp.at("p_exact"));
    const Q not_p = q_add({1, 1}, q_mul({-1, 1}, p));
    std::size_t chosen = 0;
    for (std::size_t d = 0; d < dets.size(); ++d) {
      const Q obj = q_of(mp.at("objective_exact").at(d));
      const Q o0 = q_of(mixed[0].at("objective_exact").at(d)), o1 = q_of(mixed[2].at("objective_exact").at(d));
      c.expect(q_eq(obj, q_add(q_mul(p, o1), q_mul(not_p, o0))), tag + ": mixture identity");
      if (q_lt(obj, q_of(mp.at("objective_exact").at(chosen)))) chosen = d;
    }
    c.expect(mp.at("chosen") == dets.at(chosen).at("detector").at("kind"), tag + ": mixed choice is not the argmin");
  }
  c.expect(q_eq(q_of(mixed[2].at("objective_exact").at(argmin)), means[argmin]),
           tag + ": objective at p=1 is not the attacked mean");
}

Outcome football_headline() {
  const auto& run = football_run();
  if (run.code != 0) return {false, "game exited " + std::to_string(run.code) + ": " + last_line(work_dir() / "football.log")};
  const auto rec = read_json(run.dir / "record.json");
  std::map<std::string, double> mean;
  std::size_t ss_wins = 0, lv_targets = 0;
  for (const auto& d : rec.at("detectors")) {
    const auto kind = d.at("detector").at("kind").get<std::string>();
    mean[kind] = d.at("mean_rank").get<double>();
    if (kind == "LV")
      for (const auto& t : d.at("targets")) {
        ++lv_targets;
        ss_wins += t.at("chosen_strategy") == "SS";
      }
  }
  const auto choice = rec.at("defender_choice").get<std::string>();
  const double ratio = mean.at("LV") / mean.at("HLC");
  const bool a = ratio >= 1.5, b = is_overlapping(*parse_detector(choice)), c = 2 * ss_wins > lv_targets;
  std::ostringstream d;
  d << "LV " << format_fixed(mean.at("LV")).substr(0, 6) << " / HLC " << format_fixed(mean.at("HLC")).substr(0, 6)
    << " = " << format_fixed(ratio).substr(0, 4) << (a ? "" : " (< 1.5)") << "; defender " << choice
    << (b ? "" : " (not overlapping)") << "; SS best vs LV on " << ss_wins << "/" << lv_targets
    << (c ? "" : " (not a majority)");
  return {a && b && c, d.str()};
}

Outcome stackelberg_consistency() {
  Checker c;
  const auto& run = football_run();
  if (run.code != 0) return {false, "football game failed"};
  check_stackelberg(read_json(run.dir / "record.json"), "football", c);
  // A second record with a different detector set and seed.
  const auto small = work_dir() / "small_a";
  if (!fs::exists(small / "record.json"))
    c.expect(run_cli(kSmallFlags + " --out-dir " + small.string(), work_dir() / "small_a.log") == 0, "small game failed");
  if (fs::exists(small / "record.json")) check_stackelberg(read_json(small / "record.json"), "small", c);
  return c.outcome("football and a 3-detector record; mixture exact on p in {0, 1/2, 1}");
}

// ---- 7: EPA against the exhaustive optimum ----

Outcome epa_sanity() {
  testing::EpaFixture f;
  const Detector det(DetectorSpec{.kind = DetectorKind::Louvain, .seed = 1});
  const auto best = testing::exhaustive_best_rank(f.graph, f.target, det, f.temps, 2);
  EpaOptions opt{.population = 50, .generations = 20};
  int hits = 0;
  std::ostringstream ranks;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = epa_attack(f.graph, f.target, det, f.temps, 2, derive_seed(seed, "acceptance-epa"), {}, opt);
    hits += r.best_rank + 1 >= best;
    ranks << r.best_rank << (seed < 9 ? "," : "");
  }
  return {hits >= 9, std::to_string(hits) + "/10 seeds within 1 of optimum " + std::to_string(best) + " (ranks " +
                         ranks.str() + ")"};
}

// ---- 8: determinism and replay ----

Outcome determinism() {
  Checker c;
  const auto a = work_dir() / "small_a", b = work_dir() / "small_b";
  if (!fs::exists(a / "curves.csv"))
    c.expect(run_cli(kSmallFlags + " --out-dir " + a.string(), work_dir() / "small_a.log") == 0, "first run failed");
  c.expect(run_cli(kSmallFlags + " --out-dir " + b.string(), work_dir() / "small_b.log") == 0, "rerun failed");
  for (auto f : {"curves.csv", "mixed.csv", "record.json", "plans.json"})
    c.expect(!slurp(a / f).empty() && slurp(a / f) == slurp(b / f), std::string(f) + " differs between runs");
  std::size_t checks = 0;
  for (const auto& run : {a, football_run().dir}) {
    const auto log = work_dir() / ("replay_" + run.filename().string() + ".log");
    const int code = run_cli("replay " + (run / "manifest.json").string(), log);
    c.expect(code == 0, "replay of " + run.filename().string() + ": " + last_line(log));
    const auto line = last_line(log);
    if (code == 0 && line.rfind("all ", 0) == 0) checks += std::stoul(line.substr(4));
  }
  return c.outcome("byte-identical rerun; replay passed " + std::to_string(checks) + " plan checks");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"detector invariants", detector_invariants},
      {"swap identity", swap_identity},
      {"attribute calibration", attribute_calibration},
      {"football headline", football_headline},
      {"Stackelberg consistency", stackelberg_consistency},
      {"EPA sanity", epa_sanity},
      {"determinism", determinism},
  };
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all &= o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << " (" << std::fixed
              << std::setprecision(1) << secs << " s): " << o.detail << std::endl;
  }
  fs::remove_all(work_dir());
  return all ? 0 : 1;
}
