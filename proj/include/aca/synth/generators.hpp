#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "aca/common.hpp"
#include "aca/graph.hpp"
#include "aca/random.hpp"

namespace aca::synth {

enum class GraphModel { ER, WS, BA, LFR, MAG };

inline std::string_view model_name(GraphModel m) {
  switch (m) {
    case GraphModel::ER: return "er";
    case GraphModel::WS: return "ws";
    case GraphModel::BA: return "ba";
    case GraphModel::LFR: return "lfr";
    case GraphModel::MAG: return "mag";
  }
  return "?";
}

inline std::optional<GraphModel> parse_model(std::string_view s) {
  for (auto m : {GraphModel::ER, GraphModel::WS, GraphModel::BA, GraphModel::LFR, GraphModel::MAG}) {
    auto name = model_name(m);
    if (s.size() == name.size() &&
        std::equal(s.begin(), s.end(), name.begin(), [](char a, char b) { return std::tolower(a) == b; }))
      return m;
  }
  return std::nullopt;
}

// Zero means "derive from the average degree".
struct ModelParams {
  std::size_t ws_k = 0;  // lattice degree, rounded down to even
  double ws_beta = 0.1;
  std::size_t ba_m = 0;
  double lfr_tau1 = 2.5;
  double lfr_tau2 = 1.5;
  double lfr_mu = 0.1;
  std::size_t lfr_min_community = 20;
  std::size_t lfr_max_community = 100;
  std::size_t lfr_max_degree = 0;  // 0: 5 x average degree
  std::size_t mag_attributes = 8;
  std::array<double, 4> mag_affinity = {0.85, 0.55, 0.55, 0.15};  // row-major 2x2
  double mag_attribute_prob = 0.5;
};

struct SynthConfig {
  GraphModel model = GraphModel::ER;
  std::size_t n = 4000;
  double avg_degree = 10.0;
  ModelParams params;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 4) throw UsageError("synth: n must be at least 4");
    if (!(avg_degree > 0) || avg_degree >= static_cast<double>(n - 1))
      throw UsageError("synth: avg_degree must lie in (0, n-1)");
  }
};

struct GeneratedGraph {
  Graph raw;      // before taking the largest component
  Subgraph lcc;   // what the experiments use
  std::vector<std::uint32_t> planted;  // LFR community per raw node; empty otherwise
  double raw_avg_degree() const {
    return raw.node_count() ? 2.0 * static_cast<double>(raw.edge_count()) / static_cast<double>(raw.node_count())
                            : 0.0;
  }
};

// G(n, p) by geometric skipping over the pairs in row order.
inline Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> e;
  if (p <= 0) return Graph(n, e);
  if (p >= 1) {
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b) e.emplace_back(a, b);
    return Graph(n, e);
  }
  const double lq = std::log1p(-p);
  std::int64_t v = 1, w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = 1.0 - rng.uniform();  // (0, 1]
    w += 1 + static_cast<std::int64_t>(std::floor(std::log(r) / lq));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) e.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return Graph(n, e);
}

// Ring lattice with k/2 neighbours per side; each lattice edge (u, u+j) is
// rewired with probability beta to a uniform endpoint that keeps the graph
// simple (left in place when u is already saturated).
inline Graph watts_strogatz(std::size_t n, std::size_t k, double beta, Rng& rng) {
  k -= k % 2;
  if (k == 0 || k >= n) throw UsageError("ws: lattice degree must be even and below n");
  std::vector<std::unordered_set<NodeId>> adj(n);
  auto link = [&](NodeId a, NodeId b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };
  for (NodeId u = 0; u < n; ++u)
    for (std::size_t j = 1; j <= k / 2; ++j) link(u, static_cast<NodeId>((u + j) % n));
  if (beta > 0) {
    for (std::size_t j = 1; j <= k / 2; ++j)
      for (NodeId u = 0; u < n; ++u) {
        if (!rng.bernoulli(beta)) continue;
        const auto v = static_cast<NodeId>((u + j) % n);
        if (!adj[u].count(v) || adj[u].size() >= n - 1) continue;
        NodeId w;
        do w = static_cast<NodeId>(rng.below(n));
        while (w == u || adj[u].count(w));
        adj[u].erase(v);
        adj[v].erase(u);
        link(u, w);
      }
  }
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : adj[u])
      if (u < v) e.emplace_back(u, v);
  return Graph(n, e);
}

// Preferential attachment from an m-clique seed: |E| = C(m,2) + m (n - m).
inline Graph barabasi_albert(std::size_t n, std::size_t m, Rng& rng) {
  if (m < 1 || m >= n) throw UsageError("ba: m must lie in [1, n)");
  std::vector<Edge> e;
  std::vector<NodeId> repeated;  // node listed once per incident edge end
  for (NodeId a = 0; a < m; ++a)
    for (NodeId b = a + 1; b < m; ++b) {
      e.emplace_back(a, b);
      repeated.push_back(a);
      repeated.push_back(b);
    }
  if (m == 1) repeated.push_back(0);
  std::vector<NodeId> chosen;
  for (auto v = static_cast<NodeId>(m); v < n; ++v) {
    chosen.clear();
    while (chosen.size() < m) {
      NodeId t = repeated[rng.below(repeated.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    std::sort(chosen.begin(), chosen.end());
    for (NodeId t : chosen) {
      e.emplace_back(t, v);
      repeated.push_back(t);
      repeated.push_back(v);
    }
  }
  return Graph(n, e);
}

namespace detail {

// Sample from the continuous power law x^-tau on [lo, hi].
inline double power_law_sample(double tau, double lo, double hi, Rng& rng) {
  const double a = std::pow(lo, 1.0 - tau), b = std::pow(hi, 1.0 - tau);
  return std::pow(a + (b - a) * rng.uniform(), 1.0 / (1.0 - tau));
}

inline double power_law_mean(double tau, double lo, double hi) {
  if (std::abs(tau - 2.0) < 1e-12) return (std::log(hi) - std::log(lo)) / (1.0 / lo - 1.0 / hi);
  return (tau - 1.0) / (tau - 2.0) * (std::pow(lo, 2.0 - tau) - std::pow(hi, 2.0 - tau)) /
         (std::pow(lo, 1.0 - tau) - std::pow(hi, 1.0 - tau));
}

// Pairs the stubs at random. Pairs that would form a self-loop, repeat an
// edge or fail `allowed` go back into the pool for another round; stubs
// still unmatched after the rounds are dropped.
template <typename Allowed>
void pair_stubs(std::vector<NodeId>& stubs, Rng& rng, std::vector<Edge>& out, Allowed&& allowed) {
  std::unordered_set<std::uint64_t> seen;
  for (auto e : out) seen.insert(edge_key(e.first, e.second));
  std::vector<NodeId> rejected;
  for (int round = 0; round < 20 && stubs.size() > 1; ++round) {
    rng.shuffle(stubs);
    rejected.clear();
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      const NodeId a = stubs[i], b = stubs[i + 1];
      if (a != b && allowed(a, b) && seen.insert(edge_key(a, b)).second) {
        out.push_back(make_edge(a, b));
      } else {
        rejected.push_back(a);
        rejected.push_back(b);
      }
    }
    stubs.swap(rejected);
  }
}

}  // namespace detail

struct LfrGraph {
  Graph graph;
  std::vector<std::uint32_t> community;
};

// LFR-style benchmark: power-law degrees (tau1) and community sizes (tau2),
// a fraction mu of each node's stubs wired outside its community, both
// layers by configuration-model pairing.
inline LfrGraph lfr(std::size_t n, double avg_degree, const ModelParams& p, Rng& rng) {
  const double kmax = static_cast<double>(p.lfr_max_degree ? p.lfr_max_degree
                                                           : static_cast<std::size_t>(std::lround(5 * avg_degree)));
  if (kmax <= avg_degree) throw UsageError("lfr: lfr_max_degree must exceed the average degree");
  if (p.lfr_min_community > p.lfr_max_community || p.lfr_max_community > n)
    throw UsageError("lfr: community size bounds invalid (lfr_min_community / lfr_max_community)");
  if (!(p.lfr_mu >= 0 && p.lfr_mu <= 1)) throw UsageError("lfr: lfr_mu must lie in [0, 1]");
  // Lower degree bound for the requested mean.
  double lo = 1.0, hi = avg_degree;
  if (detail::power_law_mean(p.lfr_tau1, lo, kmax) > avg_degree)
    throw UsageError("lfr: average degree unreachable with lfr_tau1 and lfr_max_degree");
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (detail::power_law_mean(p.lfr_tau1, mid, kmax) < avg_degree ? lo : hi) = mid;
  }
  const double kmin = 0.5 * (lo + hi);

  std::vector<std::size_t> degree(n), internal(n);
  std::size_t total = 0;
  for (auto& d : degree) {
    d = static_cast<std::size_t>(std::lround(detail::power_law_sample(p.lfr_tau1, kmin, kmax, rng)));
    total += d;
  }
  if (total % 2) ++degree[rng.below(n)];
  for (std::size_t v = 0; v < n; ++v)
    internal[v] = static_cast<std::size_t>(std::lround((1.0 - p.lfr_mu) * static_cast<double>(degree[v])));
  const auto max_internal = *std::max_element(internal.begin(), internal.end());
  if (max_internal >= p.lfr_max_community)
    throw UsageError("lfr: internal degree exceeds lfr_max_community; lower lfr_max_degree or raise lfr_max_community");

  for (int attempt = 0; attempt < 50; ++attempt) {
    // Community sizes summing to n.
    std::vector<std::size_t> sizes;
    std::size_t sum = 0;
    while (sum < n) {
      auto s = static_cast<std::size_t>(std::lround(detail::power_law_sample(
          p.lfr_tau2, static_cast<double>(p.lfr_min_community), static_cast<double>(p.lfr_max_community), rng)));
      sizes.push_back(s);
      sum += s;
    }
    std::size_t excess = sum - n;
    for (std::size_t i = 0; excess > 0 && i < 4 * sizes.size(); ++i) {
      auto& s = sizes[i % sizes.size()];
      const auto cut = std::min(excess, s - p.lfr_min_community);
      s -= cut;
      excess -= cut;
    }
    if (excess > 0) continue;
    if (*std::max_element(sizes.begin(), sizes.end()) <= max_internal) continue;

    // Largest internal degree first, into a random community large enough.
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return internal[a] > internal[b]; });
    std::vector<std::size_t> room = sizes;
    std::vector<std::uint32_t> community(n);
    bool ok = true;
    std::vector<std::uint32_t> fits;
    for (NodeId v : order) {
      fits.clear();
      for (std::uint32_t c = 0; c < sizes.size(); ++c)
        if (room[c] > 0 && sizes[c] > internal[v]) fits.push_back(c);
      if (fits.empty()) {
        ok = false;
        break;
      }
      const auto c = fits[rng.below(fits.size())];
      community[v] = c;
      --room[c];
    }
    if (!ok) continue;

    std::vector<Edge> e;
    std::vector<std::vector<NodeId>> stubs(sizes.size());
    std::vector<NodeId> outer;
    for (NodeId v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < internal[v]; ++i) stubs[community[v]].push_back(v);
      for (std::size_t i = internal[v]; i < degree[v]; ++i) outer.push_back(v);
    }
    for (auto& s : stubs) detail::pair_stubs(s, rng, e, [](NodeId, NodeId) { return true; });
    detail::pair_stubs(outer, rng, e, [&](NodeId a, NodeId b) { return community[a] != community[b]; });
    return {Graph(n, e), std::move(community)};
  }
  throw UsageError("lfr: could not place nodes into communities; check lfr_min_community / lfr_max_community");
}

// Multiplicative attribute graph: L binary attributes per node, edge
// probability c * prod_l theta[a_ul][a_vl] with c chosen so the expected
// average degree matches.
inline Graph multiplicative_attribute_graph(std::size_t n, double avg_degree, const ModelParams& p, Rng& rng) {
  const auto levels = p.mag_attributes;
  if (levels == 0 || levels > 20) throw UsageError("mag: mag_attributes must lie in [1, 20]");
  const std::size_t patterns = std::size_t{1} << levels;
  std::vector<std::uint32_t> code(n);
  std::vector<std::size_t> count(patterns, 0);
  for (auto& c : code) {
    c = 0;
    for (std::size_t l = 0; l < levels; ++l)
      if (rng.bernoulli(p.mag_attribute_prob)) c |= 1u << l;
    ++count[c];
  }
  auto base = [&](std::uint32_t a, std::uint32_t b) {
    double w = 1.0;
    for (std::size_t l = 0; l < levels; ++l) w *= p.mag_affinity[((a >> l) & 1u) * 2 + ((b >> l) & 1u)];
    return w;
  };
  std::vector<double> weight(patterns * patterns);
  for (std::uint32_t a = 0; a < patterns; ++a)
    for (std::uint32_t b = 0; b < patterns; ++b) weight[a * patterns + b] = base(a, b);
  auto expected_edges = [&](double c) {
    double s = 0.0;
    for (std::uint32_t a = 0; a < patterns; ++a) {
      if (!count[a]) continue;
      for (std::uint32_t b = a; b < patterns; ++b) {
        if (!count[b]) continue;
        const double pairs = a == b ? 0.5 * static_cast<double>(count[a]) * static_cast<double>(count[a] - 1)
                                    : static_cast<double>(count[a]) * static_cast<double>(count[b]);
        s += pairs * std::min(1.0, c * weight[a * patterns + b]);
      }
    }
    return s;
  };
  const double target = avg_degree * static_cast<double>(n) / 2.0;
  double lo = 0.0, hi = 1.0;
  while (expected_edges(hi) < target && hi < 1e12) hi *= 2;
  if (expected_edges(hi) < target) throw UsageError("mag: target density unreachable with mag_affinity");
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (expected_edges(mid) < target ? lo : hi) = mid;
  }
  const double c = 0.5 * (lo + hi);
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.bernoulli(std::min(1.0, c * weight[code[u] * patterns + code[v]]))) e.emplace_back(u, v);
  return Graph(n, e);
}

// Runs the configured generator and takes the largest connected component.
inline GeneratedGraph generate(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(derive_seed(cfg.seed, "synth", static_cast<std::uint64_t>(cfg.model)));
  GeneratedGraph out;
  const auto& p = cfg.params;
  switch (cfg.model) {
    case GraphModel::ER:
      out.raw = erdos_renyi(cfg.n, cfg.avg_degree / static_cast<double>(cfg.n - 1), rng);
      break;
    case GraphModel::WS:
      out.raw = watts_strogatz(cfg.n, p.ws_k ? p.ws_k : static_cast<std::size_t>(std::lround(cfg.avg_degree)),
                               p.ws_beta, rng);
      break;
    case GraphModel::BA:
      out.raw = barabasi_albert(
          cfg.n, p.ba_m ? p.ba_m : std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(cfg.avg_degree / 2))),
          rng);
      break;
    case GraphModel::LFR: {
      auto l = lfr(cfg.n, cfg.avg_degree, p, rng);
      out.raw = std::move(l.graph);
      out.planted = std::move(l.community);
      break;
    }
    case GraphModel::MAG:
      out.raw = multiplicative_attribute_graph(cfg.n, cfg.avg_degree, p, rng);
      break;
  }
  out.lcc = largest_connected_component(out.raw);
  return out;
}

}  // namespace aca::synth
