#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aca/detectors/bp_overlap.hpp"
#include "aca/detectors/clique_percolation.hpp"
#include "aca/detectors/hlc.hpp"
#include "aca/detectors/leiden.hpp"
#include "aca/detectors/louvain.hpp"
#include "aca/detectors/umst.hpp"

namespace aca {

enum class DetectorKind { Louvain, Leiden, CliquePercolation, Hlc, Umst, BpOverlap };

inline constexpr std::array kAllDetectors = {DetectorKind::Louvain, DetectorKind::Leiden,
                                             DetectorKind::CliquePercolation, DetectorKind::Hlc,
                                             DetectorKind::Umst, DetectorKind::BpOverlap};

// Short names used on the command line and in output files.
inline std::string_view detector_name(DetectorKind k) {
  switch (k) {
    case DetectorKind::Louvain: return "LV";
    case DetectorKind::Leiden: return "LD";
    case DetectorKind::CliquePercolation: return "CP";
    case DetectorKind::Hlc: return "HLC";
    case DetectorKind::Umst: return "UMST";
    case DetectorKind::BpOverlap: return "BPOverlap";
  }
  return "?";
}

inline std::optional<DetectorKind> parse_detector(std::string_view s) {
  for (auto k : kAllDetectors) {
    auto name = detector_name(k);
    if (s.size() == name.size() &&
        std::equal(s.begin(), s.end(), name.begin(), [](char a, char b) { return std::tolower(a) == std::tolower(b); }))
      return k;
  }
  if (s == "louvain") return DetectorKind::Louvain;
  if (s == "leiden") return DetectorKind::Leiden;
  if (s == "nocd" || s == "NOCD" || s == "bp") return DetectorKind::BpOverlap;
  return std::nullopt;
}

inline bool is_overlapping(DetectorKind k) {
  return k == DetectorKind::CliquePercolation || k == DetectorKind::Hlc || k == DetectorKind::Umst ||
         k == DetectorKind::BpOverlap;
}

struct DetectorSpec {
  DetectorKind kind = DetectorKind::Louvain;
  std::size_t cp_k = 3;
  std::optional<double> hlc_threshold;  // unset: partition-density cut
  double umst_merge = 0.5;
  std::size_t bp_dim = 0;  // 0: Louvain community count on the input graph
  double bp_threshold = 0.0;
  std::size_t bp_iterations = 500;
  std::uint64_t seed = 0;

  std::string name() const { return std::string(detector_name(kind)); }
};

// Opaque handle the attacker queries: a pure function from graph to cover
// for a fixed spec and seed.
class Detector {
 public:
  explicit Detector(DetectorSpec spec) : spec_(spec) {}

  const DetectorSpec& spec() const { return spec_; }
  std::string name() const { return spec_.name(); }

  CommunityCover operator()(const Graph& g) const { return run(g, spec_.seed); }

  CommunityCover run(const Graph& g, std::uint64_t seed) const {
    switch (spec_.kind) {
      case DetectorKind::Louvain:
        return louvain(g, seed);
      case DetectorKind::Leiden:
        return leiden(g, seed);
      case DetectorKind::CliquePercolation:
        return clique_percolation(g, spec_.cp_k);
      case DetectorKind::Hlc:
        return hlc(g, spec_.hlc_threshold);
      case DetectorKind::Umst:
        if (!is_connected(g)) return umst_on_components(g);
        return umst_method(g, spec_.umst_merge);
      case DetectorKind::BpOverlap: {
        std::size_t dim = spec_.bp_dim;
        if (dim == 0) dim = std::max<std::size_t>(1, louvain(g, seed).size());
        BpOverlapOptions opt;
        opt.threshold = spec_.bp_threshold;
        opt.max_iterations = spec_.bp_iterations;
        return bp_overlap(g, dim, seed, opt);
      }
    }
    throw Error("unknown detector");
  }

 private:
  // UMST needs a connected graph; run it per component and stitch.
  CommunityCover umst_on_components(const Graph& g) const {
    std::size_t k = 0;
    auto comp = connected_components(g, &k);
    std::vector<std::vector<NodeId>> members(k);
    for (NodeId v = 0; v < g.node_count(); ++v) members[comp[v]].push_back(v);
    std::vector<Community> all;
    for (auto& m : members) {
      auto sub = induced_subgraph(g, m);
      auto cover = umst_method(sub.graph, spec_.umst_merge);
      for (const auto& c : cover.communities()) {
        Community mapped;
        for (NodeId v : c) mapped.push_back(sub.original[v]);
        all.push_back(std::move(mapped));
      }
    }
    return CommunityCover::from_sets(g.node_count(), std::move(all));
  }

  DetectorSpec spec_;
};

}  // namespace aca
