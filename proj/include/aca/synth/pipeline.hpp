#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "aca/spectral.hpp"
#include "aca/synth/attributes.hpp"
#include "aca/synth/generators.hpp"
#include "aca/synth/homophily.hpp"

namespace aca::synth {

struct PipelineOptions {
  // Labels are swapped until delta <= floor(homophily_fraction * initial delta).
  double homophily_fraction = 1.0;
  std::size_t max_swaps = 1'000'000;
  std::optional<double> attribute_accuracy = 0.9;  // unset: no attributes
  CurveParams curve;
  CalibrationParams calibration;
};

struct SyntheticDataset {
  SynthConfig config;
  PipelineOptions options;
  GeneratedGraph generated;
  LabelMap labels;  // on the largest component
  ReduceReport reduction;
  double heterophilicity = 0.0;
  std::optional<AttributeProfile> profile;
  AttributeMatrix attributes;

  const Graph& graph() const { return generated.lcc.graph; }
};

inline SyntheticDataset build_dataset(const SynthConfig& cfg, const PipelineOptions& opt = {}) {
  SyntheticDataset ds;
  ds.config = cfg;
  ds.options = opt;
  ds.generated = generate(cfg);
  const Graph& g = ds.graph();
  if (g.node_count() < 2) throw DataError("synth: largest component has fewer than two nodes");

  auto labels = laplacian_bisection(g, derive_seed(cfg.seed, "bisect"));
  const auto initial = delta_homophily(g, labels);
  const auto target = static_cast<std::int64_t>(std::floor(opt.homophily_fraction * static_cast<double>(initial)));
  Rng swap_rng(derive_seed(cfg.seed, "swap"));
  ds.reduction = reduce_homophily(g, std::move(labels), target, opt.max_swaps, swap_rng);
  ds.labels = ds.reduction.labels;
  ds.heterophilicity = aca::heterophilicity(g, ds.labels);

  if (opt.attribute_accuracy) {
    ds.profile = build_attribute_profile(*opt.attribute_accuracy, derive_seed(cfg.seed, "profile"), opt.curve,
                                         opt.calibration);
    ds.attributes = generate_attributes(ds.labels, *ds.profile, derive_seed(cfg.seed, "attrs"));
  }
  return ds;
}

inline nlohmann::json to_json(const ModelParams& p) {
  return {{"ws_k", p.ws_k},
          {"ws_beta", p.ws_beta},
          {"ba_m", p.ba_m},
          {"lfr_tau1", p.lfr_tau1},
          {"lfr_tau2", p.lfr_tau2},
          {"lfr_mu", p.lfr_mu},
          {"lfr_min_community", p.lfr_min_community},
          {"lfr_max_community", p.lfr_max_community},
          {"lfr_max_degree", p.lfr_max_degree},
          {"mag_attributes", p.mag_attributes},
          {"mag_affinity", p.mag_affinity},
          {"mag_attribute_prob", p.mag_attribute_prob}};
}

inline nlohmann::json dataset_meta(const SyntheticDataset& ds) {
  const auto& g = ds.graph();
  nlohmann::json meta = {
      {"config",
       {{"model", model_name(ds.config.model)},
        {"n", ds.config.n},
        {"avg_degree", ds.config.avg_degree},
        {"seed", ds.config.seed},
        {"params", to_json(ds.config.params)},
        {"homophily_fraction", ds.options.homophily_fraction},
        {"max_swaps", ds.options.max_swaps}}},
      {"raw", {{"nodes", ds.generated.raw.node_count()},
               {"edges", ds.generated.raw.edge_count()},
               {"avg_degree", ds.generated.raw_avg_degree()}}},
      {"graph", {{"nodes", g.node_count()}, {"edges", g.edge_count()}}},
      {"labels",
       {{"initial_delta", ds.reduction.initial_delta},
        {"achieved_delta", ds.reduction.achieved_delta},
        {"swaps", ds.reduction.swaps},
        {"target_reached", ds.reduction.reached},
        {"heterophilicity", ds.heterophilicity}}},
  };
  if (ds.profile) {
    meta["attributes"] = {{"target_accuracy", ds.profile->target_accuracy},
                          {"glrt_accuracy", ds.profile->measured_accuracy},
                          {"shift", ds.profile->shift},
                          {"experimental", ds.profile->experimental},
                          {"p_max", ds.options.curve.p_max},
                          {"lambda", ds.options.curve.lambda},
                          {"width", ds.profile->base_probs.size()},
                          {"rows", ds.attributes.rows},
                          {"cols", ds.attributes.cols}};
  }
  return meta;
}

inline void write_labels_csv(std::ostream& out, const LabelMap& labels) {
  out << "node,label\n";
  for (std::size_t v = 0; v < labels.size(); ++v) out << v << ',' << static_cast<int>(labels[v]) << '\n';
}

// graph.edges, labels.csv, attrs.bin (when attributes exist) and meta.json.
inline void write_bundle(const std::filesystem::path& dir, const SyntheticDataset& ds) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name, std::ios::openmode mode = std::ios::out) {
    std::ofstream f(dir / name, mode);
    if (!f) throw Error(std::string("cannot write ") + (dir / name).string());
    return f;
  };
  {
    auto f = open("graph.edges");
    write_edge_list(f, ds.graph());
  }
  {
    auto f = open("labels.csv");
    write_labels_csv(f, ds.labels);
  }
  if (ds.profile) {
    auto f = open("attrs.bin", std::ios::out | std::ios::binary);
    ds.attributes.write(f);
  }
  auto f = open("meta.json");
  f << dataset_meta(ds).dump(2) << '\n';
}

}  // namespace aca::synth
