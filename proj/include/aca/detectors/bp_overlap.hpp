#pragma once

// Overlapping communities from a Bernoulli-Poisson edge model,
// Pr(u ~ v) = 1 - exp(-x_u . x_v), with non-negative memberships x fitted by
// projected gradient ascent on the balanced log-likelihood
//   (1/|E|) sum_{uv in E} log(1 - exp(-x_u.x_v)) - (1/|nonE|) sum_{uv not in E} x_u.x_v.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "aca/graph.hpp"
#include "aca/random.hpp"
#include "aca/triage.hpp"

namespace aca {

struct BpOverlapOptions {
  std::size_t dim = 0;  // 0: number of Louvain communities (resolved by the caller)
  std::size_t max_iterations = 500;
  double initial_step = 1.0;
  // Stop once `window` accepted steps together improve the objective by less
  // than this fraction of its magnitude.
  double tolerance = 1e-4;
  std::size_t window = 10;
  // Membership threshold; <= 0 means sqrt(-log(1 - 1/N)).
  double threshold = 0.0;
};

struct BpOverlapFit {
  CommunityCover cover;
  std::vector<double> memberships;  // row-major N x dim
  std::size_t dim = 0;
  std::vector<double> objective;    // accepted objective value per iteration
  double threshold = 0.0;
};

namespace detail {

class BernoulliPoisson {
 public:
  BernoulliPoisson(const Graph& g, std::size_t dim) : g_(g), dim_(dim) {
    const double n = static_cast<double>(g.node_count());
    edges_ = static_cast<double>(g.edge_count());
    non_edges_ = n * (n - 1.0) / 2.0 - edges_;
  }

  double objective(const std::vector<double>& x) const {
    double pos = 0.0;
    double within = 0.0;  // sum over edges of x_u.x_v
    for (auto [u, v] : g_.edges()) {
      const double s = dot(x, u, v);
      within += s;
      pos += log1mexp(s);
    }
    double neg = 0.0;
    if (non_edges_ > 0) {
      // sum over all unordered pairs of x_u.x_v = (|sum x|^2 - sum |x|^2) / 2
      std::vector<double> total(dim_, 0.0);
      double sq = 0.0;
      for (NodeId v = 0; v < g_.node_count(); ++v)
        for (std::size_t c = 0; c < dim_; ++c) {
          const double xv = x[v * dim_ + c];
          total[c] += xv;
          sq += xv * xv;
        }
      double all = 0.0;
      for (double t : total) all += t * t;
      neg = ((all - sq) / 2.0 - within) / non_edges_;
    }
    return (edges_ > 0 ? pos / edges_ : 0.0) - neg;
  }

  void gradient(const std::vector<double>& x, std::vector<double>& grad) const {
    grad.assign(x.size(), 0.0);
    const auto n = g_.node_count();
    std::vector<double> total(dim_, 0.0);
    for (NodeId v = 0; v < n; ++v)
      for (std::size_t c = 0; c < dim_; ++c) total[c] += x[v * dim_ + c];
    const double wpos = edges_ > 0 ? 1.0 / edges_ : 0.0;
    const double wneg = non_edges_ > 0 ? 1.0 / non_edges_ : 0.0;
    for (NodeId u = 0; u < n; ++u) {
      double* gu = &grad[u * dim_];
      // Non-edge term over all v != u, corrected below for neighbours.
      for (std::size_t c = 0; c < dim_; ++c) gu[c] -= wneg * (total[c] - x[u * dim_ + c]);
      for (NodeId v : g_.neighbors(u)) {
        const double s = dot(x, u, v);
        const double ratio = s > 0 ? std::exp(-s) / -std::expm1(-s) : 1e12;
        for (std::size_t c = 0; c < dim_; ++c) {
          const double xv = x[v * dim_ + c];
          gu[c] += wpos * ratio * xv + wneg * xv;
        }
      }
    }
  }

 private:
  double dot(const std::vector<double>& x, NodeId u, NodeId v) const {
    double s = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) s += x[u * dim_ + c] * x[v * dim_ + c];
    return s;
  }

  // log(1 - exp(-s)) for s >= 0, finite lower clamp at s = 0.
  static double log1mexp(double s) {
    s = std::max(s, 1e-12);
    return s < 0.693 ? std::log(-std::expm1(-s)) : std::log1p(-std::exp(-s));
  }

  const Graph& g_;
  std::size_t dim_;
  double edges_ = 0.0;
  double non_edges_ = 0.0;
};

// Seeds membership columns from low-conductance ego networks (locally
// minimal conductance, lowest first, skipping already covered centres).
inline std::vector<double> seed_memberships(const Graph& g, std::size_t dim, Rng& rng) {
  const auto n = g.node_count();
  const double volume = 2.0 * static_cast<double>(g.edge_count());
  std::vector<double> conductance(n, 1.0);
  for (NodeId v = 0; v < n; ++v) {
    std::vector<NodeId> ego(g.neighbors(v).begin(), g.neighbors(v).end());
    ego.insert(std::lower_bound(ego.begin(), ego.end(), v), v);
    double vol = 0.0, cut = 0.0;
    for (NodeId u : ego) {
      vol += static_cast<double>(g.degree(u));
      for (NodeId w : g.neighbors(u))
        if (!std::binary_search(ego.begin(), ego.end(), w)) cut += 1.0;
    }
    const double denom = std::min(vol, volume - vol);
    conductance[v] = denom > 0 ? cut / denom : 1.0;
  }
  std::vector<NodeId> candidates;
  for (NodeId v = 0; v < n; ++v) {
    bool local_min = g.degree(v) > 0;
    for (NodeId u : g.neighbors(v))
      if (conductance[u] < conductance[v]) local_min = false;
    if (local_min) candidates.push_back(v);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](NodeId a, NodeId b) { return conductance[a] < conductance[b]; });

  std::vector<double> x(n * dim);
  for (auto& xi : x) xi = 0.05 * rng.uniform();
  std::vector<char> covered(n, 0);
  std::size_t col = 0;
  for (NodeId v : candidates) {
    if (col == dim) break;
    if (covered[v]) continue;
    x[v * dim + col] = 1.0;
    covered[v] = 1;
    for (NodeId u : g.neighbors(v)) {
      x[u * dim + col] = 1.0;
      covered[u] = 1;
    }
    ++col;
  }
  // Remaining columns start from random ego networks.
  while (col < dim && n > 0) {
    NodeId v = static_cast<NodeId>(rng.below(n));
    x[v * dim + col] = 1.0;
    for (NodeId u : g.neighbors(v)) x[u * dim + col] = 1.0;
    ++col;
  }
  return x;
}

}  // namespace detail

inline BpOverlapFit bp_overlap_fit(const Graph& g, std::size_t dim, std::uint64_t seed,
                                   const BpOverlapOptions& opt = {}) {
  if (dim == 0) throw Error("bp_overlap: dimension must be at least 1");
  const auto n = g.node_count();
  Rng rng(seed);
  detail::BernoulliPoisson model(g, dim);
  auto x = detail::seed_memberships(g, dim, rng);

  BpOverlapFit fit;
  fit.dim = dim;
  double current = model.objective(x);
  if (!std::isfinite(current)) throw Error("bp_overlap: non-finite likelihood at initialisation");
  fit.objective.push_back(current);

  std::vector<double> grad, trial(x.size());
  double step = opt.initial_step;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    model.gradient(x, grad);
    // Normalised step keeps the first moves bounded whatever the scale.
    double gnorm = 0.0;
    for (double gi : grad) gnorm += gi * gi;
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-12) break;
    bool accepted = false;
    for (int halvings = 0; halvings < 30; ++halvings) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = std::max(0.0, x[i] + step * grad[i] / gnorm);
      const double value = model.objective(trial);
      if (!std::isfinite(value)) throw Error("bp_overlap: non-finite likelihood");
      if (value >= current) {
        x.swap(trial);
        current = value;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    fit.objective.push_back(current);
    step *= 1.2;
    const auto& obj = fit.objective;
    if (obj.size() > opt.window &&
        obj.back() - obj[obj.size() - 1 - opt.window] < opt.tolerance * std::abs(obj.back()))
      break;
  }

  const double rho = opt.threshold > 0
                         ? opt.threshold
                         : std::sqrt(-std::log(1.0 - 1.0 / static_cast<double>(std::max<std::size_t>(n, 2))));
  fit.threshold = rho;
  std::vector<Community> groups(dim);
  for (NodeId v = 0; v < n; ++v)
    for (std::size_t c = 0; c < dim; ++c)
      if (x[v * dim + c] >= rho) groups[c].push_back(v);
  fit.memberships = std::move(x);
  fit.cover = CommunityCover::from_sets(n, std::move(groups));
  return fit;
}

inline CommunityCover bp_overlap(const Graph& g, std::size_t dim, std::uint64_t seed,
                                 const BpOverlapOptions& opt = {}) {
  return bp_overlap_fit(g, dim, seed, opt).cover;
}

}  // namespace aca
