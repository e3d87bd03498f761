#pragma once

// Symmetric Lanczos with full reorthogonalisation, used for the normalised
// adjacency S = D^{-1/2} A D^{-1/2} of a graph. Only the small tridiagonal
// projection is handed to Eigen.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "aca/common.hpp"
#include "aca/graph.hpp"
#include "aca/random.hpp"
#include "aca/triage.hpp"

namespace aca {

enum class Spectrum { LargestAlgebraic, LargestMagnitude };

struct EigenPairs {
  std::vector<double> values;               // ordered by the requested criterion
  std::vector<std::vector<double>> vectors;  // unit 2-norm
  std::size_t krylov_dimension = 0;
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline double normalize(std::vector<double>& x) {
  const double nrm = std::sqrt(dot(x, x));
  if (nrm > 0)
    for (auto& xi : x) xi /= nrm;
  return nrm;
}

// Removes the components of x along each (orthonormal) vector of `basis`.
inline void orthogonalize(std::vector<double>& x, std::span<const std::vector<double>> basis) {
  for (const auto& q : basis) axpy(-dot(x, q), q, x);
}

}  // namespace detail

// k extremal eigenpairs of the symmetric operator `op` restricted to the
// orthogonal complement of `deflate` (orthonormal). The Krylov space grows
// until every selected Ritz pair has residual ||op(y) - theta y|| <= tol.
template <typename MatVec>
EigenPairs lanczos(std::size_t n, MatVec&& op, std::size_t k, Spectrum which, std::uint64_t seed,
                   std::span<const std::vector<double>> deflate = {}, double tol = 1e-8) {
  const std::size_t space = n - std::min(n, deflate.size());
  if (k == 0 || space == 0) return {};
  k = std::min(k, space);

  Rng rng(seed);
  auto random_start = [&] {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    return v;
  };

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;  // beta[j] couples basis j and j+1
  std::vector<double> w(n);

  auto extend_to = [&](std::size_t m) {
    while (basis.size() < m) {
      std::vector<double> q;
      if (basis.empty() || beta.back() == 0.0) {
        // Fresh direction: the start, or after an invariant subspace.
        for (int attempt = 0;; ++attempt) {
          q = random_start();
          for (int pass = 0; pass < 2; ++pass) {
            detail::orthogonalize(q, deflate);
            detail::orthogonalize(q, basis);
          }
          if (detail::normalize(q) > 1e-8) break;
          if (attempt > 20) throw ConvergenceError("lanczos: could not extend the Krylov basis");
        }
      } else {
        q = w;
        for (auto& x : q) x /= beta.back();
      }
      basis.push_back(std::move(q));
      const auto& qj = basis.back();
      op(std::span<const double>(qj), std::span<double>(w));
      const double a = detail::dot(w, qj);
      alpha.push_back(a);
      for (int pass = 0; pass < 2; ++pass) {
        detail::orthogonalize(w, deflate);
        detail::orthogonalize(w, basis);
      }
      double b = std::sqrt(detail::dot(w, w));
      if (b < 1e-12 || basis.size() == space) b = 0.0;
      beta.push_back(b);
    }
  };

  std::size_t m = std::min(space, std::max<std::size_t>(2 * k + 20, 40));
  std::vector<double> residual_work(n);
  for (;;) {
    extend_to(m);
    const auto dim = basis.size();
    Eigen::VectorXd diag(dim), sub(dim > 0 ? dim - 1 : 0);
    for (std::size_t i = 0; i < dim; ++i) diag[i] = alpha[i];
    for (std::size_t i = 0; i + 1 < dim; ++i) sub[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (tri.info() != Eigen::Success) throw ConvergenceError("lanczos: tridiagonal eigensolver failed");

    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    const auto& theta = tri.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (which == Spectrum::LargestAlgebraic) return theta[a] > theta[b];
      return std::abs(theta[a]) > std::abs(theta[b]);
    });

    EigenPairs out;
    out.krylov_dimension = dim;
    bool converged = true;
    for (std::size_t r = 0; r < k; ++r) {
      const auto col = order[r];
      std::vector<double> y(n, 0.0);
      for (std::size_t j = 0; j < dim; ++j) detail::axpy(tri.eigenvectors()(j, col), basis[j], y);
      detail::normalize(y);
      op(std::span<const double>(y), std::span<double>(residual_work));
      detail::orthogonalize(residual_work, deflate);
      detail::axpy(-theta[col], y, residual_work);
      if (std::sqrt(detail::dot(residual_work, residual_work)) > tol) converged = false;
      out.values.push_back(theta[col]);
      out.vectors.push_back(std::move(y));
    }
    if (converged) return out;
    if (dim == space) throw ConvergenceError("lanczos: residual above tolerance with a full Krylov basis");
    m = std::min(space, m + std::max<std::size_t>(20, m / 2));
  }
}

// y = D^{-1/2} A D^{-1/2} x for an overlay or graph exposing degree/neighbors.
template <typename G>
auto normalized_adjacency_operator(const G& g) {
  std::vector<double> inv_sqrt(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto d = static_cast<double>(g.degree(v));
    inv_sqrt[v] = d > 0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  return [&g, inv_sqrt = std::move(inv_sqrt)](std::span<const double> x, std::span<double> y) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      double s = 0.0;
      for (NodeId u : g.neighbors(v)) s += inv_sqrt[u] * x[u];
      y[v] = inv_sqrt[v] * s;
    }
  };
}

// Eigenvector of the second-smallest eigenvalue of I - D^{-1/2} A D^{-1/2},
// sign fixed so that the entry of node 0 is <= 0.
inline std::vector<double> fiedler_vector(const Graph& g, std::uint64_t seed = 0, double tol = 1e-8) {
  if (g.node_count() < 2) throw Error("fiedler_vector: need at least two nodes");
  if (!is_connected(g)) throw Error("fiedler_vector: graph must be connected");
  const auto n = g.node_count();
  std::vector<std::vector<double>> trivial(1, std::vector<double>(n));
  for (NodeId v = 0; v < n; ++v) trivial[0][v] = std::sqrt(static_cast<double>(g.degree(v)));
  detail::normalize(trivial[0]);
  auto pairs = lanczos(n, normalized_adjacency_operator(g), 1, Spectrum::LargestAlgebraic, seed, trivial, tol);
  auto u = std::move(pairs.vectors.at(0));
  if (u[0] > 0)
    for (auto& x : u) x = -x;
  return u;
}

// The floor(N/2) nodes with the smallest Fiedler entries get label 0 (ties
// by node id); the rest, including the extra node for odd N, get label 1.
inline LabelMap laplacian_bisection(const Graph& g, std::uint64_t seed = 0) {
  const auto u = fiedler_vector(g, seed);
  const auto n = g.node_count();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return u[a] < u[b]; });
  LabelMap labels(n, 1);
  for (std::size_t i = 0; i < n / 2; ++i) labels[order[i]] = 0;
  return labels;
}

// Generalised eigenpairs A x = lambda D x with the `dim` largest |lambda|,
// returned with D-orthonormal vectors (x^T D x = 1). Isolated nodes get
// zero entries.
template <typename G>
EigenPairs generalized_adjacency_eigenpairs(const G& g, std::size_t dim, std::uint64_t seed = 0) {
  auto pairs = lanczos(g.node_count(), normalized_adjacency_operator(g), dim, Spectrum::LargestMagnitude, seed);
  for (auto& v : pairs.vectors)
    for (NodeId i = 0; i < g.node_count(); ++i) {
      const auto d = static_cast<double>(g.degree(i));
      v[i] = d > 0 ? v[i] / std::sqrt(d) : 0.0;
    }
  return pairs;
}

}  // namespace aca
