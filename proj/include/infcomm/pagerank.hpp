#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "infcomm/error.hpp"
#include "infcomm/graph.hpp"

namespace infcomm {

struct PageRankOptions {
  double damping = 0.85;
  double tol = 1e-10;
  std::size_t max_iter = 200;
};

/// PageRank by power iteration over the undirected graph (every edge is a
/// transition in both directions). Teleport is uniform and the mass of
/// isolated vertices is spread uniformly. Stops when the L1 change between
/// iterates drops below `tol` or after `max_iter` rounds.
inline std::vector<double> pagerank(const WeightedGraph& g, const PageRankOptions& opt = {}) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  if (!(opt.damping > 0.0 && opt.damping < 1.0)) throw DomainError("damping must lie in (0,1)");
  if (!(opt.tol > 0.0)) throw DomainError("tolerance must be positive");

  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n), next(n);
  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    double dangling = 0.0;
    for (VertexId v = 0; v < n; ++v) {
      if (g.degree(v) == 0) dangling += rank[v];
    }
    const double base = (1.0 - opt.damping) * inv_n + opt.damping * dangling * inv_n;
    std::fill(next.begin(), next.end(), base);
    for (VertexId v = 0; v < n; ++v) {
      const std::size_t d = g.degree(v);
      if (d == 0) continue;
      const double share = opt.damping * rank[v] / static_cast<double>(d);
      for (VertexId u : g.neighbors(v)) next[u] += share;
    }
    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) delta += std::abs(next[v] - rank[v]);
    rank.swap(next);
    if (delta < opt.tol) break;
  }
  return rank;
}

inline std::vector<double> pagerank(const WeightedGraph& g, double damping, double tol, std::size_t max_iter) {
  return pagerank(g, PageRankOptions{damping, tol, max_iter});
}

}  // namespace infcomm
