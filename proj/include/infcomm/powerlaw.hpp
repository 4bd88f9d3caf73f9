#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "infcomm/error.hpp"
#include "infcomm/graph.hpp"

namespace infcomm {

struct PowerLawSpec {
  std::size_t n = 1000;
  double gamma = 2.5;
  std::uint32_t min_degree = 1;
  std::uint64_t seed = 0;
};

namespace detail {

inline void check_gamma(double gamma) {
  if (!(gamma > 2.0 && gamma < 3.0)) throw DomainError("gamma must lie in (2,3)");
}

/// Uniform double in [0,1) from the top 53 bits, identical on every platform
/// (std::uniform_real_distribution is implementation-defined).
inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Expected degree of each vertex: min_degree * (n / i)^(1/(gamma-1)) for
/// i = 1..n, capped at sqrt of the total.
inline std::vector<double> powerlaw_target_degrees(const PowerLawSpec& spec) {
  detail::check_gamma(spec.gamma);
  std::vector<double> d(spec.n);
  const double expo = 1.0 / (spec.gamma - 1.0);
  for (std::size_t i = 0; i < spec.n; ++i) {
    d[i] = spec.min_degree * std::pow(static_cast<double>(spec.n) / static_cast<double>(i + 1), expo);
  }
  double total = 0.0;
  for (double x : d) total += x;
  const double cap = std::sqrt(total);
  for (double& x : d) x = std::min(x, cap);
  return d;
}

/// Chung-Lu random graph: edge (u,v) appears independently with probability
/// min(1, d_u d_v / sum d). Pairs are visited with geometric skips over the
/// degree-sorted order, so the cost is O(n + m). Labels are 0..n-1 and
/// weights are uniform [0,1) draws that follow the edge draws in the same
/// stream.
inline WeightedGraph generate_powerlaw(const PowerLawSpec& spec) {
  detail::check_gamma(spec.gamma);
  if (spec.n < 2) throw DomainError("power-law graph needs at least 2 vertices");
  if (spec.min_degree < 1) throw DomainError("min_degree must be at least 1");

  const auto d = powerlaw_target_degrees(spec);
  double total = 0.0;
  for (double x : d) total += x;

  std::mt19937_64 rng(spec.seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  const std::size_t n = spec.n;
  for (std::size_t u = 0; u + 1 < n; ++u) {
    std::size_t v = u + 1;
    double p = std::min(1.0, d[u] * d[v] / total);
    while (v < n && p > 0.0) {
      if (p < 1.0) {
        const double x = 1.0 - detail::unit(rng);  // (0,1]
        v += static_cast<std::size_t>(std::floor(std::log(x) / std::log1p(-p)));
      }
      if (v >= n) break;
      const double q = std::min(1.0, d[u] * d[v] / total);
      if (detail::unit(rng) < q / p) edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
      p = q;
      ++v;
    }
  }

  std::vector<Label> labels(n);
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Label>(i);
  for (std::size_t i = 0; i < n; ++i) weights[i] = detail::unit(rng);
  return WeightedGraph::from_edges(std::move(labels), edges, std::move(weights));
}

struct CoreEstimate {
  double node_bound;
  double edge_bound;
};

/// Closed-form size of the k-core of a power-law graph:
/// n / ((gamma-1) k^(gamma-1)) vertices and n / (2 (gamma-2) k^(gamma-2)) edges.
inline CoreEstimate estimate_core(double n, double gamma, std::uint32_t k) {
  detail::check_gamma(gamma);
  if (k < 1) throw DomainError("k must be at least 1");
  const double kk = static_cast<double>(k);
  return {n / ((gamma - 1.0) * std::pow(kk, gamma - 1.0)), n / (2.0 * (gamma - 2.0) * std::pow(kk, gamma - 2.0))};
}

}  // namespace infcomm
