#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "infcomm/graph.hpp"

namespace testing_support {

using infcomm::Label;
using infcomm::VertexId;
using infcomm::WeightedGraph;

/// G(n, p) with integer weights in [0, max_weight], labels 0..n-1.
inline WeightedGraph random_graph(std::size_t n, double p, std::uint64_t seed, int max_weight = 9) {
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (unit() < p) edges.emplace_back(u, v);
    }
  }
  std::vector<Label> labels(n);
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<Label>(i);
    weights[i] = static_cast<double>(rng() % static_cast<std::uint64_t>(max_weight + 1));
  }
  return WeightedGraph::from_edges(std::move(labels), edges, std::move(weights));
}

/// Random graph with about m edges drawn uniformly among all pairs.
inline WeightedGraph random_graph_m(std::size_t n, std::size_t m, std::uint64_t seed, int max_weight = 100) {
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return random_graph(n, static_cast<double>(m) / pairs, seed, max_weight);
}

inline WeightedGraph build(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges,
                           std::vector<double> weights = {}) {
  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Label>(i);
  return WeightedGraph::from_edges(std::move(labels), edges, std::move(weights));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

#ifdef INFCOMM_DATA_DIR
/// The 11-vertex example graph with its weights.
inline WeightedGraph example_graph() {
  auto g = infcomm::parse_edge_list(read_file(std::string(INFCOMM_DATA_DIR) + "/example.txt"));
  return infcomm::load_weights(g, read_file(std::string(INFCOMM_DATA_DIR) + "/example.weights"));
}

/// Dense ids of the given external labels, ascending.
inline std::vector<VertexId> ids(const WeightedGraph& g, std::initializer_list<Label> labels) {
  std::vector<VertexId> out;
  for (Label l : labels) out.push_back(*g.id_of(l));
  std::sort(out.begin(), out.end());
  return out;
}
#endif

}  // namespace testing_support
