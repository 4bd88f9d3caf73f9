#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "infcomm/error.hpp"

namespace infcomm {

using VertexId = std::uint32_t;
using Label = std::int64_t;

/// Immutable undirected vertex-weighted graph in CSR form.
///
/// Vertices are dense ids 0..n-1; every id carries the external label it was
/// read with. Neighbor lists are sorted, symmetric and free of self-loops and
/// duplicates. Weights are non-negative.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Builds a graph over `labels.size()` vertices. Edges are given in dense
  /// ids; self-loops and duplicates are dropped. Weights default to zero.
  static WeightedGraph from_edges(std::vector<Label> labels,
                                  std::span<const std::pair<VertexId, VertexId>> edges,
                                  std::vector<double> weights = {}) {
    WeightedGraph g;
    const std::size_t n = labels.size();
    g.labels_ = std::move(labels);
    g.index_.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
      if (!g.index_.emplace(g.labels_[v], v).second) {
        throw ContractError("duplicate label " + std::to_string(g.labels_[v]));
      }
    }

    std::vector<std::pair<VertexId, VertexId>> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw ContractError("edge endpoint out of range");
      if (u == v) continue;
      arcs.emplace_back(u, v);
      arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : arcs) ++g.offsets_[u + 1];
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.reserve(arcs.size());
    for (auto [u, v] : arcs) g.targets_.push_back(v);

    if (weights.empty()) weights.assign(n, 0.0);
    g.set_weights(std::move(weights));
    return g;
  }

  std::size_t num_vertices() const noexcept { return labels_.size(); }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(VertexId u, VertexId v) const noexcept {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  double weight(VertexId v) const noexcept { return weights_[v]; }
  std::span<const double> weights() const noexcept { return weights_; }
  double total_weight() const noexcept { return total_weight_; }

  Label label(VertexId v) const noexcept { return labels_[v]; }
  std::span<const Label> labels() const noexcept { return labels_; }

  std::optional<VertexId> id_of(Label label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Copy of this graph with a different weight vector.
  WeightedGraph with_weights(std::vector<double> weights) const {
    WeightedGraph g = *this;
    g.set_weights(std::move(weights));
    return g;
  }

  std::vector<std::pair<VertexId, VertexId>> edge_list() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(num_edges());
    for (VertexId u = 0; u < num_vertices(); ++u) {
      for (VertexId v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

 private:
  void set_weights(std::vector<double> weights) {
    if (weights.size() != labels_.size()) {
      throw ContractError("weight vector size does not match vertex count");
    }
    total_weight_ = 0.0;
    for (std::size_t v = 0; v < weights.size(); ++v) {
      if (!(weights[v] >= 0.0)) {
        throw DomainError("negative weight on vertex " + std::to_string(labels_[v]));
      }
      total_weight_ += weights[v];
    }
    weights_ = std::move(weights);
  }

  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<double> weights_;
  std::vector<Label> labels_;
  std::unordered_map<Label, VertexId> index_;
  double total_weight_ = 0.0;
};

/// Counters for things silently dropped during ingestion.
struct EdgeListStats {
  std::size_t lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\v\f";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<Label> parse_label(std::string_view tok) {
  Label value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return value;
}

inline std::optional<double> parse_real(std::string_view tok) {
  // std::from_chars for double is unavailable on older libstdc++.
  std::string buf(tok);
  std::size_t pos = 0;
  try {
    double v = std::stod(buf, &pos);
    if (pos != buf.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Reads a SNAP-style edge list: one "u v" pair of integer labels per line,
/// '#' comment lines. Labels get dense ids in first-appearance order.
inline WeightedGraph parse_edge_list(std::istream& in, EdgeListStats* stats = nullptr) {
  std::vector<Label> labels;
  std::unordered_map<Label, VertexId> index;
  std::vector<std::pair<VertexId, VertexId>> edges;
  EdgeListStats local;

  auto intern = [&](Label l) {
    auto [it, inserted] = index.emplace(l, static_cast<VertexId>(labels.size()));
    if (inserted) labels.push_back(l);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto toks = detail::split_ws(body);
    if (toks.size() != 2) {
      throw ParseError(lineno, "expected two vertex labels, got " + std::to_string(toks.size()) + " tokens");
    }
    auto a = detail::parse_label(toks[0]);
    auto b = detail::parse_label(toks[1]);
    if (!a || !b) throw ParseError(lineno, "non-integer vertex label");
    ++local.lines;
    VertexId u = intern(*a);
    VertexId v = intern(*b);
    if (u == v) {
      ++local.self_loops;
      continue;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }

  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  local.duplicates = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());
  if (stats) *stats = local;
  return WeightedGraph::from_edges(std::move(labels), edges);
}

inline WeightedGraph parse_edge_list(std::string_view text, EdgeListStats* stats = nullptr) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, stats);
}

/// Applies "label weight" lines to `graph`. Vertices not mentioned keep
/// weight 0.
inline WeightedGraph load_weights(const WeightedGraph& graph, std::istream& in) {
  std::vector<double> w(graph.num_vertices(), 0.0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto toks = detail::split_ws(body);
    if (toks.size() != 2) throw ParseError(lineno, "expected \"label weight\"");
    auto label = detail::parse_label(toks[0]);
    if (!label) throw ParseError(lineno, "non-integer vertex label");
    auto value = detail::parse_real(toks[1]);
    if (!value) throw ParseError(lineno, "malformed weight");
    auto id = graph.id_of(*label);
    if (!id) throw DomainError("unknown vertex label " + std::to_string(*label));
    if (!(*value >= 0.0)) {
      throw DomainError("negative weight for vertex " + std::to_string(*label));
    }
    w[*id] = *value;
  }
  return graph.with_weights(std::move(w));
}

inline WeightedGraph load_weights(const WeightedGraph& graph, std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_weights(graph, in);
}

}  // namespace infcomm
