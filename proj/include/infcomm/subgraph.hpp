#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "infcomm/error.hpp"
#include "infcomm/graph.hpp"

namespace infcomm {

/// O(1)-reset membership marks over 0..n-1. Reused across calls in hot loops
/// to avoid reallocating per-candidate bitsets.
class VertexMarker {
 public:
  explicit VertexMarker(std::size_t n = 0) : stamp_(n, 0) {}

  void resize(std::size_t n) { stamp_.assign(n, 0), epoch_ = 1; }
  void clear() {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }
  void mark(VertexId v) { stamp_[v] = epoch_; }
  void unmark(VertexId v) { stamp_[v] = 0; }
  bool marked(VertexId v) const { return stamp_[v] == epoch_; }
  std::size_t capacity() const { return stamp_.size(); }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 1;
};

/// Vertex subset of a parent graph with cached induced degrees.
///
/// Membership is a byte per parent vertex so that "is v in H" is a single
/// load; the view is therefore O(n) in memory regardless of its size.
class SubgraphView {
 public:
  SubgraphView(const WeightedGraph& parent, std::vector<VertexId> members)
      : parent_(&parent),
        members_(std::move(members)),
        in_(parent.num_vertices(), 0),
        degree_(parent.num_vertices(), 0) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (VertexId v : members_) {
      if (v >= parent.num_vertices()) throw ContractError("member id out of range");
      in_[v] = 1;
    }
    for (VertexId v : members_) {
      std::uint32_t d = 0;
      for (VertexId u : parent.neighbors(v)) d += in_[u];
      degree_[v] = d;
    }
  }

  /// The whole parent graph as a view.
  static SubgraphView all(const WeightedGraph& parent) {
    std::vector<VertexId> members(parent.num_vertices());
    for (VertexId v = 0; v < members.size(); ++v) members[v] = v;
    return SubgraphView(parent, std::move(members));
  }

  const WeightedGraph& parent() const noexcept { return *parent_; }
  std::span<const VertexId> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(VertexId v) const noexcept { return v < in_.size() && in_[v] != 0; }
  std::uint32_t degree(VertexId v) const noexcept { return degree_[v]; }

  std::uint32_t min_degree() const noexcept {
    std::uint32_t best = UINT32_MAX;
    for (VertexId v : members_) best = std::min(best, degree_[v]);
    return members_.empty() ? 0 : best;
  }

 private:
  friend std::vector<SubgraphView> remove_and_recore(const SubgraphView&, VertexId, std::uint32_t);

  const WeightedGraph* parent_;
  std::vector<VertexId> members_;
  std::vector<std::uint8_t> in_;
  std::vector<std::uint32_t> degree_;
};

/// Removes every vertex of `members` whose induced degree falls below k,
/// cascading, and returns the survivors in ascending order.
inline std::vector<VertexId> peel_to_k_core(const WeightedGraph& g, std::span<const VertexId> members,
                                            std::uint32_t k, VertexMarker& mark,
                                            std::vector<std::uint32_t>& deg) {
  if (mark.capacity() != g.num_vertices()) mark.resize(g.num_vertices());
  if (deg.size() != g.num_vertices()) deg.assign(g.num_vertices(), 0);
  mark.clear();
  for (VertexId v : members) mark.mark(v);
  std::vector<VertexId> queue;
  for (VertexId v : members) {
    std::uint32_t d = 0;
    for (VertexId u : g.neighbors(v)) d += mark.marked(u);
    deg[v] = d;
  }
  for (VertexId v : members) {
    if (deg[v] < k) {
      mark.unmark(v);
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    VertexId v = queue.back();
    queue.pop_back();
    for (VertexId u : g.neighbors(v)) {
      if (mark.marked(u) && --deg[u] < k) {
        mark.unmark(u);
        queue.push_back(u);
      }
    }
  }
  std::vector<VertexId> out;
  for (VertexId v : members) {
    if (mark.marked(v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<VertexId> peel_to_k_core(const WeightedGraph& g, std::span<const VertexId> members,
                                            std::uint32_t k) {
  VertexMarker mark(g.num_vertices());
  std::vector<std::uint32_t> deg(g.num_vertices(), 0);
  return peel_to_k_core(g, members, k, mark, deg);
}

/// Splits `members` into connected pieces of the induced subgraph. Each piece
/// is ascending; pieces are ordered by their smallest vertex.
inline std::vector<std::vector<VertexId>> split_components(const WeightedGraph& g,
                                                           std::span<const VertexId> members,
                                                           VertexMarker& mark) {
  if (mark.capacity() != g.num_vertices()) mark.resize(g.num_vertices());
  mark.clear();
  std::vector<VertexId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  for (VertexId v : sorted) mark.mark(v);

  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> stack;
  for (VertexId s : sorted) {
    if (!mark.marked(s)) continue;
    std::vector<VertexId> piece;
    mark.unmark(s);
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      piece.push_back(v);
      for (VertexId u : g.neighbors(v)) {
        if (mark.marked(u)) {
          mark.unmark(u);
          stack.push_back(u);
        }
      }
    }
    std::sort(piece.begin(), piece.end());
    out.push_back(std::move(piece));
  }
  return out;
}

inline std::vector<std::vector<VertexId>> split_components(const WeightedGraph& g,
                                                           std::span<const VertexId> members) {
  VertexMarker mark(g.num_vertices());
  return split_components(g, members, mark);
}

/// True when `members` induces a connected subgraph with minimum degree >= k.
/// An empty set is not a community.
inline bool is_connected_k_core(const WeightedGraph& g, std::span<const VertexId> members,
                                std::uint32_t k, VertexMarker& mark) {
  if (members.empty()) return false;
  if (mark.capacity() != g.num_vertices()) mark.resize(g.num_vertices());
  mark.clear();
  for (VertexId v : members) mark.mark(v);
  for (VertexId v : members) {
    std::uint32_t d = 0;
    for (VertexId u : g.neighbors(v)) d += mark.marked(u);
    if (d < k) return false;
  }
  std::vector<VertexId> stack{members.front()};
  mark.unmark(members.front());
  std::size_t seen = 0;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    ++seen;
    for (VertexId u : g.neighbors(v)) {
      if (mark.marked(u)) {
        mark.unmark(u);
        stack.push_back(u);
      }
    }
  }
  return seen == members.size();
}

inline bool is_connected_k_core(const WeightedGraph& g, std::span<const VertexId> members,
                                std::uint32_t k) {
  VertexMarker mark(g.num_vertices());
  return is_connected_k_core(g, members, k, mark);
}

/// Maximal vertex set with induced minimum degree >= k (possibly empty).
inline SubgraphView k_core(const WeightedGraph& g, std::uint32_t k) {
  std::vector<VertexId> all(g.num_vertices());
  for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
  return SubgraphView(g, peel_to_k_core(g, all, k));
}

inline std::vector<std::vector<VertexId>> connected_components(const SubgraphView& view) {
  return split_components(view.parent(), view.members());
}

/// Deletes `v` from a connected k-core and returns the connected k-core
/// pieces of what is left. Neighbours that drop below k are peeled
/// recursively.
inline std::vector<SubgraphView> remove_and_recore(const SubgraphView& view, VertexId v,
                                                   std::uint32_t k) {
  if (!view.contains(v)) throw ContractError("vertex is not a member of the subgraph");
  const WeightedGraph& g = view.parent();
  std::vector<std::uint8_t> in = view.in_;
  std::vector<std::uint32_t> deg = view.degree_;

  std::vector<VertexId> queue{v};
  in[v] = 0;
  while (!queue.empty()) {
    VertexId x = queue.back();
    queue.pop_back();
    for (VertexId u : g.neighbors(x)) {
      if (in[u] && --deg[u] < k) {
        in[u] = 0;
        queue.push_back(u);
      }
    }
  }

  std::vector<VertexId> rest;
  for (VertexId u : view.members()) {
    if (in[u]) rest.push_back(u);
  }
  std::vector<SubgraphView> out;
  for (auto& piece : split_components(g, rest)) out.emplace_back(g, std::move(piece));
  return out;
}

/// Core number of every vertex (Batagelj-Zaversnik bucket peeling, O(n+m)).
inline std::vector<std::uint32_t> core_numbers(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> deg(n), pos(n), order(n);
  std::uint32_t max_deg = 0;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = static_cast<std::uint32_t>(g.degree(v));
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::uint32_t> bin(max_deg + 2, 0);
  for (VertexId v = 0; v < n; ++v) ++bin[deg[v]];
  std::uint32_t start = 0;
  for (std::uint32_t d = 0; d <= max_deg; ++d) {
    std::uint32_t count = bin[d];
    bin[d] = start;
    start += count;
  }
  for (VertexId v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    order[pos[v]] = v;
  }
  for (std::uint32_t d = max_deg; d >= 1; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    VertexId v = order[i];
    for (VertexId u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        std::uint32_t du = deg[u];
        std::uint32_t pu = pos[u];
        std::uint32_t pw = bin[du];
        VertexId w = order[pw];
        if (u != w) {
          pos[u] = pw;
          order[pu] = w;
          pos[w] = pu;
          order[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return deg;
}

/// Largest k with a non-empty k-core (0 for an edgeless graph).
inline std::uint32_t max_core(const WeightedGraph& g) {
  auto cores = core_numbers(g);
  return cores.empty() ? 0 : *std::max_element(cores.begin(), cores.end());
}

}  // namespace infcomm
