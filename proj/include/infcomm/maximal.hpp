#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "infcomm/aggregation.hpp"
#include "infcomm/graph.hpp"
#include "infcomm/subgraph.hpp"

namespace infcomm {

/// Largest connected k-core containing `members` whose value equals `value`,
/// for kinds with a per-vertex neutrality rule. Starts from `members` plus
/// every neutral vertex reachable through neutral vertices, peels to a
/// k-core and keeps the piece holding `members`. `allowed`, when given,
/// restricts the vertices that may be added.
///
/// `members` itself must be a connected k-core with value `value`.
inline std::vector<VertexId> neutral_closure(const WeightedGraph& g, std::span<const VertexId> members,
                                             std::uint32_t k, const AggregationKind& kind, double value,
                                             const std::vector<std::uint8_t>* allowed = nullptr) {
  std::vector<VertexId> region(members.begin(), members.end());
  if (members.empty()) return region;
  VertexMarker mark(g.num_vertices());
  for (VertexId v : members) mark.mark(v);
  std::vector<VertexId> stack(members.begin(), members.end());
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId u : g.neighbors(v)) {
      if (mark.marked(u)) continue;
      if (allowed && !(*allowed)[u]) continue;
      auto neutral = neutral_addition(kind, g.weight(u), value);
      if (!neutral.value_or(false)) continue;
      mark.mark(u);
      region.push_back(u);
      stack.push_back(u);
    }
  }
  if (region.size() == members.size()) {
    std::sort(region.begin(), region.end());
    return region;
  }
  auto core = peel_to_k_core(g, region, k);
  for (auto& piece : split_components(g, core)) {
    if (std::binary_search(piece.begin(), piece.end(), members.front())) return piece;
  }
  return {members.begin(), members.end()};
}

/// Maximality test for kinds where neutrality is decided per vertex: no
/// strictly larger connected k-core has the same value.
inline bool is_maximal_by_closure(const WeightedGraph& g, std::span<const VertexId> members, std::uint32_t k,
                                  const AggregationKind& kind, double value,
                                  const std::vector<std::uint8_t>* allowed = nullptr) {
  return neutral_closure(g, members, k, kind, value, allowed).size() == members.size();
}

struct RepresentativeOptions {
  std::size_t max_size = SIZE_MAX;
  std::size_t budget = 4096;  // connected supersets examined before giving up
  const std::vector<std::uint8_t>* allowed = nullptr;
};

/// Largest connected k-core H' containing `members`, |H'| <= max_size, with
/// f(H') equal to `value`; ties go to the lexicographically smaller set.
/// Returns `members` when no such superset exists.
///
/// Connected supersets are enumerated exactly once each by growing along
/// the frontier with an exclusion set. For kinds with a per-vertex rule only
/// neutral vertices are ever added. When the budget runs out the best set
/// found so far is returned.
inline std::vector<VertexId> maximal_representative(const WeightedGraph& g, std::span<const VertexId> members,
                                                    std::uint32_t k, const AggregationKind& kind, double value,
                                                    const RepresentativeOptions& opt = {}) {
  std::vector<VertexId> best(members.begin(), members.end());
  if (members.empty() || members.size() >= opt.max_size) return best;

  const std::size_t n = g.num_vertices();
  const bool per_vertex = neutral_addition(kind, 0.0, value).has_value();
  auto eligible = [&](VertexId u) {
    if (opt.allowed && !(*opt.allowed)[u]) return false;
    if (per_vertex) return *neutral_addition(kind, g.weight(u), value);
    return true;
  };

  // 0 = free, 1 = in current set, 2 = excluded, 3 = queued as candidate
  std::vector<std::uint8_t> state(n, 0);
  std::vector<VertexId> current(members.begin(), members.end());
  for (VertexId v : current) state[v] = 1;

  double sum = 0.0;
  double lo = g.weight(current.front());
  double hi = lo;
  for (VertexId v : current) {
    sum += g.weight(v);
    lo = std::min(lo, g.weight(v));
    hi = std::max(hi, g.weight(v));
  }

  std::vector<VertexId> frontier;
  for (VertexId v : current) {
    for (VertexId u : g.neighbors(v)) {
      if (state[u] == 0 && eligible(u)) {
        state[u] = 3;
        frontier.push_back(u);
      }
    }
  }
  std::sort(frontier.begin(), frontier.end());

  std::size_t examined = 0;
  VertexMarker mark(n);

  auto equal_value = [&](double s, std::size_t count, double mn, double mx) {
    switch (kind.kind()) {
      case Aggregation::Min: return mn == value;
      case Aggregation::Max: return mx == value;
      default: {
        auto v = value_from_totals(kind, s, count, g.total_weight());
        return v && *v == value;
      }
    }
  };

  auto consider = [&]() {
    if (current.size() < best.size()) return;
    std::vector<VertexId> sorted = current;
    std::sort(sorted.begin(), sorted.end());
    // Recompute in ascending order so the value matches evaluate() bit for bit.
    auto exact = try_evaluate(kind, g, sorted);
    if (!exact || *exact != value) return;
    if (!is_connected_k_core(g, sorted, k, mark)) return;
    if (sorted.size() > best.size() || (sorted.size() == best.size() && sorted < best)) best = std::move(sorted);
  };

  std::function<void(std::vector<VertexId>&, double, double, double)> grow =
      [&](std::vector<VertexId>& cand, double s, double mn, double mx) {
        for (std::size_t i = 0; i < cand.size(); ++i) {
          if (examined >= opt.budget) return;
          VertexId v = cand[i];
          ++examined;
          state[v] = 1;
          current.push_back(v);
          const double w = g.weight(v);
          const double s2 = s + w;
          const double mn2 = std::min(mn, w);
          const double mx2 = std::max(mx, w);
          if (equal_value(s2, current.size(), mn2, mx2)) consider();
          if (current.size() < opt.max_size) {
            std::vector<VertexId> next(cand.begin() + static_cast<std::ptrdiff_t>(i) + 1, cand.end());
            std::vector<VertexId> added;
            for (VertexId u : g.neighbors(v)) {
              if (state[u] == 0 && eligible(u)) {
                state[u] = 3;
                added.push_back(u);
              }
            }
            next.insert(next.end(), added.begin(), added.end());
            grow(next, s2, mn2, mx2);
            for (VertexId u : added) state[u] = 0;
          }
          current.pop_back();
          state[v] = 2;
        }
        for (VertexId v : cand) {
          if (state[v] == 2) state[v] = 3;
        }
      };
  grow(frontier, sum, lo, hi);
  return best;
}

}  // namespace infcomm
