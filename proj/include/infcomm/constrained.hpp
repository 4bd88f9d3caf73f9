#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "infcomm/aggregation.hpp"
#include "infcomm/community.hpp"
#include "infcomm/error.hpp"
#include "infcomm/graph.hpp"
#include "infcomm/maximal.hpp"
#include "infcomm/subgraph.hpp"

namespace infcomm {

struct SearchParams {
  std::uint32_t k = 0;
  std::size_t r = 1;
  std::optional<std::size_t> s;  // size cap; absent means n
  double epsilon = 0.1;
  bool greedy = true;
  bool non_overlapping = false;
  std::uint64_t rng_seed = 0;
  bool allow_large = false;  // lets tic_exact run above its vertex cap

  std::size_t size_cap(std::size_t n) const { return std::min(s.value_or(n), n); }
};

/// Vertex count above which tic_exact refuses without `allow_large`.
inline constexpr std::size_t kExactVertexCap = 20;

/// Exhaustive size-constrained search: every vertex set of size k+1..s is
/// tested for being a connected k-core, non-maximal sets are dropped and the
/// best r are returned.
inline ResultList tic_exact(const WeightedGraph& g, const SearchParams& p, const AggregationKind& kind) {
  if (p.r == 0) throw ContractError("r must be at least 1");
  const std::size_t n = g.num_vertices();
  if (n > kExactVertexCap && !p.allow_large) {
    throw Refusal("exact search refused: " + std::to_string(n) + " vertices exceeds the cap of " +
                  std::to_string(kExactVertexCap));
  }
  const std::size_t cap = p.size_cap(n);
  const std::size_t lo = static_cast<std::size_t>(p.k) + 1;

  std::vector<Community> found;
  VertexMarker mark(n);
  std::vector<VertexId> pick;
  for (std::size_t size = lo; size <= cap; ++size) {
    // Lexicographic walk over index combinations.
    pick.resize(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = static_cast<VertexId>(i);
    while (true) {
      if (is_connected_k_core(g, pick, p.k, mark)) {
        if (auto value = try_evaluate(kind, g, pick)) found.push_back(Community{pick, *value, p.k, kind});
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  std::sort(found.begin(), found.end(), [](const Community& a, const Community& b) { return ranks_before(a, b); });
  std::vector<Community> maximal;
  for (std::size_t i = 0; i < found.size();) {
    std::size_t j = i;
    while (j < found.size() && found[j].value == found[i].value) ++j;
    for (std::size_t a = i; a < j; ++a) {
      bool dominated = false;
      for (std::size_t b = i; b < j && !dominated; ++b) {
        if (found[b].members.size() <= found[a].members.size()) continue;
        dominated = std::includes(found[b].members.begin(), found[b].members.end(), found[a].members.begin(),
                                  found[a].members.end());
      }
      if (!dominated) maximal.push_back(found[a]);
    }
    i = j;
  }
  return p.non_overlapping ? ResultList::top_disjoint(std::move(maximal), p.r)
                           : ResultList::top(std::move(maximal), p.r);
}

/// Breadth-first hop levels around `seed` over live vertices (all vertices
/// when `alive` is null), each level ascending, stopping once `s` vertices
/// have been gathered or the component is exhausted. The last level may
/// hold more than needed.
inline std::vector<std::vector<VertexId>> hop_levels(const WeightedGraph& g, VertexId seed, std::size_t s,
                                                     const std::vector<std::uint8_t>* alive = nullptr) {
  std::vector<std::vector<VertexId>> levels;
  if (s == 0) return levels;
  VertexMarker mark(g.num_vertices());
  mark.mark(seed);
  levels.push_back({seed});
  std::size_t total = 1;
  while (total < s) {
    std::vector<VertexId> next;
    for (VertexId v : levels.back()) {
      for (VertexId u : g.neighbors(v)) {
        if (mark.marked(u) || (alive && !(*alive)[u])) continue;
        mark.mark(u);
        next.push_back(u);
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    total += next.size();
    levels.push_back(std::move(next));
  }
  return levels;
}

/// The s vertices nearest to `seed` in hop distance, ties by ascending id.
inline std::vector<VertexId> s_nearest(const WeightedGraph& g, VertexId seed, std::size_t s,
                                       const std::vector<std::uint8_t>* alive = nullptr) {
  std::vector<VertexId> out;
  for (const auto& level : hop_levels(g, seed, s, alive)) {
    for (VertexId v : level) {
      if (out.size() == s) return out;
      out.push_back(v);
    }
  }
  return out;
}

namespace detail {

enum class Strategy { Sum, Avg };

inline Strategy strategy_for(const AggregationKind& kind) {
  switch (kind.kind()) {
    case Aggregation::Sum:
    case Aggregation::SumSurplus:
    case Aggregation::WeightDensity: return Strategy::Sum;
    default: return Strategy::Avg;
  }
}

/// The working top-r list of local search. Fewer than r entries behave as
/// if padded with -infinity sentinels.
class LocalList {
 public:
  explicit LocalList(std::size_t r) : r_(r) {}

  double threshold() const {
    if (entries_.size() < r_) return -std::numeric_limits<double>::infinity();
    return entries_.back().value;
  }

  bool contains(const std::vector<VertexId>& members) const {
    for (const auto& e : entries_) {
      if (e.members == members) return true;
    }
    return false;
  }

  /// Replaces the current r-th entry (or a sentinel) with `c`.
  void replace_last(Community c) {
    if (entries_.size() >= r_) entries_.pop_back();
    entries_.push_back(std::move(c));
    std::sort(entries_.begin(), entries_.end(), [](const Community& a, const Community& b) { return ranks_before(a, b); });
  }

  std::vector<Community> take() { return std::move(entries_); }

 private:
  std::size_t r_;
  std::vector<Community> entries_;
};

struct LocalContext {
  const WeightedGraph& g;
  const SearchParams& p;
  const AggregationKind& kind;
  std::size_t cap;
  std::vector<std::uint8_t>& alive;
  LocalList& list;
  VertexMarker mark;
};

inline bool beats(const std::optional<double>& value, double threshold) { return value && *value > threshold; }

/// Turns a feasible candidate into a maximal community and checks it is new.
inline std::optional<Community> finalize(LocalContext& ctx, std::vector<VertexId> members, double value) {
  std::sort(members.begin(), members.end());
  RepresentativeOptions opt;
  opt.max_size = ctx.cap;
  opt.allowed = &ctx.alive;
  auto rep = maximal_representative(ctx.g, members, ctx.p.k, ctx.kind, value, opt);
  if (ctx.list.contains(rep)) return std::nullopt;
  return Community{std::move(rep), value, ctx.p.k, ctx.kind};
}

/// Shrinks the candidate from the back until it is a connected k-core that
/// beats the r-th entry, or until it cannot.
inline std::optional<Community> sum_strategy(LocalContext& ctx, std::vector<VertexId> c) {
  const double t = ctx.list.threshold();
  while (c.size() > ctx.p.k) {
    std::vector<VertexId> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    auto value = try_evaluate(ctx.kind, ctx.g, sorted);
    if (!beats(value, t)) break;
    if (is_connected_k_core(ctx.g, sorted, ctx.p.k, ctx.mark)) {
      if (auto out = finalize(ctx, std::move(sorted), *value)) return out;
    }
    c.pop_back();
  }
  return std::nullopt;
}

/// Grows the candidate one vertex at a time. Greedy mode takes the first
/// prefix that qualifies; otherwise the best qualifying prefix wins.
inline std::optional<Community> avg_strategy(LocalContext& ctx, const std::vector<VertexId>& order) {
  const double t = ctx.list.threshold();
  std::vector<VertexId> c;
  std::vector<std::pair<std::vector<VertexId>, double>> pool;
  for (VertexId v : order) {
    if (c.size() >= ctx.cap) break;
    c.push_back(v);
    if (c.size() <= ctx.p.k) continue;
    std::vector<VertexId> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    auto value = try_evaluate(ctx.kind, ctx.g, sorted);
    if (!beats(value, t)) continue;
    if (!is_connected_k_core(ctx.g, sorted, ctx.p.k, ctx.mark)) continue;
    if (ctx.p.greedy) {
      if (auto out = finalize(ctx, std::move(sorted), *value)) return out;
    } else {
      pool.emplace_back(std::move(sorted), *value);
    }
  }
  std::sort(pool.begin(), pool.end(),
            [](const auto& a, const auto& b) { return ranks_before(a.second, a.first, b.second, b.first); });
  for (auto& [members, value] : pool) {
    if (auto out = finalize(ctx, std::move(members), value)) return out;
  }
  return std::nullopt;
}

}  // namespace detail

/// Heuristic size-constrained search. Every live vertex of the maximal
/// k-core seeds a candidate drawn from its s nearest neighbours; greedy mode
/// orders them by descending weight, random mode shuffles each hop level
/// with a generator seeded from `rng_seed`. Accepted candidates replace the
/// r-th entry of the running list. In non-overlapping mode accepted members
/// are removed from the working graph, which is then re-peeled.
inline ResultList local_search(const WeightedGraph& g, const SearchParams& p, const AggregationKind& kind) {
  if (p.r == 0) throw ContractError("r must be at least 1");
  const std::size_t n = g.num_vertices();
  const std::size_t cap = p.size_cap(n);
  detail::LocalList list(p.r);
  if (cap < static_cast<std::size_t>(p.k) + 1) return {};

  std::vector<std::uint8_t> alive(n, 0);
  const SubgraphView core = k_core(g, p.k);
  for (VertexId v : core.members()) alive[v] = 1;

  detail::LocalContext ctx{g, p, kind, cap, alive, list, VertexMarker(n)};
  std::mt19937_64 rng(p.rng_seed);
  const auto strategy = detail::strategy_for(kind);

  for (VertexId seed = 0; seed < n; ++seed) {
    if (!alive[seed]) continue;
    auto levels = hop_levels(g, seed, cap, &alive);
    std::vector<VertexId> order;
    if (p.greedy) {
      for (const auto& level : levels) order.insert(order.end(), level.begin(), level.end());
      if (order.size() > cap) order.resize(cap);
      std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return g.weight(a) > g.weight(b); });
    } else {
      for (auto& level : levels) {
        std::shuffle(level.begin(), level.end(), rng);
        order.insert(order.end(), level.begin(), level.end());
      }
      if (order.size() > cap) order.resize(cap);
    }

    std::optional<Community> got = strategy == detail::Strategy::Sum ? detail::sum_strategy(ctx, order)
                                                                      : detail::avg_strategy(ctx, order);
    if (!got) continue;
    if (p.non_overlapping) {
      for (VertexId v : got->members) alive[v] = 0;
      std::vector<VertexId> rest;
      for (VertexId v = 0; v < n; ++v) {
        if (alive[v]) rest.push_back(v);
      }
      std::fill(alive.begin(), alive.end(), 0);
      for (VertexId v : peel_to_k_core(g, rest, p.k)) alive[v] = 1;
    }
    list.replace_last(std::move(*got));
  }
  return ResultList::top(list.take(), p.r);
}

}  // namespace infcomm
