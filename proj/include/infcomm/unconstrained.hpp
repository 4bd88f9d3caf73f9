#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "infcomm/aggregation.hpp"
#include "infcomm/community.hpp"
#include "infcomm/error.hpp"
#include "infcomm/graph.hpp"
#include "infcomm/maximal.hpp"
#include "infcomm/subgraph.hpp"

namespace infcomm {

namespace detail {

inline void require_size_proportional(const AggregationKind& kind) {
  if (!traits(kind).size_proportional) {
    throw UnsupportedFunction("unsupported function: " + std::string(kind.name()) +
                              " is not size-proportional; use constrained local search");
  }
}

inline double sum_of(const WeightedGraph& g, std::span<const VertexId> members) {
  double s = 0.0;
  for (VertexId v : members) s += g.weight(v);
  return s;
}

/// A connected k-core met during a removal search.
struct Candidate {
  SubgraphView view;
  double value;
  double sum;
  bool maximal;
};

inline Candidate make_candidate(const WeightedGraph& g, SubgraphView view, std::uint32_t k,
                                const AggregationKind& kind) {
  const double value = evaluate(kind, g, view.members());
  const double sum = sum_of(g, view.members());
  const bool maximal = is_maximal_by_closure(g, view.members(), k, kind, value);
  return Candidate{std::move(view), value, sum, maximal};
}

inline Community to_community(const Candidate& c, std::uint32_t k, const AggregationKind& kind) {
  auto m = c.view.members();
  return Community{{m.begin(), m.end()}, c.value, k, kind};
}

/// Values of the r best distinct maximal communities seen so far; the
/// smallest of them is the pruning threshold once r are known.
class TopValues {
 public:
  explicit TopValues(std::size_t r) : r_(r) {}

  void add(double v) {
    heap_.push(v);
    if (heap_.size() > r_) heap_.pop();
  }

  double threshold() const {
    return heap_.size() < r_ ? -std::numeric_limits<double>::infinity() : heap_.top();
  }

 private:
  std::size_t r_;
  std::priority_queue<double, std::vector<double>, std::greater<>> heap_;
};

}  // namespace detail

/// Exact top-r search by repeated single-vertex removal.
///
/// Vertices are visited in ascending id. Every tracked subgraph containing
/// the current vertex is split by removing it, unless the remainder cannot
/// beat the current r-th value. A subgraph is a community only when no
/// larger connected k-core has the same value; non-maximal subgraphs are
/// still tracked since their descendants may be communities.
inline ResultList sum_naive(const WeightedGraph& g, std::uint32_t k, std::size_t r, const AggregationKind& kind) {
  detail::require_size_proportional(kind);
  if (r == 0) throw ContractError("r must be at least 1");

  std::vector<detail::Candidate> tracked;
  std::unordered_set<SetFingerprint, SetFingerprintHash> seen;
  detail::TopValues top(r);

  auto admit = [&](SubgraphView view) {
    if (!seen.insert(fingerprint(view.members())).second) return;
    auto c = detail::make_candidate(g, std::move(view), k, kind);
    if (c.maximal) top.add(c.value);
    tracked.push_back(std::move(c));
  };
  auto prune = [&]() {
    const double t = top.threshold();
    std::erase_if(tracked, [&](const detail::Candidate& c) { return c.value < t; });
  };

  const SubgraphView core = k_core(g, k);
  for (auto& piece : connected_components(core)) admit(SubgraphView(g, std::move(piece)));
  prune();

  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    std::vector<SubgraphView> children;
    for (const auto& c : tracked) {
      if (!c.view.contains(v)) continue;
      auto rest = value_without(kind, g, c.sum, c.view.size(), v);
      if (!rest || !(*rest > top.threshold())) continue;
      for (auto& child : remove_and_recore(c.view, v, k)) children.push_back(std::move(child));
    }
    for (auto& child : children) admit(std::move(child));
    prune();
  }

  std::vector<Community> out;
  for (const auto& c : tracked) {
    if (c.maximal) out.push_back(detail::to_community(c, k, kind));
  }
  return ResultList::top(std::move(out), r);
}

/// Approximate top-r search. Always expands the best known subgraph next;
/// its pieces whose value is within a (1 - epsilon) factor of it are
/// accepted immediately. With epsilon = 0 the result is exact.
inline ResultList tic_improved(const WeightedGraph& g, std::uint32_t k, std::size_t r, double epsilon,
                               const AggregationKind& kind) {
  detail::require_size_proportional(kind);
  if (r == 0) throw ContractError("r must be at least 1");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in [0,1)");

  // Frontier entries keep only their member list; the O(n) view is rebuilt
  // when an entry is expanded.
  struct Entry {
    std::vector<VertexId> members;
    double value;
    double sum;
    bool maximal;
    bool operator<(const Entry& o) const { return ranks_before(value, members, o.value, o.members); }
  };

  std::set<Entry> frontier;
  std::unordered_set<SetFingerprint, SetFingerprintHash> seen;
  std::unordered_set<SetFingerprint, SetFingerprintHash> accepted_keys;
  std::vector<Community> accepted;
  detail::TopValues top(r);

  auto accept = [&](const Entry& e) {
    if (!e.maximal) return;
    if (!accepted_keys.insert(fingerprint(e.members)).second) return;
    accepted.push_back(Community{e.members, e.value, k, kind});
  };
  auto trim = [&]() {
    const double t = top.threshold();
    while (!frontier.empty() && std::prev(frontier.end())->value < t) frontier.erase(std::prev(frontier.end()));
  };
  // Registers a new piece; accepts it when it clears `bound`.
  auto discover = [&](std::span<const VertexId> members, double bound) {
    if (!seen.insert(fingerprint(members)).second) return;
    Entry e{{members.begin(), members.end()}, evaluate(kind, g, members), detail::sum_of(g, members), false};
    e.maximal = is_maximal_by_closure(g, e.members, k, kind, e.value);
    if (e.maximal) top.add(e.value);
    if (e.value >= bound) accept(e);
    if (e.value >= top.threshold()) frontier.insert(std::move(e));
  };

  {
    auto pieces = connected_components(k_core(g, k));
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : pieces) best = std::max(best, evaluate(kind, g, p));
    const double bound = best * (1.0 - epsilon);
    for (const auto& p : pieces) discover(p, bound);
    trim();
  }

  std::vector<VertexId> order;
  while (accepted.size() < r && !frontier.empty()) {
    const Entry cur = std::move(frontier.extract(frontier.begin()).value());
    const double bound = cur.value * (1.0 - epsilon);
    accept(cur);
    if (accepted.size() >= r) break;

    const SubgraphView view(g, cur.members);
    order = cur.members;
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return g.weight(a) < g.weight(b); });
    for (VertexId v : order) {
      auto rest = value_without(kind, g, cur.sum, cur.members.size(), v);
      if (!rest || !(*rest > top.threshold())) continue;
      for (const auto& child : remove_and_recore(view, v, k)) discover(child.members(), bound);
      if (accepted.size() >= r) break;
    }
    trim();
  }
  return ResultList::top(std::move(accepted), r);
}

/// Top-r connected components of the maximal k-core; disjoint by construction.
inline ResultList non_overlapping_unconstrained(const WeightedGraph& g, std::uint32_t k, std::size_t r,
                                                const AggregationKind& kind) {
  detail::require_size_proportional(kind);
  if (r == 0) throw ContractError("r must be at least 1");
  std::vector<Community> out;
  for (auto& piece : connected_components(k_core(g, k))) {
    const double value = evaluate(kind, g, piece);
    out.push_back(Community{std::move(piece), value, k, kind});
  }
  return ResultList::top(std::move(out), r);
}

}  // namespace infcomm
