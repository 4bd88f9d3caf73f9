#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "infcomm/aggregation.hpp"
#include "infcomm/community.hpp"
#include "infcomm/error.hpp"
#include "infcomm/graph.hpp"

namespace infcomm {

inline constexpr std::size_t kOracleVertexCap = 20;

/// Ground truth by enumerating every vertex subset as a bitmask. Shares
/// nothing with the search code except the graph and the value function.
inline ResultList brute_force_topr(const WeightedGraph& g, std::uint32_t k, std::size_t r,
                                   std::optional<std::size_t> s, const AggregationKind& kind,
                                   bool non_overlapping = false, unsigned threads = 1) {
  const std::size_t n = g.num_vertices();
  if (n > kOracleVertexCap) {
    throw Refusal("oracle refused: " + std::to_string(n) + " vertices exceeds the cap of " +
                  std::to_string(kOracleVertexCap));
  }
  if (r == 0) throw ContractError("r must be at least 1");
  if (n == 0) return {};
  const std::size_t cap = std::min(s.value_or(n), n);

  std::vector<std::uint32_t> adj(n, 0);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : g.neighbors(u)) adj[u] |= 1u << v;
  }

  struct Found {
    std::uint32_t mask;
    double value;
  };

  auto feasible = [&](std::uint32_t mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size < static_cast<std::size_t>(k) + 1 || size > cap) return false;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (static_cast<std::uint32_t>(std::popcount(adj[v] & mask)) < k) return false;
    }
    std::uint32_t reached = mask & (~mask + 1);
    std::uint32_t grown = reached;
    do {
      reached = grown;
      for (std::uint32_t rest = reached; rest; rest &= rest - 1) grown |= adj[std::countr_zero(rest)] & mask;
    } while (grown != reached);
    return reached == mask;
  };

  auto members_of = [](std::uint32_t mask) {
    std::vector<VertexId> out;
    for (; mask; mask &= mask - 1) out.push_back(static_cast<VertexId>(std::countr_zero(mask)));
    return out;
  };

  const std::uint32_t limit = n == 32 ? 0xffffffffu : ((1u << n) - 1);
  const unsigned workers = std::max(1u, threads);
  std::vector<std::vector<Found>> parts(workers);
  auto scan = [&](unsigned w) {
    const std::uint64_t total = static_cast<std::uint64_t>(limit);
    const std::uint64_t begin = 1 + total * w / workers;
    const std::uint64_t end = 1 + total * (w + 1) / workers;
    for (std::uint64_t m = begin; m < end; ++m) {
      const auto mask = static_cast<std::uint32_t>(m);
      if (!feasible(mask)) continue;
      auto members = members_of(mask);
      if (auto value = try_evaluate(kind, g, members)) parts[w].push_back(Found{mask, *value});
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }
  std::vector<Found> all;
  for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());

  // Keep a set only if no strictly larger feasible set has the same value.
  std::sort(all.begin(), all.end(), [](const Found& a, const Found& b) {
    return a.value != b.value ? a.value > b.value : a.mask < b.mask;
  });
  std::vector<Community> candidates;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].value == all[i].value) ++j;
    for (std::size_t a = i; a < j; ++a) {
      bool dominated = false;
      for (std::size_t b = i; b < j && !dominated; ++b) {
        dominated = all[b].mask != all[a].mask && (all[b].mask & all[a].mask) == all[a].mask;
      }
      if (!dominated) candidates.push_back(Community{members_of(all[a].mask), all[a].value, k, kind});
    }
    i = j;
  }
  return non_overlapping ? ResultList::top_disjoint(std::move(candidates), r)
                         : ResultList::top(std::move(candidates), r);
}

struct Verification {
  bool ok = true;
  std::string clause;  // empty when ok
  std::string detail;
};

/// Checks one community: non-empty, connected, minimum degree >= k, size
/// within s, and stored value equal to a fresh evaluation.
inline Verification verify_community(const WeightedGraph& g, const Community& c, std::uint32_t k,
                                     std::optional<std::size_t> s = std::nullopt) {
  auto fail = [](std::string clause, std::string detail) { return Verification{false, std::move(clause), std::move(detail)}; };
  if (c.members.empty()) return fail("Empty", "community has no members");
  for (VertexId v : c.members) {
    if (v >= g.num_vertices()) return fail("Members", "vertex id out of range");
  }
  std::vector<VertexId> sorted = c.members;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return fail("Members", "repeated vertex");

  std::vector<std::uint8_t> in(g.num_vertices(), 0);
  for (VertexId v : sorted) in[v] = 1;
  for (VertexId v : sorted) {
    std::uint32_t d = 0;
    for (VertexId u : g.neighbors(v)) d += in[u];
    if (d < k) {
      return fail("Cohesive", "vertex " + std::to_string(g.label(v)) + " has " + std::to_string(d) +
                                  " neighbours inside, need " + std::to_string(k));
    }
  }
  std::vector<VertexId> stack{sorted.front()};
  in[sorted.front()] = 2;
  std::size_t reached = 0;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    ++reached;
    for (VertexId u : g.neighbors(v)) {
      if (in[u] == 1) {
        in[u] = 2;
        stack.push_back(u);
      }
    }
  }
  if (reached != sorted.size()) return fail("Connected", "induced subgraph is disconnected");
  if (s && sorted.size() > *s) {
    return fail("Size", std::to_string(sorted.size()) + " members exceeds s = " + std::to_string(*s));
  }
  auto value = try_evaluate(c.kind, g, sorted);
  if (!value || *value != c.value) return fail("value mismatch", "stored value differs from recomputation");
  return {};
}

/// True when the approximate list's last value reaches (1 - epsilon) of the
/// exact value at the same rank.
inline bool check_approx_factor(const ResultList& approx, const ResultList& exact, double epsilon) {
  if (exact.empty()) throw ContractError("exact result list is empty");
  if (approx.empty()) return false;
  const std::size_t i = std::min(approx.size(), exact.size()) - 1;
  return approx[i].value >= (1.0 - epsilon) * exact[i].value;
}

/// Normalised discounted cumulative gain with the raw values as gains.
inline double ndcg(const ResultList& result, const ResultList& ideal, std::size_t r) {
  auto dcg = [r](const ResultList& list) {
    double total = 0.0;
    for (std::size_t i = 0; i < std::min(r, list.size()); ++i) {
      total += list[i].value / std::log2(static_cast<double>(i) + 2.0);
    }
    return total;
  };
  const double best = dcg(ideal);
  const double got = dcg(result);
  if (best == 0.0) return got == 0.0 ? 1.0 : 0.0;
  return got / best;
}

}  // namespace infcomm
