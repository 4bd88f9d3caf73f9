#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "infcomm/aggregation.hpp"
#include "infcomm/graph.hpp"

namespace infcomm {

/// A connected vertex set with minimum induced degree >= k, together with
/// its influence value under one aggregation.
struct Community {
  std::vector<VertexId> members;  // ascending
  double value = 0.0;
  std::uint32_t k = 0;
  AggregationKind kind = AggregationKind::sum();

  friend bool operator==(const Community&, const Community&) = default;
};

/// Strict total order used for every ranking in the library: higher value
/// first, then smaller least member, then smaller size, then the sorted
/// member lists lexicographically.
inline bool ranks_before(double va, std::span<const VertexId> a, double vb, std::span<const VertexId> b) {
  if (va != vb) return va > vb;
  if (a.empty() || b.empty()) return a.size() < b.size();
  if (a.front() != b.front()) return a.front() < b.front();
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline bool ranks_before(const Community& a, const Community& b) {
  return ranks_before(a.value, a.members, b.value, b.members);
}

inline bool disjoint(std::span<const VertexId> a, std::span<const VertexId> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i;
    else ++j;
  }
  return true;
}

/// Ranked top-r communities, best first.
class ResultList {
 public:
  ResultList() = default;

  /// Sorts `candidates` by rank and keeps the first r.
  static ResultList top(std::vector<Community> candidates, std::size_t r) {
    std::sort(candidates.begin(), candidates.end(),
              [](const Community& a, const Community& b) { return ranks_before(a, b); });
    if (candidates.size() > r) candidates.resize(r);
    ResultList out;
    out.entries_ = std::move(candidates);
    return out;
  }

  /// Keeps `ranked` in the order given, e.g. a ranking produced elsewhere.
  static ResultList from_ranked(std::vector<Community> ranked) {
    ResultList out;
    out.entries_ = std::move(ranked);
    return out;
  }

  /// Best-first selection of pairwise disjoint candidates: walk the ranked
  /// list and keep each candidate that shares no vertex with an earlier pick.
  static ResultList top_disjoint(std::vector<Community> candidates, std::size_t r) {
    std::sort(candidates.begin(), candidates.end(),
              [](const Community& a, const Community& b) { return ranks_before(a, b); });
    ResultList out;
    std::vector<VertexId> used;
    for (auto& c : candidates) {
      if (out.size() >= r) break;
      if (!disjoint(c.members, used)) continue;
      std::vector<VertexId> merged;
      merged.reserve(used.size() + c.members.size());
      std::merge(used.begin(), used.end(), c.members.begin(), c.members.end(), std::back_inserter(merged));
      used = std::move(merged);
      out.entries_.push_back(std::move(c));
    }
    return out;
  }

  const std::vector<Community>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const Community& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(entries_.size());
    for (const auto& c : entries_) out.push_back(c.value);
    return out;
  }

  bool pairwise_disjoint() const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      for (std::size_t j = i + 1; j < entries_.size(); ++j) {
        if (!disjoint(entries_[i].members, entries_[j].members)) return false;
      }
    }
    return true;
  }

 private:
  std::vector<Community> entries_;
};

/// 128-bit fingerprint of a sorted vertex set, for duplicate suppression.
struct SetFingerprint {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  friend bool operator==(const SetFingerprint&, const SetFingerprint&) = default;
};

struct SetFingerprintHash {
  std::size_t operator()(const SetFingerprint& f) const noexcept {
    return static_cast<std::size_t>(f.lo ^ (f.hi * 0x9e3779b97f4a7c15ULL));
  }
};

inline SetFingerprint fingerprint(std::span<const VertexId> sorted_members) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  SetFingerprint f{0x243f6a8885a308d3ULL ^ sorted_members.size(), 0x13198a2e03707344ULL};
  for (VertexId v : sorted_members) {
    f.lo = mix(f.lo ^ v);
    f.hi = mix(f.hi + 0xa4093822299f31d0ULL * (static_cast<std::uint64_t>(v) + 1));
  }
  return f;
}

}  // namespace infcomm
