#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "infcomm/error.hpp"
#include "infcomm/graph.hpp"
#include "infcomm/subgraph.hpp"

namespace infcomm {

enum class Aggregation : std::uint8_t {
  Min,
  Max,
  Sum,
  SumSurplus,
  Avg,
  WeightDensity,
  BalancedDensity,
};

inline constexpr std::array<Aggregation, 7> kAllAggregations = {
    Aggregation::Min,           Aggregation::Max,          Aggregation::Sum,
    Aggregation::SumSurplus,    Aggregation::Avg,          Aggregation::WeightDensity,
    Aggregation::BalancedDensity,
};

enum class Hardness : std::uint8_t { P, NPHard };

struct FunctionTraits {
  bool node_domination;
  bool size_proportional;
  bool monotonic;
  bool submodular;
  Hardness hardness;

  friend bool operator==(const FunctionTraits&, const FunctionTraits&) = default;
};

/// An aggregation function together with its parameter, if it takes one
/// (alpha for sum-surplus, beta for weight density).
class AggregationKind {
 public:
  static constexpr double kDefaultAlpha = 1.0;
  static constexpr double kDefaultBeta = 1.0;

  static AggregationKind min() { return AggregationKind(Aggregation::Min); }
  static AggregationKind max() { return AggregationKind(Aggregation::Max); }
  static AggregationKind sum() { return AggregationKind(Aggregation::Sum); }
  static AggregationKind avg() { return AggregationKind(Aggregation::Avg); }
  static AggregationKind balanced_density() { return AggregationKind(Aggregation::BalancedDensity); }
  static AggregationKind sum_surplus(double alpha = kDefaultAlpha) {
    return AggregationKind(Aggregation::SumSurplus, alpha);
  }
  static AggregationKind weight_density(double beta = kDefaultBeta) {
    return AggregationKind(Aggregation::WeightDensity, beta);
  }

  static AggregationKind of(Aggregation a, double alpha = kDefaultAlpha, double beta = kDefaultBeta) {
    switch (a) {
      case Aggregation::SumSurplus: return sum_surplus(alpha);
      case Aggregation::WeightDensity: return weight_density(beta);
      default: return AggregationKind(a);
    }
  }

  /// Parses the CLI spelling: min|max|sum|sum-surplus|avg|weight-density|balanced-density.
  static std::optional<AggregationKind> parse(std::string_view name, double alpha = kDefaultAlpha,
                                              double beta = kDefaultBeta) {
    for (Aggregation a : kAllAggregations) {
      if (name == cli_name(a)) return of(a, alpha, beta);
    }
    return std::nullopt;
  }

  static constexpr std::string_view cli_name(Aggregation a) {
    switch (a) {
      case Aggregation::Min: return "min";
      case Aggregation::Max: return "max";
      case Aggregation::Sum: return "sum";
      case Aggregation::SumSurplus: return "sum-surplus";
      case Aggregation::Avg: return "avg";
      case Aggregation::WeightDensity: return "weight-density";
      case Aggregation::BalancedDensity: return "balanced-density";
    }
    return "?";
  }

  Aggregation kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return cli_name(kind_); }

  /// alpha for SumSurplus, beta for WeightDensity, nothing otherwise.
  std::optional<double> parameter() const noexcept { return param_; }

  friend bool operator==(const AggregationKind&, const AggregationKind&) = default;

 private:
  explicit AggregationKind(Aggregation kind, std::optional<double> param = std::nullopt)
      : kind_(kind), param_(param) {}

  Aggregation kind_;
  std::optional<double> param_;
};

inline FunctionTraits traits(const AggregationKind& kind) {
  switch (kind.kind()) {
    case Aggregation::Min: return {true, false, true, false, Hardness::P};
    case Aggregation::Max: return {true, false, true, true, Hardness::P};
    case Aggregation::Sum: return {false, true, true, true, Hardness::P};
    case Aggregation::SumSurplus:
      // A negative alpha turns this into weight density with beta = -alpha.
      if (*kind.parameter() >= 0.0) return {false, true, true, true, Hardness::P};
      return {false, false, true, false, Hardness::NPHard};
    case Aggregation::Avg: return {false, false, false, false, Hardness::NPHard};
    case Aggregation::WeightDensity: return {false, false, true, false, Hardness::NPHard};
    case Aggregation::BalancedDensity: return {false, false, false, false, Hardness::NPHard};
  }
  return {};
}

/// Value of an aggregation from the sufficient statistics of a vertex set:
/// its weight sum and size, plus the weight of the whole graph. Returns
/// nothing for balanced density when the denominator is not positive.
/// Not meaningful for Min/Max, which need the individual weights.
inline std::optional<double> value_from_totals(const AggregationKind& kind, double sum, std::size_t count,
                                               double graph_total) {
  const double size = static_cast<double>(count);
  switch (kind.kind()) {
    case Aggregation::Sum: return sum;
    case Aggregation::SumSurplus: return sum + *kind.parameter() * size;
    case Aggregation::Avg: return sum / size;
    case Aggregation::WeightDensity: return sum - *kind.parameter() * size;
    case Aggregation::BalancedDensity: {
      const double denom = sum - (graph_total - sum);
      if (!(denom > 0.0)) return std::nullopt;
      return sum / denom;
    }
    case Aggregation::Min:
    case Aggregation::Max: break;
  }
  throw ContractError("min/max cannot be evaluated from totals");
}

/// Influence value f(H), or nothing when f is undefined on H (balanced
/// density with non-positive denominator). Throws DomainError on empty H.
///
/// Sums are accumulated in the order the members are given; callers pass
/// ascending ids so equal sets always produce bit-identical values.
inline std::optional<double> try_evaluate(const AggregationKind& kind, const WeightedGraph& g,
                                          std::span<const VertexId> members) {
  if (members.empty()) throw DomainError("influence value of an empty vertex set");
  switch (kind.kind()) {
    case Aggregation::Min: {
      double best = g.weight(members.front());
      for (VertexId v : members) best = std::min(best, g.weight(v));
      return best;
    }
    case Aggregation::Max: {
      double best = g.weight(members.front());
      for (VertexId v : members) best = std::max(best, g.weight(v));
      return best;
    }
    default: break;
  }
  double sum = 0.0;
  for (VertexId v : members) sum += g.weight(v);
  return value_from_totals(kind, sum, members.size(), g.total_weight());
}

inline double evaluate(const AggregationKind& kind, const WeightedGraph& g, std::span<const VertexId> members) {
  auto value = try_evaluate(kind, g, members);
  if (!value) throw SingularityError("balanced density denominator w(H) - w(V\\H) is not positive");
  return *value;
}

/// g(H) = [min induced degree of H >= k] * f(H); degenerate inputs give 0.
inline double objective(const AggregationKind& kind, const WeightedGraph& g, std::span<const VertexId> members,
                        std::uint32_t k) {
  if (members.empty()) return 0.0;
  std::vector<VertexId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  SubgraphView view(g, sorted);
  if (view.min_degree() < k) return 0.0;
  return try_evaluate(kind, g, view.members()).value_or(0.0);
}

/// Running weight sum and size of a vertex set, for kinds whose value
/// depends only on those two numbers (everything except Min/Max).
class TotalsAccumulator {
 public:
  void add(double w) { sum_ += w, ++count_; }
  void remove(double w) { sum_ -= w, --count_; }
  double sum() const noexcept { return sum_; }
  std::size_t count() const noexcept { return count_; }

 private:
  double sum_ = 0.0;
  std::size_t count_ = 0;
};

/// Value of H minus one vertex, using the cached sum of H. Only valid for
/// kinds that value_from_totals supports.
inline std::optional<double> value_without(const AggregationKind& kind, const WeightedGraph& g, double sum,
                                           std::size_t count, VertexId removed) {
  if (count <= 1) return std::nullopt;
  return value_from_totals(kind, sum - g.weight(removed), count - 1, g.total_weight());
}

/// True when adding a vertex of weight `w` to a set never changes the value,
/// for kinds where that decision is per vertex. `reference` is the current
/// value of the set. Returns nothing for kinds without a per-vertex rule
/// (Avg, WeightDensity), where neutral additions can only be found by
/// looking at combinations.
inline std::optional<bool> neutral_addition(const AggregationKind& kind, double w, double reference) {
  switch (kind.kind()) {
    case Aggregation::Min: return w >= reference;
    case Aggregation::Max: return w <= reference;
    case Aggregation::Sum:
    case Aggregation::BalancedDensity: return w == 0.0;
    case Aggregation::SumSurplus:
      if (*kind.parameter() < 0.0) return std::nullopt;
      return w + *kind.parameter() == 0.0;
    case Aggregation::Avg:
    case Aggregation::WeightDensity: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace infcomm
