#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "infcomm/community.hpp"
#include "infcomm/error.hpp"
#include "infcomm/graph.hpp"
#include "infcomm/subgraph.hpp"

namespace infcomm {

struct GraphStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t kmax = 0;
};

inline GraphStats graph_stats(const WeightedGraph& g) { return {g.num_vertices(), g.num_edges(), max_core(g)}; }

inline nlohmann::json to_json(const GraphStats& s) { return {{"n", s.n}, {"m", s.m}, {"kmax", s.kmax}}; }

/// Ranked communities with members given as external labels, ascending.
inline nlohmann::json communities_json(const WeightedGraph& g, const ResultList& list) {
  auto out = nlohmann::json::array();
  std::size_t rank = 0;
  for (const auto& c : list) {
    std::vector<Label> labels;
    labels.reserve(c.members.size());
    for (VertexId v : c.members) labels.push_back(g.label(v));
    std::sort(labels.begin(), labels.end());
    out.push_back({{"rank", ++rank}, {"value", c.value}, {"size", c.members.size()}, {"members", labels}});
  }
  return out;
}

/// Reads the ranked values back out of a report produced by `search` or
/// `oracle`. Members are not resolved; only the values matter for scoring.
inline ResultList values_from_report(const nlohmann::json& report) {
  if (!report.is_object() || !report.contains("communities") || !report["communities"].is_array()) {
    throw DomainError("report has no \"communities\" array");
  }
  std::vector<Community> entries;
  for (const auto& c : report["communities"]) {
    if (!c.contains("value") || !c["value"].is_number()) throw DomainError("community without a numeric value");
    Community x;
    x.value = c["value"].get<double>();
    entries.push_back(std::move(x));
  }
  return ResultList::from_ranked(std::move(entries));
}

}  // namespace infcomm
