#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "kswitch/constraint.hpp"
#include "kswitch/error.hpp"
#include "kswitch/graph.hpp"

namespace kswitch {

using DegreePair = std::pair<std::size_t, std::size_t>;
using DegreePairHistogram = std::map<DegreePair, std::size_t>;

/// Counts arcs (a, b) by the ordered pair (out-degree(a), out-degree(b)).
inline DegreePairHistogram degree_pair_histogram(const Graph& g, const std::vector<std::size_t>& out_degree) {
  DegreePairHistogram hist;
  for (const Edge& e : g.edges()) ++hist[{out_degree[e.source], out_degree[e.target]}];
  return hist;
}

inline DegreePairHistogram degree_pair_histogram(const Graph& g) {
  return degree_pair_histogram(g, g.degree_sequences().out);
}

/// Fixed histogram of out-degree pairs over arcs. Out-degrees are stored once
/// from the starter; switches never change them.
class DegreeCorrelation {
 public:
  DegreeCorrelation(std::vector<std::size_t> out_degree, DegreePairHistogram target)
      : out_degree_(std::move(out_degree)), target_(std::move(target)) {}

  static DegreeCorrelation from_starter(const Graph& g0) {
    if (!g0.directed()) throw Error(ErrorCode::InvalidArgument, "degree-corr needs a directed graph");
    auto out = g0.degree_sequences().out;
    auto hist = degree_pair_histogram(g0, out);
    return DegreeCorrelation(std::move(out), std::move(hist));
  }

  std::string_view name() const { return "degree-corr"; }
  const std::vector<std::size_t>& frozen_out_degrees() const { return out_degree_; }
  const DegreePairHistogram& target() const { return target_; }

  bool check_full(const Graph& g) const { return degree_pair_histogram(g, out_degree_) == target_; }

  /// Buckets created must match buckets destroyed, pair for pair.
  bool check_incremental(const Graph&, const EdgeDelta& d) const {
    constexpr std::size_t kInline = 16;
    if (d.removed.size() <= kInline) {
      std::array<DegreePair, kInline> lost{};
      std::array<DegreePair, kInline> gained{};
      const std::size_t n = d.removed.size();
      for (std::size_t i = 0; i < n; ++i) {
        lost[i] = bucket(d.removed[i]);
        gained[i] = bucket(d.added[i]);
      }
      std::sort(lost.begin(), lost.begin() + n);
      std::sort(gained.begin(), gained.begin() + n);
      return std::equal(lost.begin(), lost.begin() + n, gained.begin());
    }
    std::vector<DegreePair> lost;
    std::vector<DegreePair> gained;
    for (const Edge& e : d.removed) lost.push_back(bucket(e));
    for (const Edge& e : d.added) gained.push_back(bucket(e));
    std::sort(lost.begin(), lost.end());
    std::sort(gained.begin(), gained.end());
    return lost == gained;
  }

 private:
  DegreePair bucket(const Edge& e) const { return {out_degree_[e.source], out_degree_[e.target]}; }

  std::vector<std::size_t> out_degree_;
  DegreePairHistogram target_;
};

}  // namespace kswitch
