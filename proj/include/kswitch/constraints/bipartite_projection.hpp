#pragma once

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

#include "kswitch/constraint.hpp"
#include "kswitch/error.hpp"
#include "kswitch/graph.hpp"

namespace kswitch {

namespace detail {

/// An edge crosses the bipartition (and points from the side when directed).
inline bool crosses(const Edge& e, const std::vector<char>& side, bool directed) {
  if (directed) return side[e.source] && !side[e.target];
  return side[e.source] != side[e.target];
}

/// Visit marks that reset in O(1) by bumping a stamp.
class StampSet {
 public:
  void reset(std::size_t n) {
    if (mark_.size() < n) mark_.resize(n, 0);
    if (++stamp_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      stamp_ = 1;
    }
  }
  /// True the first time x is inserted since the last reset.
  bool insert(NodeId x) {
    if (mark_[x] == stamp_) return false;
    mark_[x] = stamp_;
    return true;
  }

 private:
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

/// Number of distinct same-side nodes sharing at least one neighbor with x.
template <class View>
std::size_t projected_degree(const View& g, NodeId x, StampSet& seen, std::size_t n_nodes) {
  seen.reset(n_nodes);
  seen.insert(x);
  std::size_t count = 0;
  g.for_each_out(x, [&](NodeId b) {
    g.for_each_in(b, [&](NodeId y) { count += seen.insert(y); });
  });
  return count;
}

}  // namespace detail

/// Degrees of the one-mode projection onto `side`, sorted ascending. Two side
/// nodes are linked iff they share a neighbor; shared-neighbor multiplicity
/// is ignored.
inline std::vector<std::size_t> projection_degrees(const Graph& g, const std::vector<char>& side) {
  if (side.size() != g.num_nodes()) throw Error(ErrorCode::InvalidArgument, "side mask size mismatch");
  for (const Edge& e : g.edges()) {
    if (!detail::crosses(e, side, g.directed())) {
      throw Error(ErrorCode::NotBipartite,
                  "edge (" + std::to_string(e.source) + "," + std::to_string(e.target) + ") does not cross sides");
    }
  }
  PlainView view(g);
  detail::StampSet seen;
  std::vector<std::size_t> degrees;
  for (NodeId x = 0; x < g.num_nodes(); ++x) {
    if (side[x]) degrees.push_back(detail::projected_degree(view, x, seen, g.num_nodes()));
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

/// Bipartite graph whose projection onto one side keeps its degree multiset.
///
/// For directed input the side is the set of nodes with in-degree zero in the
/// starter (arcs run from the side to the other side).
class BipartiteProjection {
 public:
  BipartiteProjection(std::vector<char> side, std::vector<std::size_t> target_degrees)
      : side_(std::move(side)), target_(std::move(target_degrees)) {}

  static BipartiteProjection from_starter(const Graph& g0, std::vector<char> side) {
    auto degrees = projection_degrees(g0, side);
    return BipartiteProjection(std::move(side), std::move(degrees));
  }

  static BipartiteProjection from_starter(const Graph& g0) {
    if (!g0.directed()) {
      throw Error(ErrorCode::InvalidArgument, "undirected bipartite input needs an explicit side");
    }
    std::vector<char> side(g0.num_nodes(), 0);
    for (NodeId u = 0; u < g0.num_nodes(); ++u) side[u] = g0.in_degree(u) == 0 ? 1 : 0;
    return from_starter(g0, std::move(side));
  }

  std::string_view name() const { return "c0"; }
  const std::vector<char>& side() const { return side_; }
  const std::vector<std::size_t>& target() const { return target_; }

  bool check_full(const Graph& g) const {
    for (const Edge& e : g.edges()) {
      if (!detail::crosses(e, side_, g.directed())) return false;
    }
    return projection_degrees(g, side_) == target_;
  }

  /// Recomputes projected degrees only for side nodes adjacent, before or
  /// after the switch, to an other-side endpoint of a switched edge.
  bool check_incremental(const Graph& g, const EdgeDelta& d) const {
    for (const Edge& e : d.added) {
      if (!detail::crosses(e, side_, g.directed())) return false;
    }
    PlainView before(g);
    SwitchedView after(g, d);

    // Reused across calls; the constraint itself is shared between walks.
    thread_local std::vector<NodeId> affected;
    thread_local std::vector<std::size_t> old_deg;
    thread_local std::vector<std::size_t> new_deg;
    thread_local detail::StampSet seen;
    affected.clear();
    old_deg.clear();
    new_deg.clear();
    const std::size_t n = g.num_nodes();
    seen.reset(n);
    auto add = [&](NodeId y) {
      if (seen.insert(y)) affected.push_back(y);
    };
    auto collect = [&](const Edge& e) {
      const NodeId far = side_[e.source] ? e.target : e.source;
      before.for_each_in(far, add);
      after.for_each_in(far, add);
    };
    for (const Edge& e : d.removed) collect(e);
    for (const Edge& e : d.added) collect(e);

    for (NodeId x : affected) {
      old_deg.push_back(detail::projected_degree(before, x, seen, n));
      new_deg.push_back(detail::projected_degree(after, x, seen, n));
    }
    std::sort(old_deg.begin(), old_deg.end());
    std::sort(new_deg.begin(), new_deg.end());
    return old_deg == new_deg;
  }

 private:
  std::vector<char> side_;
  std::vector<std::size_t> target_;
};

}  // namespace kswitch
