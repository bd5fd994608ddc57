#pragma once

#include <string_view>

#include "kswitch/constraint.hpp"
#include "kswitch/error.hpp"
#include "kswitch/graph.hpp"
#include "kswitch/motifs.hpp"

namespace kswitch {

/// Undirected graph keeping its number of triangles.
class TriangleCount {
 public:
  explicit TriangleCount(std::size_t target) : target_(target) {}

  static TriangleCount from_starter(const Graph& g0) {
    if (g0.directed()) throw Error(ErrorCode::InvalidArgument, "triangles needs an undirected graph");
    return TriangleCount(count_undirected_triangles(g0));
  }

  std::string_view name() const { return "triangles"; }
  std::size_t target() const { return target_; }

  bool check_full(const Graph& g) const { return count_undirected_triangles(g) == target_; }
  bool check_incremental(const Graph& g, const EdgeDelta& d) const { return triangle_change(g, d) == 0; }

 private:
  std::size_t target_;
};

}  // namespace kswitch
