#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "kswitch/constraint.hpp"
#include "kswitch/error.hpp"
#include "kswitch/graph.hpp"
#include "kswitch/motifs.hpp"

namespace kswitch {

/// True iff every node has in- and out-degree 1 and the resulting functional
/// graph is exactly N/3 disjoint oriented 3-cycles. Colors must exist with
/// N/3 nodes of each color but do not restrict the topology.
inline bool triangle_partition_check(const Graph& g, const std::optional<std::vector<Color>>& colors) {
  if (!colors) throw Error(ErrorCode::MissingColorData, "triangle partition needs node colors");
  const std::size_t n = g.num_nodes();
  if (n % 3 != 0) throw Error(ErrorCode::NNotDivisibleBy3, "N=" + std::to_string(n));
  if (!g.directed() || colors->size() != n) return false;

  std::array<std::size_t, 3> per_color{};
  for (Color c : *colors) ++per_color[static_cast<int>(c)];
  if (per_color[0] != n / 3 || per_color[1] != n / 3 || per_color[2] != n / 3) return false;

  for (NodeId u = 0; u < n; ++u) {
    if (g.out_degree(u) != 1 || g.in_degree(u) != 1) return false;
  }
  for (NodeId a = 0; a < n; ++a) {
    const NodeId b = g.out_neighbors(a)[0];
    const NodeId c = g.out_neighbors(b)[0];
    if (c == a || g.out_neighbors(c)[0] != a) return false;
  }
  return true;
}

/// Colored nodes arranged in disjoint oriented triangles.
///
/// Switches keep every in- and out-degree at 1, so the graph stays a
/// permutation of the nodes; cycles not touching a switched source are
/// unchanged, and the switch is valid iff each switched source sits on a
/// 3-cycle afterwards. triangle_change(g, d) == 0 gives the same verdict.
class ColoredTriangles {
 public:
  explicit ColoredTriangles(std::vector<Color> colors) : colors_(std::move(colors)) {}

  static ColoredTriangles from_starter(const Graph& g0) {
    if (!g0.colors()) throw Error(ErrorCode::MissingColorData, "colored-triangles needs node colors");
    if (g0.num_nodes() % 3 != 0) throw Error(ErrorCode::NNotDivisibleBy3, "N=" + std::to_string(g0.num_nodes()));
    return ColoredTriangles(*g0.colors());
  }

  std::string_view name() const { return "colored-triangles"; }
  const std::vector<Color>& colors() const { return colors_; }

  bool check_full(const Graph& g) const { return triangle_partition_check(g, colors_); }

  bool check_incremental(const Graph& g, const EdgeDelta& d) const {
    auto next = [&](NodeId u) {
      for (const Edge& e : d.added) {
        if (e.source == u) return e.target;
      }
      return g.out_neighbors(u)[0];
    };
    for (const Edge& e : d.added) {
      const NodeId c = next(e.target);
      if (c == e.source || next(c) != e.source) return false;
    }
    return true;
  }

 private:
  std::vector<Color> colors_;
};

}  // namespace kswitch
