#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kswitch/constraint.hpp"
#include "kswitch/error.hpp"
#include "kswitch/graph.hpp"

namespace kswitch {

/// Oriented 3-cycles a->b->c->a that use the arc (a, b), i.e. the
/// out-neighbors of b that are also in-neighbors of a. The arc itself need
/// not be present in the view.
template <class View>
std::size_t cycles_through_arc(const View& g, NodeId a, NodeId b) {
  std::size_t count = 0;
  g.for_each_out(b, [&](NodeId c) {
    if (c != a && g.has_edge(c, a)) ++count;
  });
  return count;
}

/// Undirected triangles that use the pair {u, v}.
template <class View>
std::size_t triangles_through_edge(const View& g, NodeId u, NodeId v) {
  std::size_t count = 0;
  g.for_each_out(u, [&](NodeId w) {
    if (w != v && g.has_edge(v, w)) ++count;
  });
  return count;
}

/// Net change in the triangle count (oriented 3-cycles when directed) caused
/// by the delta. Removals are applied one at a time before additions, so a
/// triangle touching several switched edges is counted exactly once.
inline std::int64_t triangle_change(const Graph& g, const EdgeDelta& delta) {
  SwitchedView view(g, delta);
  std::int64_t change = 0;
  auto through = [&](const Edge& e) {
    return static_cast<std::int64_t>(g.directed() ? cycles_through_arc(view, e.source, e.target)
                                                  : triangles_through_edge(view, e.source, e.target));
  };
  for (std::size_t i = 0; i < delta.removed.size(); ++i) {
    view.set_prefix(i, 0);
    change -= through(delta.removed[i]);
  }
  for (std::size_t i = 0; i < delta.added.size(); ++i) {
    view.set_prefix(delta.removed.size(), i);
    change += through(delta.added[i]);
  }
  return change;
}

inline std::size_t count_directed_triangles(const Graph& g) {
  if (!g.directed()) throw Error(ErrorCode::InvalidArgument, "directed triangles need a directed graph");
  PlainView view(g);
  std::size_t total = 0;
  for (const Edge& e : g.edges()) total += cycles_through_arc(view, e.source, e.target);
  return total / 3;
}

inline std::size_t count_undirected_triangles(const Graph& g) {
  if (g.directed()) throw Error(ErrorCode::InvalidArgument, "undirected triangles need an undirected graph");
  PlainView view(g);
  std::size_t total = 0;
  for (const Edge& e : g.edges()) total += triangles_through_edge(view, e.source, e.target);
  return total / 3;
}

/// Subgraph (not induced) counts of the connected 4-node motifs.
struct Motif4Counts {
  std::uint64_t triangles = 0;
  std::uint64_t paths = 0;
  std::uint64_t stars = 0;
  std::uint64_t cycles = 0;
  std::uint64_t cliques = 0;

  friend bool operator==(const Motif4Counts&, const Motif4Counts&) = default;
};

inline Motif4Counts count_motifs4(const Graph& g) {
  if (g.directed()) throw Error(ErrorCode::InvalidArgument, "4-node motifs need an undirected graph");
  const std::size_t n = g.num_nodes();
  Motif4Counts m;
  m.triangles = count_undirected_triangles(g);

  for (NodeId v = 0; v < n; ++v) {
    const std::uint64_t d = g.out_degree(v);
    if (d >= 3) m.stars += d * (d - 1) * (d - 2) / 6;
  }

  // Each 3-edge walk u-v-w-x with distinct nodes is a path, except those
  // closing a triangle (x == u), which the middle-edge product also counts.
  std::uint64_t middle = 0;
  for (const Edge& e : g.edges()) {
    middle += (g.out_degree(e.source) - 1) * (g.out_degree(e.target) - 1);
  }
  m.paths = middle - 3 * m.triangles;

  // 4-cycles from wedge counts: a cycle is seen from both diagonals, each in
  // both directions.
  std::vector<std::uint32_t> wedges(n, 0);
  std::vector<NodeId> touched;
  std::uint64_t cycle_total = 0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) {
      for (NodeId w : g.neighbors(v)) {
        if (w == u) continue;
        if (wedges[w]++ == 0) touched.push_back(w);
      }
    }
    for (NodeId w : touched) {
      const std::uint64_t c = wedges[w];
      cycle_total += c * (c - 1) / 2;
      wedges[w] = 0;
    }
    touched.clear();
  }
  m.cycles = cycle_total / 4;

  // 4-cliques listed once each as u < v < w < x.
  std::vector<NodeId> common;
  for (const Edge& e : g.edges()) {
    const NodeId u = e.source;
    const NodeId v = e.target;
    common.clear();
    for (NodeId w : g.neighbors(u)) {
      if (w > v && g.has_edge(v, w)) common.push_back(w);
    }
    for (std::size_t i = 0; i < common.size(); ++i) {
      for (std::size_t j = i + 1; j < common.size(); ++j) {
        if (g.has_edge(common[i], common[j])) ++m.cliques;
      }
    }
  }
  return m;
}

/// Row labels of the colored-triangle table; the histogram below uses this order.
inline constexpr std::array<std::string_view, 11> kTriangleTypes = {
    "R-R-R", "G-G-G", "B-B-B", "R-G-G", "R-B-B", "G-G-B", "G-B-B", "R-R-B", "R-R-G", "R-B-G", "R-G-B"};

using TriangleTypeHistogram = std::array<std::size_t, 11>;

/// Classifies each oriented 3-cycle of a graph made only of disjoint oriented
/// 3-cycles. Mono- and bichromatic cycles are classified by color content;
/// trichromatic ones by the color following red along the orientation.
inline TriangleTypeHistogram colored_triangle_histogram(const Graph& g, const std::vector<Color>& colors) {
  if (colors.size() != g.num_nodes()) throw Error(ErrorCode::MissingColorData, "color vector size mismatch");
  TriangleTypeHistogram hist{};
  std::vector<char> seen(g.num_nodes(), 0);
  auto successor = [&](NodeId u) -> NodeId {
    if (g.out_degree(u) != 1 || g.in_degree(u) != 1) {
      throw Error(ErrorCode::NotTrianglePartition, "node " + std::to_string(u) + " lacks in/out degree 1");
    }
    return g.out_neighbors(u)[0];
  };
  for (NodeId a = 0; a < g.num_nodes(); ++a) {
    if (seen[a]) continue;
    const NodeId b = successor(a);
    const NodeId c = successor(b);
    if (successor(c) != a || a == c) {
      throw Error(ErrorCode::NotTrianglePartition, "node " + std::to_string(a) + " is not on a 3-cycle");
    }
    seen[a] = seen[b] = seen[c] = 1;

    std::array<int, 3> n{};
    for (NodeId x : {a, b, c}) ++n[static_cast<int>(colors[x])];
    const int r = n[0];
    const int gr = n[1];
    const int bl = n[2];
    std::size_t type = 0;
    if (r == 3) type = 0;
    else if (gr == 3) type = 1;
    else if (bl == 3) type = 2;
    else if (r == 1 && gr == 2) type = 3;
    else if (r == 1 && bl == 2) type = 4;
    else if (gr == 2 && bl == 1) type = 5;
    else if (gr == 1 && bl == 2) type = 6;
    else if (r == 2 && bl == 1) type = 7;
    else if (r == 2 && gr == 1) type = 8;
    else {
      NodeId red = colors[a] == Color::R ? a : colors[b] == Color::R ? b : c;
      type = colors[g.out_neighbors(red)[0]] == Color::G ? 10 : 9;
    }
    ++hist[type];
  }
  return hist;
}

}  // namespace kswitch
