#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "kswitch/graph.hpp"
#include "kswitch/random.hpp"

namespace kswitch::testing {

inline Graph make_graph(std::vector<std::pair<std::int64_t, std::int64_t>> pairs, bool directed,
                        std::optional<std::size_t> n = std::nullopt) {
  return Graph::from_edge_list(pairs, directed, n);
}

inline Graph three_cycle() { return make_graph({{0, 1}, {1, 2}, {2, 0}}, true); }

// Toy bipartite graph: A = 0..4 with out-degrees 2,2,2,1,1; B = 5..8 with in-degrees 3,2,2,1.
inline Graph c0_starter() {
  return make_graph({{0, 5}, {0, 6}, {1, 5}, {1, 6}, {2, 5}, {2, 8}, {3, 7}, {4, 7}}, true);
}

// n_triangles disjoint oriented R->G->B->R triangles.
inline Graph rgb_triangles(std::size_t n_triangles) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  std::vector<Color> colors;
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(n_triangles); ++t) {
    pairs.emplace_back(3 * t, 3 * t + 1);
    pairs.emplace_back(3 * t + 1, 3 * t + 2);
    pairs.emplace_back(3 * t + 2, 3 * t);
    colors.insert(colors.end(), {Color::R, Color::G, Color::B});
  }
  Graph g = make_graph(pairs, true, 3 * n_triangles);
  g.set_colors(colors);
  return g;
}

// Uniform simple graph with exactly m edges (m must fit).
inline Graph random_graph(std::size_t n, std::size_t m, bool directed, Rng& rng) {
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  while (pairs.size() < m) {
    auto u = static_cast<std::int64_t>(uniform_below(rng, n));
    auto v = static_cast<std::int64_t>(uniform_below(rng, n));
    if (u == v) continue;
    if (!directed && v < u) std::swap(u, v);
    if (seen.insert({u, v}).second) pairs.emplace_back(u, v);
  }
  return make_graph(pairs, directed, n);
}

// Nodes grouped into random triples; each triple gets a random orientation.
inline Graph random_triangle_partition(std::size_t n_triangles, Rng& rng) {
  const std::size_t n = 3 * n_triangles;
  std::vector<std::int64_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::int64_t>(i);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_below(rng, i + 1)]);
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::size_t t = 0; t < n_triangles; ++t) {
    std::int64_t a = order[3 * t], b = order[3 * t + 1], c = order[3 * t + 2];
    if (rng() & 1U) std::swap(b, c);
    pairs.insert(pairs.end(), {{a, b}, {b, c}, {c, a}});
  }
  std::vector<Color> colors(n);
  for (std::size_t i = 0; i < n; ++i) colors[i] = static_cast<Color>(i % 3);
  Graph g = make_graph(pairs, true, n);
  g.set_colors(colors);
  return g;
}

}  // namespace kswitch::testing
