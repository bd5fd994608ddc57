#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kswitch/error.hpp"
#include "kswitch/random.hpp"

namespace kswitch {

using NodeId = std::uint32_t;

struct Edge {
  NodeId source = 0;
  NodeId target = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected edges are stored with source < target.
constexpr Edge canonical(Edge e, bool directed) noexcept {
  if (!directed && e.target < e.source) std::swap(e.source, e.target);
  return e;
}

enum class Color : std::uint8_t { R = 0, G = 1, B = 2 };

constexpr char color_letter(Color c) noexcept { return "RGB"[static_cast<int>(c)]; }

struct DegreeSequences {
  std::vector<std::size_t> out;
  std::vector<std::size_t> in;

  friend bool operator==(const DegreeSequences&, const DegreeSequences&) = default;
};

/// Simple graph (no self-loops, no parallel edges) kept in two synchronized
/// forms: an edge array for O(1) uniform edge selection and per-node
/// adjacency lists for O(degree) neighborhood queries.
///
/// For undirected graphs the adjacency list of a node holds all its
/// neighbors and in_neighbors() aliases out_neighbors().
/// Adjacency lists are unsorted; membership is a linear scan.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n_nodes, bool directed)
      : directed_(directed), out_(n_nodes), in_(directed ? n_nodes : 0) {}

  /// Builds a graph from integer pairs. Node ids must already be dense in
  /// [0, n_nodes); n_nodes defaults to one past the largest id seen.
  static Graph from_edge_list(std::span<const std::pair<std::int64_t, std::int64_t>> pairs,
                              bool directed, std::optional<std::size_t> n_nodes = std::nullopt) {
    std::int64_t max_id = -1;
    for (const auto& [u, v] : pairs) {
      if (u < 0 || v < 0) {
        throw Error(ErrorCode::NodeOutOfRange, "negative node id");
      }
      max_id = std::max({max_id, u, v});
    }
    const std::size_t n = n_nodes.value_or(static_cast<std::size_t>(max_id + 1));
    if (max_id >= 0 && static_cast<std::size_t>(max_id) >= n) {
      throw Error(ErrorCode::NodeOutOfRange,
                  "node id " + std::to_string(max_id) + " >= n_nodes " + std::to_string(n));
    }

    Graph g(n, directed);
    g.edges_.reserve(pairs.size());
    for (const auto& [u, v] : pairs) {
      if (u == v) throw Error(ErrorCode::SelfLoop, "self-loop on node " + std::to_string(u));
      g.edges_.push_back(canonical(Edge{static_cast<NodeId>(u), static_cast<NodeId>(v)}, directed));
    }

    std::vector<Edge> sorted = g.edges_;
    std::sort(sorted.begin(), sorted.end());
    if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end()) {
      throw Error(ErrorCode::DuplicateEdge,
                  "(" + std::to_string(it->source) + "," + std::to_string(it->target) + ")");
    }
    for (const Edge& e : g.edges_) g.link(e);
    return g;
  }

  static Graph from_edges(std::span<const Edge> edges, bool directed, std::size_t n_nodes) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    pairs.reserve(edges.size());
    for (const Edge& e : edges) pairs.emplace_back(e.source, e.target);
    return from_edge_list(pairs, directed, n_nodes);
  }

  bool directed() const noexcept { return directed_; }
  std::size_t num_nodes() const noexcept { return out_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t slot) const { return edges_[slot]; }

  std::span<const NodeId> out_neighbors(NodeId u) const { return out_[u]; }
  std::span<const NodeId> in_neighbors(NodeId u) const { return directed_ ? in_[u] : out_[u]; }
  std::span<const NodeId> neighbors(NodeId u) const { return out_[u]; }

  std::size_t out_degree(NodeId u) const { return out_[u].size(); }
  std::size_t in_degree(NodeId u) const { return directed_ ? in_[u].size() : out_[u].size(); }

  /// O(min(deg)) scan. For undirected graphs the pair is unordered.
  bool has_edge(NodeId a, NodeId b) const {
    if (directed_) {
      const auto& fwd = out_[a];
      const auto& bwd = in_[b];
      if (fwd.size() <= bwd.size()) return std::find(fwd.begin(), fwd.end(), b) != fwd.end();
      return std::find(bwd.begin(), bwd.end(), a) != bwd.end();
    }
    const auto& na = out_[a];
    const auto& nb = out_[b];
    if (na.size() <= nb.size()) return std::find(na.begin(), na.end(), b) != na.end();
    return std::find(nb.begin(), nb.end(), a) != nb.end();
  }

  /// Uniform k-subset of edge slots, written to `out` in random order.
  /// Rejection sampling while k is small against M, partial shuffle otherwise.
  void random_edge_indices(std::size_t k, Rng& rng, std::vector<std::size_t>& out) const {
    const std::size_t m = edges_.size();
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "switch order k must be >= 2");
    if (k > m) {
      throw Error(ErrorCode::KTooLarge,
                  "k=" + std::to_string(k) + " exceeds edge count " + std::to_string(m));
    }
    out.clear();
    if (2 * k <= m) {
      while (out.size() < k) {
        const std::size_t slot = uniform_below(rng, m);
        if (std::find(out.begin(), out.end(), slot) == out.end()) out.push_back(slot);
      }
      return;
    }
    std::vector<std::size_t> pool(m);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(pool[i], pool[i + uniform_below(rng, m - i)]);
    }
    out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  }

  std::vector<std::size_t> random_edge_indices(std::size_t k, Rng& rng) const {
    std::vector<std::size_t> out;
    random_edge_indices(k, rng, out);
    return out;
  }

  /// Directed switch: slot i keeps its source and receives new_targets[i].
  void apply_switch(std::span<const std::size_t> slots, std::span<const NodeId> new_targets) {
    std::vector<Edge> replacement(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
      replacement[i] = Edge{edges_[slots[i]].source, new_targets[i]};
    }
    replace_edges(slots, replacement);
  }

  /// Overwrites the given slots. The caller guarantees the result is simple.
  /// All removals happen before any insertion so replacements may reuse edges
  /// freed by other slots of the same call.
  void replace_edges(std::span<const std::size_t> slots, std::span<const Edge> replacements) {
    for (std::size_t slot : slots) unlink(edges_[slot]);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      edges_[slots[i]] = canonical(replacements[i], directed_);
      link(edges_[slots[i]]);
    }
  }

  DegreeSequences degree_sequences() const {
    DegreeSequences d;
    d.out.resize(num_nodes());
    d.in.resize(num_nodes());
    for (NodeId u = 0; u < num_nodes(); ++u) {
      d.out[u] = out_degree(u);
      d.in[u] = in_degree(u);
    }
    return d;
  }

  void set_colors(std::vector<Color> colors) {
    if (colors.size() != num_nodes()) {
      throw Error(ErrorCode::InvalidArgument, "color vector size differs from node count");
    }
    colors_ = std::move(colors);
  }
  const std::optional<std::vector<Color>>& colors() const noexcept { return colors_; }

  /// Sorted edge list; the identity of a labeled graph.
  std::vector<Edge> sorted_edges() const {
    std::vector<Edge> e = edges_;
    std::sort(e.begin(), e.end());
    return e;
  }

  /// Rebuilds adjacency from the edge array and compares as multisets.
  bool adjacency_consistent() const {
    Graph rebuilt(num_nodes(), directed_);
    for (const Edge& e : edges_) rebuilt.link(e);
    auto same = [](std::vector<std::vector<NodeId>> a, std::vector<std::vector<NodeId>> b) {
      for (auto& v : a) std::sort(v.begin(), v.end());
      for (auto& v : b) std::sort(v.begin(), v.end());
      return a == b;
    };
    return same(out_, rebuilt.out_) && same(in_, rebuilt.in_);
  }

  /// Bytes held by the edge array and adjacency lists.
  std::size_t memory_bytes() const {
    std::size_t bytes = sizeof(*this) + edges_.capacity() * sizeof(Edge);
    for (const auto& v : out_) bytes += sizeof(v) + v.capacity() * sizeof(NodeId);
    for (const auto& v : in_) bytes += sizeof(v) + v.capacity() * sizeof(NodeId);
    if (colors_) bytes += colors_->capacity() * sizeof(Color);
    return bytes;
  }

  /// Bit-identical edge arrays (slot order included) and colors.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.directed_ == b.directed_ && a.out_.size() == b.out_.size() && a.edges_ == b.edges_ &&
           a.colors_ == b.colors_;
  }

 private:
  void link(const Edge& e) {
    out_[e.source].push_back(e.target);
    if (directed_) {
      in_[e.target].push_back(e.source);
    } else {
      out_[e.target].push_back(e.source);
    }
  }

  static void erase_one(std::vector<NodeId>& list, NodeId value) {
    auto it = std::find(list.begin(), list.end(), value);
    *it = list.back();
    list.pop_back();
  }

  void unlink(const Edge& e) {
    erase_one(out_[e.source], e.target);
    if (directed_) {
      erase_one(in_[e.target], e.source);
    } else {
      erase_one(out_[e.target], e.source);
    }
  }

  bool directed_ = true;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::optional<std::vector<Color>> colors_;
};

}  // namespace kswitch
