#pragma once

#include <algorithm>
#include <deque>
#include <string_view>
#include <vector>

#include "kswitch/constraint.hpp"
#include "kswitch/graph.hpp"

namespace kswitch {

namespace detail {

/// Size of the (weakly) connected component of `start`; marks it in `seen`.
template <class View>
std::size_t component_from(const View& g, NodeId start, std::vector<char>& seen, std::vector<NodeId>& queue) {
  queue.clear();
  queue.push_back(start);
  seen[start] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    auto visit = [&](NodeId v) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    };
    g.for_each_out(u, visit);
    if (g.directed()) g.for_each_in(u, visit);
  }
  return queue.size();
}

}  // namespace detail

/// Sorted sizes of connected components (weak components when directed).
inline std::vector<std::size_t> component_size_multiset(const Graph& g) {
  PlainView view(g);
  std::vector<char> seen(g.num_nodes(), 0);
  std::vector<NodeId> queue;
  std::vector<std::size_t> sizes;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (!seen[u]) sizes.push_back(detail::component_from(view, u, seen, queue));
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

/// Fixed multiset of connected-component sizes.
class ComponentSizes {
 public:
  explicit ComponentSizes(std::vector<std::size_t> target) : target_(std::move(target)) {}

  static ComponentSizes from_starter(const Graph& g0) { return ComponentSizes(component_size_multiset(g0)); }

  std::string_view name() const { return "components"; }
  const std::vector<std::size_t>& target() const { return target_; }

  bool check_full(const Graph& g) const { return component_size_multiset(g) == target_; }

  /// Components that contain no endpoint of a switched edge are untouched,
  /// so it suffices to compare the sizes of the components reached by BFS
  /// from those endpoints before and after the switch.
  bool check_incremental(const Graph& g, const EdgeDelta& d) const {
    std::vector<NodeId> seeds;
    for (const Edge& e : d.removed) {
      seeds.push_back(e.source);
      seeds.push_back(e.target);
    }
    for (const Edge& e : d.added) {
      seeds.push_back(e.source);
      seeds.push_back(e.target);
    }
    auto sizes_from = [&](const auto& view) {
      std::vector<char> seen(g.num_nodes(), 0);
      std::vector<NodeId> queue;
      std::vector<std::size_t> sizes;
      for (NodeId s : seeds) {
        if (!seen[s]) sizes.push_back(detail::component_from(view, s, seen, queue));
      }
      std::sort(sizes.begin(), sizes.end());
      return sizes;
    };
    return sizes_from(PlainView(g)) == sizes_from(SwitchedView(g, d));
  }

 private:
  std::vector<std::size_t> target_;
};

}  // namespace kswitch
