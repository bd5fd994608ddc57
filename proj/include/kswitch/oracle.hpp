#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "kswitch/constraint.hpp"
#include "kswitch/error.hpp"
#include "kswitch/graph.hpp"
#include "kswitch/switch_engine.hpp"

namespace kswitch {

/// The fixed part of a constrained graph set: node count, orientation,
/// per-node degrees and (optionally) node colors.
struct GraphTemplate {
  bool directed = true;
  std::size_t n_nodes = 0;
  std::vector<std::size_t> out_degrees;
  std::vector<std::size_t> in_degrees;
  std::optional<std::vector<Color>> colors;

  static GraphTemplate of(const Graph& g) {
    auto d = g.degree_sequences();
    return GraphTemplate{g.directed(), g.num_nodes(), std::move(d.out), std::move(d.in), g.colors()};
  }

  std::size_t num_edges() const {
    const std::size_t total = std::accumulate(out_degrees.begin(), out_degrees.end(), std::size_t{0});
    return directed ? total : total / 2;
  }

  Graph instantiate(std::span<const Edge> edges) const {
    Graph g = Graph::from_edges(edges, directed, n_nodes);
    if (colors) g.set_colors(*colors);
    return g;
  }
};

/// Groups of nodes whose labels are considered interchangeable when
/// identifying graphs. Empty means fully labeled graphs.
using NodeClasses = std::vector<std::vector<NodeId>>;

/// Canonical encodings under relabeling within NodeClasses.
class Canonicalizer {
 public:
  static constexpr std::size_t kMaxGroupOrder = 40320;

  Canonicalizer() = default;
  Canonicalizer(std::size_t n_nodes, bool directed, const NodeClasses& classes) : directed_(directed) {
    std::vector<NodeId> identity(n_nodes);
    std::iota(identity.begin(), identity.end(), NodeId{0});
    relabelings_.push_back(identity);
    for (const auto& cls : classes) {
      std::vector<NodeId> members = cls;
      std::sort(members.begin(), members.end());
      for (NodeId u : members) {
        if (u >= n_nodes) throw Error(ErrorCode::NodeOutOfRange, "interchangeable node out of range");
      }
      std::vector<std::vector<NodeId>> next;
      std::vector<NodeId> image = members;
      do {
        for (const auto& base : relabelings_) {
          auto r = base;
          for (std::size_t i = 0; i < members.size(); ++i) r[members[i]] = image[i];
          next.push_back(std::move(r));
          if (next.size() > kMaxGroupOrder) {
            throw Error(ErrorCode::InstanceTooLarge, "interchangeable groups too large");
          }
        }
      } while (std::next_permutation(image.begin(), image.end()));
      relabelings_ = std::move(next);
    }
  }

  bool trivial() const { return relabelings_.size() <= 1; }

  /// Lexicographically smallest sorted edge list over all relabelings, and
  /// the number of distinct labeled graphs it stands for.
  std::pair<std::vector<Edge>, std::uint64_t> canonical_form(std::vector<Edge> edges) const {
    std::sort(edges.begin(), edges.end());
    if (trivial()) return {std::move(edges), 1};
    std::set<std::vector<Edge>> images;
    for (const auto& r : relabelings_) {
      std::vector<Edge> mapped(edges.size());
      for (std::size_t i = 0; i < edges.size(); ++i) {
        mapped[i] = canonical(Edge{r[edges[i].source], r[edges[i].target]}, directed_);
      }
      std::sort(mapped.begin(), mapped.end());
      images.insert(std::move(mapped));
    }
    return {*images.begin(), images.size()};
  }

 private:
  bool directed_ = true;
  std::vector<std::vector<NodeId>> relabelings_;
};

/// Every graph respecting a template and a constraint, identified by sorted
/// edge list (labeled) or by canonical form under NodeClasses.
struct GraphSet {
  GraphTemplate tmpl;
  NodeClasses interchangeable;
  Canonicalizer canon;
  std::vector<std::vector<Edge>> members;
  /// Labeled graphs represented by each member (1 when fully labeled).
  std::vector<std::uint64_t> orbit_sizes;
  std::map<std::vector<Edge>, std::size_t> index;

  std::size_t size() const { return members.size(); }
  std::uint64_t labeled_size() const {
    return std::accumulate(orbit_sizes.begin(), orbit_sizes.end(), std::uint64_t{0});
  }

  std::optional<std::size_t> find(std::vector<Edge> edges) const {
    auto key = canon.canonical_form(std::move(edges)).first;
    auto it = index.find(key);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find(const Graph& g) const {
    return find(std::vector<Edge>(g.edges().begin(), g.edges().end()));
  }

  Graph member_graph(std::size_t i) const { return tmpl.instantiate(members[i]); }
};

namespace detail {

inline void check_classes(const GraphTemplate& t, const NodeClasses& classes) {
  for (const auto& cls : classes) {
    for (NodeId u : cls) {
      if (u >= t.n_nodes) throw Error(ErrorCode::NodeOutOfRange, "interchangeable node out of range");
      const NodeId v = cls.front();
      if (t.out_degrees[u] != t.out_degrees[v] || t.in_degrees[u] != t.in_degrees[v] ||
          (t.colors && (*t.colors)[u] != (*t.colors)[v])) {
        throw Error(ErrorCode::InvalidArgument, "interchangeable nodes must share degrees and color");
      }
    }
  }
}

/// Backtracking over target assignments; calls emit(edges) for each simple
/// graph with the template's degree sequences.
class DegreeSequenceEnumerator {
 public:
  DegreeSequenceEnumerator(const GraphTemplate& t, std::uint64_t max_steps) : t_(t), max_steps_(max_steps) {}

  template <class Emit>
  void run(Emit&& emit) {
    const std::size_t n = t_.n_nodes;
    if (t_.out_degrees.size() != n || t_.in_degrees.size() != n) {
      throw Error(ErrorCode::InvalidArgument, "template degree vectors differ from node count");
    }
    cap_ = t_.directed ? t_.in_degrees : t_.out_degrees;
    const auto out_sum = std::accumulate(t_.out_degrees.begin(), t_.out_degrees.end(), std::size_t{0});
    const auto in_sum = std::accumulate(t_.in_degrees.begin(), t_.in_degrees.end(), std::size_t{0});
    if (t_.directed ? out_sum != in_sum : out_sum % 2 != 0) return;
    edges_.clear();
    node(0, emit);
  }

 private:
  template <class Emit>
  void node(NodeId v, Emit& emit) {
    if (++steps_ > max_steps_) {
      throw Error(ErrorCode::InstanceTooLarge, "enumeration exceeded " + std::to_string(max_steps_) + " steps");
    }
    if (v == t_.n_nodes) {
      if (std::all_of(cap_.begin(), cap_.end(), [](std::size_t c) { return c == 0; })) emit(edges_);
      return;
    }
    std::size_t need = 0;
    if (t_.directed) {
      need = t_.out_degrees[v];
    } else {
      need = cap_[v];
      cap_[v] = 0;
    }
    const NodeId first = t_.directed ? 0 : v + 1;
    choose(v, first, need, emit);
    if (!t_.directed) cap_[v] = need;
  }

  template <class Emit>
  void choose(NodeId v, NodeId from, std::size_t need, Emit& emit) {
    if (need == 0) {
      node(v + 1, emit);
      return;
    }
    for (NodeId w = from; w < t_.n_nodes; ++w) {
      if (w == v || cap_[w] == 0) continue;
      --cap_[w];
      edges_.push_back(Edge{v, w});
      choose(v, w + 1, need - 1, emit);
      edges_.pop_back();
      ++cap_[w];
    }
  }

  const GraphTemplate& t_;
  std::uint64_t max_steps_;
  std::uint64_t steps_ = 0;
  std::vector<std::size_t> cap_;
  std::vector<Edge> edges_;
};

inline std::uint64_t factorial(std::size_t k) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

/// Exhaustive enumeration of the constrained graph set.
template <SwitchConstraint C>
GraphSet enumerate_graph_set(const GraphTemplate& tmpl, const C& c, const NodeClasses& interchangeable = {},
                             std::uint64_t max_steps = 10'000'000) {
  detail::check_classes(tmpl, interchangeable);
  GraphSet set;
  set.tmpl = tmpl;
  set.interchangeable = interchangeable;
  set.canon = Canonicalizer(tmpl.n_nodes, tmpl.directed, interchangeable);

  std::map<std::vector<Edge>, std::uint64_t> found;
  detail::DegreeSequenceEnumerator(tmpl, max_steps).run([&](const std::vector<Edge>& edges) {
    if (!c.check_full(tmpl.instantiate(edges))) return;
    auto [key, orbit] = set.canon.canonical_form(edges);
    found.emplace(std::move(key), orbit);
  });

  for (auto& [key, orbit] : found) {
    set.index.emplace(key, set.members.size());
    set.members.push_back(key);
    set.orbit_sizes.push_back(orbit);
  }
  return set;
}

/// Transition counts of the k-switch chain over a graph set. Every
/// (edge subset, permutation[, orientation]) trial is one unit; rejected and
/// no-op trials land on the diagonal.
struct MarkovGraph {
  std::size_t k = 0;
  std::uint64_t trial_total = 0;
  std::vector<std::map<std::size_t, std::uint64_t>> transitions;
  std::vector<std::uint64_t> orbit_sizes;

  std::size_t size() const { return transitions.size(); }

  std::uint64_t count(std::size_t from, std::size_t to) const {
    auto it = transitions[from].find(to);
    return it == transitions[from].end() ? 0 : it->second;
  }
};

/// Enumerates all C(M,k) slot subsets x k! permutations (x 2^k orientations
/// when undirected) from every member, resolving each trial through the
/// switch engine's validate().
template <SwitchConstraint C>
MarkovGraph build_markov_graph(const GraphSet& set, std::size_t k, const C& c) {
  const std::size_t m = set.tmpl.num_edges();
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "switch order k must be >= 2");
  if (k > m) throw Error(ErrorCode::KTooLarge, "k=" + std::to_string(k) + " exceeds M=" + std::to_string(m));
  const bool directed = set.tmpl.directed;
  const std::uint64_t orientations = directed ? 1 : (std::uint64_t{1} << k);

  MarkovGraph mg;
  mg.k = k;
  mg.trial_total = detail::binomial(m, k) * detail::factorial(k) * orientations;
  mg.transitions.resize(set.size());
  mg.orbit_sizes = set.orbit_sizes;

  std::vector<std::size_t> slots(k);
  std::vector<std::size_t> perm(k);
  bool flips[64] = {};
  SwitchProposal p;
  EdgeDelta delta;

  for (std::size_t from = 0; from < set.size(); ++from) {
    const Graph g = set.member_graph(from);
    auto& row = mg.transitions[from];
    std::vector<char> pick(m, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
    do {
      std::size_t j = 0;
      for (std::size_t s = 0; s < m; ++s) {
        if (pick[s]) slots[j++] = s;
      }
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      do {
        for (std::uint64_t mask = 0; mask < orientations; ++mask) {
          for (std::size_t i = 0; i < k; ++i) flips[i] = (mask >> i) & 1U;
          make_proposal(g, slots, perm, std::span<const bool>(flips, directed ? 0 : k), p);
          const TrialOutcome outcome = validate(g, p, c, delta);
          std::size_t to = from;
          if (outcome.accepted && !delta.added.empty()) {
            std::vector<Edge> next(g.edges().begin(), g.edges().end());
            for (std::size_t i = 0; i < k; ++i) next[p.slots[i]] = canonical(Edge{p.sources[i], p.new_targets[i]}, directed);
            auto idx = set.find(std::move(next));
            if (!idx) throw std::logic_error("accepted switch left the enumerated graph set");
            to = *idx;
          }
          ++row[to];
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return mg;
}

/// Component id for every node, ignoring arc direction and self-loops.
inline std::vector<std::size_t> component_labels(const MarkovGraph& mg) {
  std::vector<std::size_t> parent(mg.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < mg.size(); ++i) {
    for (const auto& [j, count] : mg.transitions[i]) {
      if (j != i && count > 0) parent[root(i)] = root(j);
    }
  }
  std::vector<std::size_t> label(mg.size());
  std::map<std::size_t, std::size_t> dense;
  for (std::size_t i = 0; i < mg.size(); ++i) {
    label[i] = dense.emplace(root(i), dense.size()).first->second;
  }
  return label;
}

inline std::size_t component_count(const MarkovGraph& mg) {
  const auto labels = component_labels(mg);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

struct StationarityReport {
  std::uint64_t trial_total = 0;
  std::size_t components = 0;
  double max_residual = 0.0;
};

/// Checks that (a) every row sums to trial_total, (b) transition counts are
/// symmetric once weighted by orbit size, and (c) the distribution uniform
/// over labeled graphs, restricted to any component, is stationary.
inline StationarityReport verify_uniform_stationarity(const MarkovGraph& mg, double tolerance = 1e-9) {
  StationarityReport report;
  report.trial_total = mg.trial_total;
  for (std::size_t i = 0; i < mg.size(); ++i) {
    std::uint64_t sum = 0;
    for (const auto& [j, count] : mg.transitions[i]) sum += count;
    if (sum != mg.trial_total) {
      throw Error(ErrorCode::RegularityViolation, "node " + std::to_string(i) + " has out-degree " +
                                                      std::to_string(sum) + ", expected " +
                                                      std::to_string(mg.trial_total));
    }
  }
  for (std::size_t i = 0; i < mg.size(); ++i) {
    for (const auto& [j, count] : mg.transitions[i]) {
      if (mg.orbit_sizes[i] * count != mg.orbit_sizes[j] * mg.count(j, i)) {
        throw Error(ErrorCode::AsymmetryDetected,
                    "transitions " + std::to_string(i) + "<->" + std::to_string(j) + " differ");
      }
    }
  }

  const auto labels = component_labels(mg);
  report.components = mg.size() == 0 ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<double> weight(report.components, 0.0);
  for (std::size_t i = 0; i < mg.size(); ++i) weight[labels[i]] += static_cast<double>(mg.orbit_sizes[i]);

  std::vector<double> pi(mg.size());
  for (std::size_t i = 0; i < mg.size(); ++i) pi[i] = static_cast<double>(mg.orbit_sizes[i]) / weight[labels[i]];
  std::vector<double> next(mg.size(), 0.0);
  const double total = static_cast<double>(mg.trial_total);
  for (std::size_t i = 0; i < mg.size(); ++i) {
    for (const auto& [j, count] : mg.transitions[i]) next[j] += pi[i] * static_cast<double>(count) / total;
  }
  for (std::size_t i = 0; i < mg.size(); ++i) report.max_residual = std::max(report.max_residual, std::abs(next[i] - pi[i]));
  if (report.max_residual > tolerance) {
    throw Error(ErrorCode::RegularityViolation,
                "uniform vector not stationary, residual " + std::to_string(report.max_residual));
  }
  return report;
}

/// Pearson chi-square p-value of visit counts against the distribution
/// uniform over labeled graphs of `support` (member indices).
inline double chi_square_uniformity(const GraphSet& set, const std::vector<std::size_t>& samples,
                                    const std::vector<std::size_t>& support) {
  if (support.empty()) throw Error(ErrorCode::InvalidArgument, "empty support");
  if (support.size() == 1) return 1.0;
  if (samples.size() < 20 * support.size()) {
    throw Error(ErrorCode::InsufficientSamples, std::to_string(samples.size()) + " samples for " +
                                                    std::to_string(support.size()) + " graphs");
  }
  std::map<std::size_t, std::uint64_t> observed;
  for (std::size_t s : support) observed[s] = 0;
  for (std::size_t s : samples) {
    auto it = observed.find(s);
    if (it == observed.end()) {
      throw Error(ErrorCode::InvalidArgument, "sample " + std::to_string(s) + " outside the support");
    }
    ++it->second;
  }
  double weight = 0;
  for (std::size_t s : support) weight += static_cast<double>(set.orbit_sizes[s]);
  double statistic = 0;
  for (const auto& [s, count] : observed) {
    const double expected = static_cast<double>(samples.size()) * static_cast<double>(set.orbit_sizes[s]) / weight;
    statistic += (static_cast<double>(count) - expected) * (static_cast<double>(count) - expected) / expected;
  }
  boost::math::chi_squared dist(static_cast<double>(support.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

inline std::vector<std::size_t> chi_square_uniformity_support(const MarkovGraph& mg, std::size_t member) {
  const auto labels = component_labels(mg);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < mg.size(); ++i) {
    if (labels[i] == labels[member]) support.push_back(i);
  }
  return support;
}

/// Runs a k-switch walk from `start` and records the member index every
/// `spacing` trials.
template <SwitchConstraint C>
std::vector<std::size_t> sample_walk_members(const GraphSet& set, std::size_t start, const C& c, std::size_t k,
                                             std::size_t n_samples, std::uint64_t spacing, std::uint64_t seed) {
  std::vector<std::size_t> samples;
  samples.reserve(n_samples);
  WalkConfig cfg;
  cfg.k = k;
  cfg.n_trials = n_samples * spacing;
  cfg.seed = seed;
  cfg.observation_interval = cfg.n_trials == 0 ? 1 : cfg.n_trials;
  run_walk(set.member_graph(start), c, cfg, {},
           [&](std::uint64_t t, const Graph& g, const SwitchProposal&, const TrialOutcome&) {
             if (t % spacing != 0) return;
             auto idx = set.find(g);
             if (!idx) throw std::logic_error("walk left the enumerated graph set");
             samples.push_back(*idx);
           });
  return samples;
}

/// Graphviz export: one node per member with its self-loop count, one arc
/// per ordered pair with a nonzero transition count.
inline void write_dot(std::ostream& out, const MarkovGraph& mg) {
  out << "digraph markov_k" << mg.k << " {\n";
  for (std::size_t i = 0; i < mg.size(); ++i) {
    out << "  g" << i << " [label=\"" << i << "\", self_loops=" << mg.count(i, i) << "];\n";
  }
  for (std::size_t i = 0; i < mg.size(); ++i) {
    for (const auto& [j, count] : mg.transitions[i]) {
      if (j != i) out << "  g" << i << " -> g" << j << " [label=\"" << count << "\"];\n";
    }
  }
  out << "}\n";
}

}  // namespace kswitch
