#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "kswitch/constraint.hpp"
#include "kswitch/error.hpp"
#include "kswitch/graph.hpp"
#include "kswitch/observables.hpp"
#include "kswitch/random.hpp"

namespace kswitch {

/// k edge slots and a permutation of their targets. Slot i, read as the arc
/// (sources[i], old_targets[i]), becomes (sources[i], new_targets[i]) with
/// new_targets[i] == old_targets[permutation[i]].
///
/// Undirected edges are oriented at random when proposed; the orientation is
/// recorded in sources/old_targets.
struct SwitchProposal {
  std::vector<std::size_t> slots;
  std::vector<std::size_t> permutation;
  std::vector<NodeId> sources;
  std::vector<NodeId> old_targets;
  std::vector<NodeId> new_targets;

  std::size_t size() const { return slots.size(); }

  bool changes_graph() const {
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (new_targets[i] != old_targets[i]) return true;
    }
    return false;
  }
};

enum class RejectReason : std::uint8_t { None = 0, SelfLoop, MultiEdge, ConstraintViolated };

struct TrialOutcome {
  bool accepted = true;
  RejectReason reason = RejectReason::None;

  static TrialOutcome accept() { return {true, RejectReason::None}; }
  static TrialOutcome reject(RejectReason r) { return {false, r}; }
};

/// Builds a proposal from explicit choices. `flip[i]` reverses the stored
/// orientation of an undirected slot and is ignored for directed graphs.
inline void make_proposal(const Graph& g, std::span<const std::size_t> slots,
                          std::span<const std::size_t> permutation, std::span<const bool> flip,
                          SwitchProposal& p) {
  const std::size_t k = slots.size();
  p.slots.assign(slots.begin(), slots.end());
  p.permutation.assign(permutation.begin(), permutation.end());
  p.sources.resize(k);
  p.old_targets.resize(k);
  p.new_targets.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    Edge e = g.edge(slots[i]);
    if (!g.directed() && !flip.empty() && flip[i]) std::swap(e.source, e.target);
    p.sources[i] = e.source;
    p.old_targets[i] = e.target;
  }
  for (std::size_t i = 0; i < k; ++i) p.new_targets[i] = p.old_targets[p.permutation[i]];
}

inline SwitchProposal make_proposal(const Graph& g, std::span<const std::size_t> slots,
                                    std::span<const std::size_t> permutation, std::span<const bool> flip = {}) {
  SwitchProposal p;
  make_proposal(g, slots, permutation, flip, p);
  return p;
}

/// Uniform k-subset of edges and uniform permutation (identity included).
inline void propose(const Graph& g, std::size_t k, Rng& rng, SwitchProposal& p) {
  g.random_edge_indices(k, rng, p.slots);
  p.permutation.resize(k);
  std::iota(p.permutation.begin(), p.permutation.end(), std::size_t{0});
  for (std::size_t i = k - 1; i > 0; --i) std::swap(p.permutation[i], p.permutation[uniform_below(rng, i + 1)]);

  p.sources.resize(k);
  p.old_targets.resize(k);
  p.new_targets.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    Edge e = g.edge(p.slots[i]);
    if (!g.directed() && (rng() & 1U)) std::swap(e.source, e.target);
    p.sources[i] = e.source;
    p.old_targets[i] = e.target;
  }
  for (std::size_t i = 0; i < k; ++i) p.new_targets[i] = p.old_targets[p.permutation[i]];
}

inline SwitchProposal propose(const Graph& g, std::size_t k, Rng& rng) {
  SwitchProposal p;
  propose(g, k, rng, p);
  return p;
}

/// Runs the trial tests in order: no self-loop, b_sigma(i) not in
/// W_i = N_out(a_i) \ {b_i} on the pre-switch graph, no two new edges
/// coinciding, then the additional constraint on the changed edges.
/// `delta` receives the changed edges; the graph itself is not touched.
template <SwitchConstraint C>
TrialOutcome validate(const Graph& g, const SwitchProposal& p, const C& c, EdgeDelta& delta) {
  const std::size_t k = p.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (p.sources[i] == p.new_targets[i]) return TrialOutcome::reject(RejectReason::SelfLoop);
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (p.new_targets[i] != p.old_targets[i] && g.has_edge(p.sources[i], p.new_targets[i])) {
      return TrialOutcome::reject(RejectReason::MultiEdge);
    }
  }

  delta.clear();
  for (std::size_t i = 0; i < k; ++i) {
    if (p.new_targets[i] == p.old_targets[i]) continue;
    delta.removed.push_back(canonical(Edge{p.sources[i], p.old_targets[i]}, g.directed()));
    delta.added.push_back(canonical(Edge{p.sources[i], p.new_targets[i]}, g.directed()));
  }
  if (delta.added.empty()) return TrialOutcome::accept();

  // Two slots can produce the same arc from different sources' targets
  // (directed, k >= 4) or as mirror images (undirected); the W_i test alone
  // does not see either.
  for (std::size_t i = 0; i < delta.added.size(); ++i) {
    for (std::size_t j = i + 1; j < delta.added.size(); ++j) {
      if (delta.added[i] == delta.added[j]) return TrialOutcome::reject(RejectReason::MultiEdge);
    }
  }

  if (!c.check_incremental(g, delta)) return TrialOutcome::reject(RejectReason::ConstraintViolated);
  return TrialOutcome::accept();
}

template <SwitchConstraint C>
TrialOutcome validate(const Graph& g, const SwitchProposal& p, const C& c) {
  EdgeDelta delta;
  return validate(g, p, c, delta);
}

/// Applies an accepted proposal.
inline void commit(Graph& g, const SwitchProposal& p) {
  std::array<std::size_t, 16> slot_buf{};
  std::array<Edge, 16> edge_buf{};
  std::vector<std::size_t> slot_vec;
  std::vector<Edge> edge_vec;
  std::size_t n = 0;
  const bool small = p.size() <= slot_buf.size();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.new_targets[i] == p.old_targets[i]) continue;
    const Edge e{p.sources[i], p.new_targets[i]};
    if (small) {
      slot_buf[n] = p.slots[i];
      edge_buf[n] = e;
    } else {
      slot_vec.push_back(p.slots[i]);
      edge_vec.push_back(e);
    }
    ++n;
  }
  if (small) {
    g.replace_edges(std::span(slot_buf.data(), n), std::span(edge_buf.data(), n));
  } else {
    g.replace_edges(slot_vec, edge_vec);
  }
}

struct WalkConfig {
  std::size_t k = 2;
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t observation_interval = 1;
  /// Full constraint and adjacency re-check every this many trials; 0 disables.
  std::uint64_t verify_interval = 0;
};

inline std::uint64_t default_observation_interval(std::uint64_t n_trials) {
  return std::max<std::uint64_t>(1, n_trials / 1000);
}

/// Trial accounting: trials == successes + no_ops + rejected().
/// A success changes the edge set; a no-op is an accepted trial whose
/// permutation leaves every target in place.
struct WalkReport {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t no_ops = 0;
  std::array<std::uint64_t, 4> rejections{};
  ObservableTrace trace;
  Graph final_graph;

  std::uint64_t rejected() const { return rejections[1] + rejections[2] + rejections[3]; }
  std::uint64_t rejected(RejectReason r) const { return rejections[static_cast<std::size_t>(r)]; }
};

struct NoTrialHook {
  void operator()(std::uint64_t, const Graph&, const SwitchProposal&, const TrialOutcome&) const {}
};

/// Switch-and-hold walk: exactly cfg.n_trials proposals; rejected trials keep
/// the current graph and still count. Observables are sampled at trial 0 and
/// every observation_interval trials, plus the last trial.
/// `hook(t, g, proposal, outcome)` runs after trial t is resolved.
template <SwitchConstraint C, class Hook = NoTrialHook>
WalkReport run_walk(Graph g, const C& c, const WalkConfig& cfg, const std::vector<Observable>& observables,
                    Hook&& hook = {}) {
  if (cfg.k < 2) throw Error(ErrorCode::InvalidArgument, "switch order k must be >= 2");
  if (cfg.observation_interval == 0) throw Error(ErrorCode::InvalidArgument, "observation interval must be >= 1");
  if (cfg.n_trials > 0 && cfg.k > g.num_edges()) {
    throw Error(ErrorCode::KTooLarge,
                "k=" + std::to_string(cfg.k) + " exceeds edge count " + std::to_string(g.num_edges()));
  }
  if (!c.check_full(g)) {
    throw Error(ErrorCode::StarterViolatesConstraint, "starter graph violates " + std::string(c.name()));
  }

  WalkReport report;
  report.trace.columns = observable_columns(observables);
  report.trace.record(0, measure_all(g, observables));

  Rng rng(cfg.seed);
  SwitchProposal proposal;
  EdgeDelta delta;
  for (std::uint64_t t = 1; t <= cfg.n_trials; ++t) {
    propose(g, cfg.k, rng, proposal);
    const TrialOutcome outcome = validate(g, proposal, c, delta);
    if (!outcome.accepted) {
      ++report.rejections[static_cast<std::size_t>(outcome.reason)];
    } else if (delta.added.empty()) {
      ++report.no_ops;
    } else {
      commit(g, proposal);
      ++report.successes;
    }
    hook(t, static_cast<const Graph&>(g), proposal, outcome);

    if (cfg.verify_interval != 0 && t % cfg.verify_interval == 0) {
      if (!g.adjacency_consistent()) throw std::logic_error("adjacency diverged from edge array");
      if (!c.check_full(g)) throw std::logic_error("walk left the constrained set at trial " + std::to_string(t));
    }
    if (t % cfg.observation_interval == 0 || t == cfg.n_trials) {
      report.trace.record(t, measure_all(g, observables));
    }
  }
  report.trials = cfg.n_trials;
  report.final_graph = std::move(g);
  return report;
}

}  // namespace kswitch
