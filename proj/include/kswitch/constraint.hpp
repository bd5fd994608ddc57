#pragma once

#include <algorithm>
#include <concepts>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "kswitch/graph.hpp"

namespace kswitch {

/// Edges a proposed switch removes and adds, in canonical form.
/// Only slots whose edge actually changes are listed, so |removed| == |added| <= k.
struct EdgeDelta {
  std::vector<Edge> removed;
  std::vector<Edge> added;

  void clear() {
    removed.clear();
    added.clear();
  }
};

/// Adapter giving a Graph the same traversal surface as SwitchedView.
class PlainView {
 public:
  explicit PlainView(const Graph& g) : g_(g) {}

  const Graph& base() const { return g_; }
  bool directed() const { return g_.directed(); }
  bool has_edge(NodeId u, NodeId v) const { return g_.has_edge(u, v); }

  template <class F>
  void for_each_out(NodeId u, F&& f) const {
    for (NodeId v : g_.out_neighbors(u)) f(v);
  }
  template <class F>
  void for_each_in(NodeId u, F&& f) const {
    for (NodeId v : g_.in_neighbors(u)) f(v);
  }

 private:
  const Graph& g_;
};

/// Read-only view of `base` after the first `n_removed` edges of
/// `removed` are deleted and then the first `n_added` edges of `added` are
/// inserted. Incremental checks walk the delta by widening these prefixes.
class SwitchedView {
 public:
  SwitchedView(const Graph& base, const EdgeDelta& delta)
      : base_(base), delta_(delta), n_removed_(delta.removed.size()), n_added_(delta.added.size()) {}

  void set_prefix(std::size_t n_removed, std::size_t n_added) {
    n_removed_ = n_removed;
    n_added_ = n_added;
  }

  const Graph& base() const { return base_; }
  bool directed() const { return base_.directed(); }

  bool has_edge(NodeId u, NodeId v) const {
    const Edge e = canonical(Edge{u, v}, base_.directed());
    if (in_prefix(delta_.added, n_added_, e)) return true;
    if (in_prefix(delta_.removed, n_removed_, e)) return false;
    return base_.has_edge(u, v);
  }

  /// Calls f(v) for each out-neighbor (all neighbors when undirected).
  template <class F>
  void for_each_out(NodeId u, F&& f) const {
    const bool dir = base_.directed();
    for (NodeId v : base_.out_neighbors(u)) {
      if (!in_prefix(delta_.removed, n_removed_, canonical(Edge{u, v}, dir))) f(v);
    }
    for (std::size_t i = 0; i < n_added_; ++i) {
      const Edge& e = delta_.added[i];
      if (e.source == u) {
        f(e.target);
      } else if (!dir && e.target == u) {
        f(e.source);
      }
    }
  }

  template <class F>
  void for_each_in(NodeId u, F&& f) const {
    if (!base_.directed()) {
      for_each_out(u, std::forward<F>(f));
      return;
    }
    for (NodeId v : base_.in_neighbors(u)) {
      if (!in_prefix(delta_.removed, n_removed_, Edge{v, u})) f(v);
    }
    for (std::size_t i = 0; i < n_added_; ++i) {
      if (delta_.added[i].target == u) f(delta_.added[i].source);
    }
  }

 private:
  static bool in_prefix(const std::vector<Edge>& list, std::size_t n, const Edge& e) {
    return std::find(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(n), e) !=
           list.begin() + static_cast<std::ptrdiff_t>(n);
  }

  const Graph& base_;
  const EdgeDelta& delta_;
  std::size_t n_removed_;
  std::size_t n_added_;
};

/// Additional constraint on top of fixed N, M, degrees and simplicity.
///
/// check_incremental receives the pre-switch graph and a delta that already
/// passed the simplicity tests; its verdict must equal check_full on the
/// post-switch graph whenever the pre-switch graph satisfies the constraint.
template <class C>
concept SwitchConstraint = requires(const C& c, const Graph& g, const EdgeDelta& d) {
  { c.name() } -> std::convertible_to<std::string_view>;
  { c.check_full(g) } -> std::same_as<bool>;
  { c.check_incremental(g, d) } -> std::same_as<bool>;
};

/// Empty additional constraint: only the degree sequence and simplicity hold.
struct NoConstraint {
  std::string_view name() const { return "none"; }
  bool check_full(const Graph&) const { return true; }
  bool check_incremental(const Graph&, const EdgeDelta&) const { return true; }
};

/// Conjunction of several constraints, checked left to right.
template <SwitchConstraint... Cs>
class AllOf {
 public:
  explicit AllOf(Cs... parts) : parts_(std::move(parts)...) {}

  std::string name() const {
    std::string out;
    std::apply([&](const auto&... p) { ((out += (out.empty() ? "" : "+") + std::string(p.name())), ...); },
               parts_);
    return out;
  }
  bool check_full(const Graph& g) const {
    return std::apply([&](const auto&... p) { return (p.check_full(g) && ...); }, parts_);
  }
  bool check_incremental(const Graph& g, const EdgeDelta& d) const {
    return std::apply([&](const auto&... p) { return (p.check_incremental(g, d) && ...); }, parts_);
  }

 private:
  std::tuple<Cs...> parts_;
};

/// Type-erased constraint for run-time selection (CLI, harness).
/// Copies share the same immutable constraint object.
class AnyConstraint {
 public:
  AnyConstraint() : AnyConstraint(NoConstraint{}) {}

  template <SwitchConstraint C>
    requires(!std::same_as<std::remove_cvref_t<C>, AnyConstraint>)
  AnyConstraint(C constraint)  // NOLINT(google-explicit-constructor)
      : impl_(std::make_shared<Model<C>>(std::move(constraint))) {}

  std::string_view name() const { return impl_->name(); }
  bool check_full(const Graph& g) const { return impl_->check_full(g); }
  bool check_incremental(const Graph& g, const EdgeDelta& d) const { return impl_->check_incremental(g, d); }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual std::string_view name() const = 0;
    virtual bool check_full(const Graph& g) const = 0;
    virtual bool check_incremental(const Graph& g, const EdgeDelta& d) const = 0;
  };

  template <class C>
  struct Model final : Concept {
    explicit Model(C c) : constraint(std::move(c)), label(constraint.name()) {}
    std::string_view name() const override { return label; }
    bool check_full(const Graph& g) const override { return constraint.check_full(g); }
    bool check_incremental(const Graph& g, const EdgeDelta& d) const override {
      return constraint.check_incremental(g, d);
    }
    C constraint;
    std::string label;
  };

  std::shared_ptr<const Concept> impl_;
};

}  // namespace kswitch
