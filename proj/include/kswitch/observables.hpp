#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "kswitch/constraints/component_sizes.hpp"
#include "kswitch/constraints/degree_correlation.hpp"
#include "kswitch/error.hpp"
#include "kswitch/graph.hpp"
#include "kswitch/motifs.hpp"

namespace kswitch {

enum class ObservableKind {
  DirectedTriangles,
  UndirectedTriangles,
  FourCycles,
  FourCliques,
  FourPaths,
  FourStars,
  ColoredTriangleHistogram,
  ComponentSizes,
  DegreePairHistogram,
};

/// A target observable. Some kinds expand to several trace columns.
struct Observable {
  std::string name;
  ObservableKind kind;

  static Observable parse(std::string_view name) {
    struct Entry {
      std::string_view name;
      ObservableKind kind;
    };
    static constexpr Entry kTable[] = {
        {"directed-triangles", ObservableKind::DirectedTriangles},
        {"triangles", ObservableKind::UndirectedTriangles},
        {"4-cycles", ObservableKind::FourCycles},
        {"4-cliques", ObservableKind::FourCliques},
        {"4-paths", ObservableKind::FourPaths},
        {"4-stars", ObservableKind::FourStars},
        {"colored-triangles", ObservableKind::ColoredTriangleHistogram},
        {"components", ObservableKind::ComponentSizes},
        {"degree-pairs", ObservableKind::DegreePairHistogram},
    };
    for (const auto& e : kTable) {
      if (e.name == name) return Observable{std::string(name), e.kind};
    }
    throw Error(ErrorCode::ConfigInvalid, "unknown observable '" + std::string(name) + "'");
  }

  std::vector<std::string> columns() const {
    switch (kind) {
      case ObservableKind::ColoredTriangleHistogram:
        return {kTriangleTypes.begin(), kTriangleTypes.end()};
      case ObservableKind::ComponentSizes:
        return {"components", "largest-component"};
      case ObservableKind::DegreePairHistogram:
        return {"outdeg-assortativity"};
      default:
        return {name};
    }
  }

  /// Appends this observable's values to `out`. Never mutates the graph.
  void measure(const Graph& g, std::vector<double>& out) const {
    switch (kind) {
      case ObservableKind::DirectedTriangles:
        out.push_back(static_cast<double>(count_directed_triangles(g)));
        return;
      case ObservableKind::UndirectedTriangles:
        out.push_back(static_cast<double>(count_undirected_triangles(g)));
        return;
      case ObservableKind::FourCycles:
        out.push_back(static_cast<double>(count_motifs4(g).cycles));
        return;
      case ObservableKind::FourCliques:
        out.push_back(static_cast<double>(count_motifs4(g).cliques));
        return;
      case ObservableKind::FourPaths:
        out.push_back(static_cast<double>(count_motifs4(g).paths));
        return;
      case ObservableKind::FourStars:
        out.push_back(static_cast<double>(count_motifs4(g).stars));
        return;
      case ObservableKind::ColoredTriangleHistogram: {
        if (!g.colors()) throw Error(ErrorCode::MissingColorData, "colored-triangles observable needs colors");
        const auto hist = colored_triangle_histogram(g, *g.colors());
        const double total = static_cast<double>(g.num_nodes() / 3);
        for (std::size_t c : hist) out.push_back(total > 0 ? static_cast<double>(c) / total : 0.0);
        return;
      }
      case ObservableKind::ComponentSizes: {
        const auto sizes = component_size_multiset(g);
        out.push_back(static_cast<double>(sizes.size()));
        out.push_back(sizes.empty() ? 0.0 : static_cast<double>(sizes.back()));
        return;
      }
      case ObservableKind::DegreePairHistogram:
        out.push_back(outdegree_assortativity(g));
        return;
    }
  }

  /// Pearson correlation of (out-degree(source), out-degree(target)) over edges;
  /// 0 when either side has no variance.
  static double outdegree_assortativity(const Graph& g) {
    const auto hist = degree_pair_histogram(g);
    double n = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (const auto& [pair, count] : hist) {
      const double x = static_cast<double>(pair.first);
      const double y = static_cast<double>(pair.second);
      const double c = static_cast<double>(count);
      n += c;
      sx += c * x;
      sy += c * y;
      sxx += c * x * x;
      syy += c * y * y;
      sxy += c * x * y;
    }
    if (n == 0) return 0.0;
    const double vx = sxx / n - (sx / n) * (sx / n);
    const double vy = syy / n - (sy / n) * (sy / n);
    if (vx <= 0 || vy <= 0) return 0.0;
    return (sxy / n - (sx / n) * (sy / n)) / std::sqrt(vx * vy);
  }
};

inline std::vector<Observable> parse_observables(const std::vector<std::string>& names) {
  std::vector<Observable> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(Observable::parse(n));
  return out;
}

inline std::vector<std::string> observable_columns(const std::vector<Observable>& observables) {
  std::vector<std::string> cols;
  for (const auto& o : observables) {
    auto c = o.columns();
    cols.insert(cols.end(), c.begin(), c.end());
  }
  return cols;
}

inline std::vector<double> measure_all(const Graph& g, const std::vector<Observable>& observables) {
  std::vector<double> values;
  for (const auto& o : observables) o.measure(g, values);
  return values;
}

/// Observable values sampled along a walk, with strictly increasing trial indices.
struct ObservableTrace {
  struct Sample {
    std::uint64_t trial = 0;
    std::vector<double> values;
  };

  std::vector<std::string> columns;
  std::vector<Sample> samples;

  void record(std::uint64_t trial, std::vector<double> values) {
    if (!samples.empty() && trial <= samples.back().trial) {
      throw Error(ErrorCode::InvalidArgument, "trace trial indices must increase");
    }
    samples.push_back({trial, std::move(values)});
  }

  /// Per-column mean over samples with trial index >= from_trial.
  std::vector<double> tail_mean(std::uint64_t from_trial) const {
    std::vector<double> mean(columns.size(), 0.0);
    std::size_t n = 0;
    for (const auto& s : samples) {
      if (s.trial < from_trial) continue;
      for (std::size_t c = 0; c < mean.size(); ++c) mean[c] += s.values[c];
      ++n;
    }
    if (n == 0 && !samples.empty()) return samples.back().values;
    for (double& m : mean) m /= static_cast<double>(n);
    return mean;
  }
};

/// Shortest round-trip decimal form; identical bytes for identical doubles.
inline std::string format_number(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

inline void write_trace_csv(std::ostream& out, const ObservableTrace& trace) {
  out << "trial";
  for (const auto& c : trace.columns) out << ',' << c;
  out << '\n';
  for (const auto& s : trace.samples) {
    out << s.trial;
    for (double v : s.values) out << ',' << format_number(v);
    out << '\n';
  }
}

/// Relative agreement with an absolute floor for means near zero.
inline bool means_agree(double a, double b, double rel_tol) {
  return std::abs(a - b) <= std::max(rel_tol * std::max(std::abs(a), std::abs(b)), 1e-9);
}

/// True iff, for every column, the mean of the last `window` samples is
/// within rel_tol of the mean of the `window` samples before them.
inline bool plateau_detect(const ObservableTrace& trace, std::size_t window, double rel_tol) {
  if (window == 0) throw Error(ErrorCode::InvalidArgument, "window must be positive");
  const std::size_t n = trace.samples.size();
  if (n < 2 * window) {
    throw Error(ErrorCode::InsufficientSamples,
                std::to_string(n) + " samples, need " + std::to_string(2 * window));
  }
  for (std::size_t c = 0; c < trace.columns.size(); ++c) {
    double recent = 0;
    double previous = 0;
    for (std::size_t i = n - window; i < n; ++i) recent += trace.samples[i].values[c];
    for (std::size_t i = n - 2 * window; i < n - window; ++i) previous += trace.samples[i].values[c];
    recent /= static_cast<double>(window);
    previous /= static_cast<double>(window);
    if (!means_agree(recent, previous, rel_tol)) return false;
  }
  return true;
}

}  // namespace kswitch
