#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "kswitch/constraints.hpp"
#include "kswitch/error.hpp"
#include "kswitch/graph.hpp"
#include "kswitch/io.hpp"
#include "kswitch/observables.hpp"
#include "kswitch/oracle.hpp"
#include "kswitch/random.hpp"
#include "kswitch/switch_engine.hpp"

namespace kswitch {

struct ExperimentConfig {
  std::string input_path;
  std::string colors_path;
  bool directed = true;
  std::string constraint = "none";
  std::size_t k_min = 2;
  std::size_t k_max = 2;
  std::uint64_t n_trials = 0;
  std::size_t replicates = 1;
  std::uint64_t seed = 1;
  std::vector<std::string> observables;
  /// 0 selects n_trials / 1000 (at least 1).
  std::uint64_t observation_interval = 0;
  std::string output_dir;
  /// Relative tolerance for agreement of per-k means.
  double plateau_tol = 0.02;
  /// Per-walk value is the mean of samples in the last tail_fraction of trials.
  double tail_fraction = 0.5;
  /// Worker count; 0 uses the hardware concurrency.
  std::size_t threads = 0;

  void validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::ConfigInvalid, msg); };
    if (k_min < 2) fail("k-min must be >= 2");
    if (k_max < k_min) fail("k-max must be >= k-min");
    if (replicates < 1) fail("replicates must be >= 1");
    if (!(plateau_tol > 0)) fail("plateau tolerance must be positive");
    if (!(tail_fraction > 0 && tail_fraction <= 1)) fail("tail fraction must lie in (0, 1]");
  }

  std::uint64_t interval() const {
    return observation_interval == 0 ? default_observation_interval(n_trials) : observation_interval;
  }
};

struct SummaryRow {
  std::size_t k = 0;
  std::vector<double> mean;
  std::vector<double> stddev;
  double successes_mean = 0;
  double successes_stddev = 0;
};

/// Observables x k table with success counts, one row per k.
struct SummaryTable {
  std::string constraint;
  std::uint64_t n_trials = 0;
  std::size_t replicates = 0;
  std::vector<std::string> columns;
  std::vector<double> starter;
  std::vector<SummaryRow> rows;
  std::optional<std::size_t> plateau_k;
  double plateau_tol = 0.02;
  std::size_t memory_bytes = 0;
};

/// Smallest k0 such that every successive pair of rows from k0 on agrees
/// within rel_tol on all columns. Needs at least one agreeing pair.
inline std::optional<std::size_t> plateau_k(const std::vector<SummaryRow>& rows, double rel_tol) {
  if (rows.size() < 2) return std::nullopt;
  std::optional<std::size_t> k0;
  for (std::size_t i = rows.size() - 1; i > 0; --i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    bool agree = true;
    for (std::size_t c = 0; c < a.mean.size(); ++c) agree = agree && means_agree(a.mean[c], b.mean[c], rel_tol);
    if (!agree) break;
    k0 = a.k;
  }
  return k0;
}

namespace detail {

inline void mean_and_stddev(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0;
  sd = 0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

struct WalkSummary {
  std::vector<double> value;
  std::uint64_t successes = 0;
  std::size_t memory_bytes = 0;
};

/// Runs job(i) for i in [0, n) on a bounded pool; rethrows the first failure.
template <class Job>
void parallel_for(std::size_t n, std::size_t threads, Job&& job) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

inline std::string trace_file_name(std::size_t k, std::size_t replicate) {
  return "trace_k" + std::to_string(k) + "_r" + std::to_string(replicate) + ".csv";
}

void emit_summary_files(const SummaryTable& table, const std::filesystem::path& dir);

/// Replicated walks for every k in [k_min, k_max]. Trace CSVs and summary
/// files are written when cfg.output_dir is set.
template <SwitchConstraint C>
SummaryTable run_experiment(const Graph& g0, const C& constraint, const ExperimentConfig& cfg) {
  cfg.validate();
  if (!constraint.check_full(g0)) {
    throw Error(ErrorCode::StarterViolatesConstraint, "starter graph violates " + std::string(constraint.name()));
  }
  if (cfg.n_trials > 0 && cfg.k_max > g0.num_edges()) {
    throw Error(ErrorCode::ConfigInvalid, "k-max exceeds the edge count");
  }
  const auto observables = parse_observables(cfg.observables);
  const std::filesystem::path out_dir = cfg.output_dir;
  if (!cfg.output_dir.empty()) std::filesystem::create_directories(out_dir);

  SummaryTable table;
  table.constraint = std::string(constraint.name());
  table.n_trials = cfg.n_trials;
  table.replicates = cfg.replicates;
  table.columns = observable_columns(observables);
  table.starter = measure_all(g0, observables);
  table.plateau_tol = cfg.plateau_tol;

  const std::size_t n_k = cfg.k_max - cfg.k_min + 1;
  const std::size_t n_jobs = n_k * cfg.replicates;
  const auto tail_start = static_cast<std::uint64_t>(
      std::floor(static_cast<double>(cfg.n_trials) * (1.0 - cfg.tail_fraction)));
  std::vector<detail::WalkSummary> results(n_jobs);

  detail::parallel_for(n_jobs, cfg.threads, [&](std::size_t job) {
    const std::size_t k = cfg.k_min + job / cfg.replicates;
    const std::size_t r = job % cfg.replicates;
    WalkConfig wc;
    wc.k = k;
    wc.n_trials = cfg.n_trials;
    wc.seed = walk_seed(cfg.seed, k, r);
    wc.observation_interval = cfg.interval();
    WalkReport report = run_walk(g0, constraint, wc, observables);
    if (!cfg.output_dir.empty()) {
      std::ofstream out(out_dir / trace_file_name(k, r));
      if (!out) throw Error(ErrorCode::IoError, "cannot write trace in " + cfg.output_dir);
      write_trace_csv(out, report.trace);
    }
    results[job] = {report.trace.tail_mean(tail_start), report.successes, report.final_graph.memory_bytes()};
  });

  for (std::size_t ki = 0; ki < n_k; ++ki) {
    SummaryRow row;
    row.k = cfg.k_min + ki;
    row.mean.resize(table.columns.size());
    row.stddev.resize(table.columns.size());
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      std::vector<double> xs;
      for (std::size_t r = 0; r < cfg.replicates; ++r) xs.push_back(results[ki * cfg.replicates + r].value[c]);
      detail::mean_and_stddev(xs, row.mean[c], row.stddev[c]);
    }
    std::vector<double> succ;
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
      succ.push_back(static_cast<double>(results[ki * cfg.replicates + r].successes));
    }
    detail::mean_and_stddev(succ, row.successes_mean, row.successes_stddev);
    table.rows.push_back(std::move(row));
  }
  for (const auto& r : results) table.memory_bytes = std::max(table.memory_bytes, r.memory_bytes);
  table.plateau_k = plateau_k(table.rows, cfg.plateau_tol);

  if (!cfg.output_dir.empty()) emit_summary_files(table, out_dir);
  return table;
}

/// Loads the starter from cfg.input_path (and colors) and builds the
/// constraint by name from it.
inline Graph load_starter(const ExperimentConfig& cfg) {
  if (cfg.input_path.empty()) throw Error(ErrorCode::ConfigInvalid, "missing input path");
  LoadedGraph loaded = read_edge_list(cfg.input_path, cfg.directed);
  if (!cfg.colors_path.empty()) loaded.graph.set_colors(read_colors(cfg.colors_path, loaded));
  return std::move(loaded.graph);
}

inline SummaryTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Graph g0 = load_starter(cfg);
  const AnyConstraint constraint = make_constraint(cfg.constraint, g0);
  return run_experiment(g0, constraint, cfg);
}

enum class SummaryFormat { Csv, Json, Text };

namespace detail {

inline std::string fixed(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, x);
  return buf;
}

/// Enough decimals for the magnitude at hand: 3 below 10, else 1 (integers stay integral).
inline std::string pretty(double x) {
  if (std::abs(x) < 10) return fixed(x, 3);
  if (x == std::floor(x)) return fixed(x, 0);
  return fixed(x, 1);
}

}  // namespace detail

inline void emit_summary(const SummaryTable& table, SummaryFormat format, std::ostream& out) {
  switch (format) {
    case SummaryFormat::Csv: {
      out << "k";
      for (const auto& c : table.columns) out << ',' << c << "_mean," << c << "_sd";
      out << ",successes_mean,successes_sd\n";
      for (const auto& row : table.rows) {
        out << row.k;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
          out << ',' << format_number(row.mean[c]) << ',' << format_number(row.stddev[c]);
        }
        out << ',' << format_number(row.successes_mean) << ',' << format_number(row.successes_stddev) << '\n';
      }
      break;
    }
    case SummaryFormat::Json: {
      nlohmann::ordered_json j;
      j["constraint"] = table.constraint;
      j["n_trials"] = table.n_trials;
      j["replicates"] = table.replicates;
      j["columns"] = table.columns;
      nlohmann::ordered_json starter = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < table.columns.size(); ++c) starter[table.columns[c]] = table.starter[c];
      j["starter"] = starter;
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : table.rows) {
        nlohmann::ordered_json r;
        r["k"] = row.k;
        nlohmann::ordered_json mean = nlohmann::ordered_json::object();
        nlohmann::ordered_json sd = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
          mean[table.columns[c]] = row.mean[c];
          sd[table.columns[c]] = row.stddev[c];
        }
        r["mean"] = mean;
        r["stddev"] = sd;
        r["successes"] = {{"mean", row.successes_mean}, {"stddev", row.successes_stddev}};
        j["rows"].push_back(r);
      }
      j["plateau_tol"] = table.plateau_tol;
      j["plateau_k"] = table.plateau_k ? nlohmann::ordered_json(*table.plateau_k) : nlohmann::ordered_json();
      j["memory_bytes"] = table.memory_bytes;
      out << j.dump(2) << '\n';
      break;
    }
    case SummaryFormat::Text: {
      std::vector<std::vector<std::string>> cells;
      std::vector<std::string> header{"", "starter"};
      for (const auto& row : table.rows) header.push_back("k=" + std::to_string(row.k));
      cells.push_back(header);
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        std::vector<std::string> line{table.columns[c], detail::pretty(table.starter[c])};
        for (const auto& row : table.rows) {
          line.push_back(detail::pretty(row.mean[c]) + " ± " + detail::pretty(row.stddev[c]));
        }
        cells.push_back(line);
      }
      std::vector<std::string> succ{"Successes", "-"};
      for (const auto& row : table.rows) {
        succ.push_back(detail::fixed(row.successes_mean, 0) + " ± " + detail::fixed(row.successes_stddev, 0));
      }
      cells.push_back(succ);

      std::vector<std::size_t> width(header.size(), 0);
      for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
          // "±" is two bytes but one column
          const std::size_t len = line[i].size() - (line[i].find("±") != std::string::npos ? 1 : 0);
          width[i] = std::max(width[i], len);
        }
      }
      out << "constraint: " << table.constraint << "  trials: " << table.n_trials
          << "  replicates: " << table.replicates << '\n';
      for (std::size_t l = 0; l < cells.size(); ++l) {
        if (l + 1 == cells.size()) {
          std::size_t total = 0;
          for (std::size_t w : width) total += w + 3;
          out << std::string(total, '-') << '\n';
        }
        for (std::size_t i = 0; i < cells[l].size(); ++i) {
          const auto& s = cells[l][i];
          const std::size_t len = s.size() - (s.find("±") != std::string::npos ? 1 : 0);
          out << s << std::string(width[i] - len, ' ') << (i + 1 < cells[l].size() ? " | " : "");
        }
        out << '\n';
      }
      if (table.plateau_k) {
        out << "plateau from k=" << *table.plateau_k << " (successive means within "
            << detail::fixed(100 * table.plateau_tol, 1) << "%)\n";
      } else {
        out << "no plateau across k (tolerance " << detail::fixed(100 * table.plateau_tol, 1) << "%)\n";
      }
      out << "graph structures: " << table.memory_bytes << " bytes per walk\n";
      break;
    }
  }
}

inline void emit_summary_files(const SummaryTable& table, const std::filesystem::path& dir) {
  auto write = [&](const char* name, SummaryFormat f) {
    std::ofstream out(dir / name);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + (dir / name).string());
    emit_summary(table, f, out);
  };
  write("summary.json", SummaryFormat::Json);
  write("summary.txt", SummaryFormat::Text);
  write("summary.csv", SummaryFormat::Csv);
}

/// Exhaustive mode: graph-set size and Markov component counts per k.
struct OracleSummary {
  std::size_t graphs = 0;
  std::uint64_t labeled_graphs = 0;
  std::vector<std::pair<std::size_t, std::size_t>> components;  // (k, count)
  std::vector<std::pair<std::size_t, double>> residuals;        // (k, stationarity residual)
};

template <SwitchConstraint C>
OracleSummary run_oracle(const Graph& g0, const C& constraint, std::size_t k_min, std::size_t k_max,
                         const NodeClasses& interchangeable = {}, const std::string& dot_prefix = {}) {
  if (k_min < 2 || k_max < k_min) throw Error(ErrorCode::ConfigInvalid, "need 2 <= k-min <= k-max");
  const GraphSet set = enumerate_graph_set(GraphTemplate::of(g0), constraint, interchangeable);
  OracleSummary s;
  s.graphs = set.size();
  s.labeled_graphs = set.labeled_size();
  for (std::size_t k = k_min; k <= std::min(k_max, g0.num_edges()); ++k) {
    const MarkovGraph mg = build_markov_graph(set, k, constraint);
    s.components.emplace_back(k, component_count(mg));
    s.residuals.emplace_back(k, verify_uniform_stationarity(mg).max_residual);
    if (!dot_prefix.empty()) {
      std::ofstream dot(dot_prefix + "_k" + std::to_string(k) + ".dot");
      if (!dot) throw Error(ErrorCode::IoError, "cannot write DOT output");
      write_dot(dot, mg);
    }
  }
  return s;
}

inline std::string format_oracle_summary(const OracleSummary& s) {
  std::ostringstream out;
  out << s.graphs << " graphs; components:";
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    out << (i == 0 ? " " : ", ") << "k=" << s.components[i].first << "→" << s.components[i].second;
  }
  return out.str();
}

/// "0,1,2;5,6" -> {{0,1,2},{5,6}}
inline NodeClasses parse_node_classes(const std::string& text) {
  NodeClasses classes;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<NodeId> cls;
    std::stringstream ids(group);
    std::string id;
    while (std::getline(ids, id, ',')) {
      if (id.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        cls.push_back(static_cast<NodeId>(std::stoul(id)));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ConfigInvalid, "bad node id '" + id + "' in node classes");
      }
    }
    if (!cls.empty()) classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace kswitch
