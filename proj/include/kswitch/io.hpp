#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kswitch/error.hpp"
#include "kswitch/graph.hpp"

namespace kswitch {

/// A graph read from text plus the mapping back to the file's node labels.
/// Labels are relabeled to dense ids in increasing label order, so a file
/// that already uses 0..N-1 keeps its ids.
struct LoadedGraph {
  Graph graph;
  std::vector<std::int64_t> labels;

  std::optional<NodeId> id_of(std::int64_t label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) return std::nullopt;
    return static_cast<NodeId>(it - labels.begin());
  }
};

namespace detail {

inline bool is_blank_or_comment(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

}  // namespace detail

inline LoadedGraph parse_edge_list(std::istream& in, bool directed) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank_or_comment(line)) continue;
    std::istringstream fields(line);
    std::int64_t u = 0;
    std::int64_t v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected \"u v\"");
    }
    raw.emplace_back(u, v);
  }

  LoadedGraph out;
  for (const auto& [u, v] : raw) {
    out.labels.push_back(u);
    out.labels.push_back(v);
  }
  std::sort(out.labels.begin(), out.labels.end());
  out.labels.erase(std::unique(out.labels.begin(), out.labels.end()), out.labels.end());

  for (auto& [u, v] : raw) {
    u = *out.id_of(u);
    v = *out.id_of(v);
  }
  out.graph = Graph::from_edge_list(raw, directed, out.labels.size());
  return out;
}

inline LoadedGraph read_edge_list(const std::filesystem::path& path, bool directed) {
  auto in = detail::open_input(path);
  return parse_edge_list(in, directed);
}

/// Lines "u C" with C one of R, G, B. Every node of the graph needs a color.
inline std::vector<Color> parse_colors(std::istream& in, const LoadedGraph& loaded) {
  const std::size_t n = loaded.graph.num_nodes();
  std::vector<std::optional<Color>> assigned(n);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank_or_comment(line)) continue;
    std::istringstream fields(line);
    std::int64_t label = 0;
    std::string letter;
    if (!(fields >> label >> letter) || letter.size() != 1) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected \"u C\"");
    }
    auto id = loaded.id_of(label);
    if (!id) {
      throw Error(ErrorCode::NodeOutOfRange, "colored node " + std::to_string(label) + " not in graph");
    }
    switch (letter[0]) {
      case 'R': assigned[*id] = Color::R; break;
      case 'G': assigned[*id] = Color::G; break;
      case 'B': assigned[*id] = Color::B; break;
      default:
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": color must be R, G or B");
    }
  }
  std::vector<Color> colors(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!assigned[i]) {
      throw Error(ErrorCode::MissingColorData, "node " + std::to_string(loaded.labels[i]) + " has no color");
    }
    colors[i] = *assigned[i];
  }
  return colors;
}

inline std::vector<Color> read_colors(const std::filesystem::path& path, const LoadedGraph& loaded) {
  auto in = detail::open_input(path);
  return parse_colors(in, loaded);
}

inline void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::int64_t>& labels = {}) {
  auto label = [&](NodeId u) { return labels.empty() ? static_cast<std::int64_t>(u) : labels[u]; };
  for (const Edge& e : g.edges()) out << label(e.source) << ' ' << label(e.target) << '\n';
}

}  // namespace kswitch
