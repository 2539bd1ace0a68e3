#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pluennecke/graph.hpp"

namespace pluennecke {

struct GraphDocument {
  int format_version = 1;
  LayeredGraph graph;
  std::string provenance;  // free-text construction recipe, may be empty
};

/// Graph document, version 1. Fixed part: header line, "level h",
/// "layers s0 .. sh", then per-gap "edges i" blocks with one "u v" pair per
/// line sorted by (u, v). Optional trailing part: a "provenance" line and
/// per-layer "labels i" blocks. Serialization is byte-deterministic.
inline void save_graph(std::ostream& out, const LayeredGraph& g,
                       const std::string& provenance = "") {
  out << "pluennecke-graph v1\n";
  out << "level " << g.level() << "\n";
  out << "layers";
  for (int s : g.layer_sizes()) out << " " << s;
  out << "\n";
  for (int i = 0; i < g.level(); ++i) {
    out << "edges " << i << "\n";
    for (const auto& [u, v] : g.gap_edges(i)) out << u << " " << v << "\n";
  }
  if (!provenance.empty()) out << "provenance " << provenance << "\n";
  if (g.has_labels()) {
    for (int i = 0; i <= g.level(); ++i) {
      out << "labels " << i << "\n";
      for (int v = 0; v < g.layer_size(i); ++v)
        out << v << " " << g.label(i, v) << "\n";
    }
  }
}

inline std::string graph_to_string(const LayeredGraph& g,
                                   const std::string& provenance = "") {
  std::ostringstream out;
  save_graph(out, g, provenance);
  return out.str();
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++number_;
    return true;
  }
  int number() const { return number_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ValidationError("graph document, line " + std::to_string(number_) +
                          ": " + message);
  }

 private:
  std::istream& in_;
  int number_ = 0;
};

inline long long parse_int(const std::string& token, LineReader& reader) {
  try {
    std::size_t used = 0;
    long long value = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    reader.fail("expected an integer, got '" + token + "'");
  }
}

}  // namespace detail

inline GraphDocument load_graph(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next(line) || line != "pluennecke-graph v1")
    reader.fail("expected header 'pluennecke-graph v1'");

  if (!reader.next(line) || line.rfind("level ", 0) != 0)
    reader.fail("expected 'level h'");
  const int level = static_cast<int>(detail::parse_int(line.substr(6), reader));
  if (level < 1) reader.fail("level must be at least 1");

  if (!reader.next(line) || line.rfind("layers", 0) != 0)
    reader.fail("expected 'layers s0 ... sh'");
  std::vector<int> sizes;
  {
    std::istringstream tokens(line.substr(6));
    std::string token;
    while (tokens >> token)
      sizes.push_back(static_cast<int>(detail::parse_int(token, reader)));
  }
  if (static_cast<int>(sizes.size()) != level + 1)
    reader.fail("expected " + std::to_string(level + 1) + " layer sizes, got " +
                std::to_string(sizes.size()));

  std::vector<EdgeList> edges(level);
  std::string provenance;
  std::optional<std::vector<std::vector<std::string>>> labels;
  int expected_gap = 0;
  bool pending = reader.next(line);
  while (pending) {
    if (line.rfind("edges ", 0) == 0) {
      const int gap = static_cast<int>(detail::parse_int(line.substr(6), reader));
      if (gap != expected_gap)
        reader.fail("expected 'edges " + std::to_string(expected_gap) +
                    "', got gap " + std::to_string(gap));
      if (gap >= level) reader.fail("edge gap out of range");
      ++expected_gap;
      while ((pending = reader.next(line))) {
        if (line.rfind("edges ", 0) == 0 || line.rfind("provenance", 0) == 0 ||
            line.rfind("labels ", 0) == 0 || line.empty())
          break;
        std::istringstream pair(line);
        std::string a, b, extra;
        if (!(pair >> a >> b) || (pair >> extra))
          reader.fail("expected 'u v'");
        edges[gap].emplace_back(
            static_cast<int>(detail::parse_int(a, reader)),
            static_cast<int>(detail::parse_int(b, reader)));
      }
    } else if (line.rfind("provenance", 0) == 0) {
      provenance = line.size() > 11 ? line.substr(11) : "";
      pending = reader.next(line);
    } else if (line.rfind("labels ", 0) == 0) {
      const int layer =
          static_cast<int>(detail::parse_int(line.substr(7), reader));
      if (layer < 0 || layer > level) reader.fail("label layer out of range");
      if (!labels) labels.emplace(level + 1);
      auto& layer_labels = (*labels)[layer];
      layer_labels.assign(sizes[layer], "");
      while ((pending = reader.next(line))) {
        if (line.rfind("edges ", 0) == 0 || line.rfind("provenance", 0) == 0 ||
            line.rfind("labels ", 0) == 0 || line.empty())
          break;
        const auto space = line.find(' ');
        if (space == std::string::npos) reader.fail("expected 'index label'");
        const int index = static_cast<int>(
            detail::parse_int(line.substr(0, space), reader));
        if (index < 0 || index >= sizes[layer])
          reader.fail("label index out of range");
        layer_labels[index] = line.substr(space + 1);
      }
    } else if (line.empty()) {
      pending = reader.next(line);
    } else {
      reader.fail("unrecognized line '" + line + "'");
    }
  }
  if (expected_gap != level)
    throw ValidationError("graph document: expected " + std::to_string(level) +
                          " edge blocks, found " + std::to_string(expected_gap));
  try {
    return GraphDocument{1,
                         LayeredGraph(std::move(sizes), std::move(edges),
                                      std::move(labels)),
                         std::move(provenance)};
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("graph document: ") + e.what());
  }
}

inline GraphDocument load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file '" + path + "'");
  return load_graph(in);
}

inline void save_graph_file(const std::string& path, const LayeredGraph& g,
                            const std::string& provenance = "") {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write graph file '" + path + "'");
  save_graph(out, g, provenance);
}

/// DOT output with one rank group per layer and vertices named L{layer}_{index}.
inline std::string export_dot(const LayeredGraph& g) {
  std::ostringstream out;
  out << "digraph layered {\n";
  out << "  rankdir=BT;\n";
  for (int i = 0; i <= g.level(); ++i) {
    out << "  { rank=same;";
    for (int v = 0; v < g.layer_size(i); ++v) {
      out << " L" << i << "_" << v;
      if (g.has_labels()) out << " [label=\"" << g.label(i, v) << "\"]";
      out << ";";
    }
    out << " }\n";
  }
  for (int i = 0; i < g.level(); ++i)
    for (const auto& [u, v] : g.gap_edges(i))
      out << "  L" << i << "_" << u << " -> L" << (i + 1) << "_" << v << ";\n";
  out << "}\n";
  return out.str();
}

/// Plain adjacency listing: layer sizes, then one "layer/index: neighbors"
/// line per non-top vertex. Importing reconstructs the structure (labels are
/// not carried).
inline std::string export_adjacency_text(const LayeredGraph& g) {
  std::ostringstream out;
  out << "layers";
  for (int s : g.layer_sizes()) out << " " << s;
  out << "\n";
  for (int i = 0; i < g.level(); ++i)
    for (int u = 0; u < g.layer_size(i); ++u) {
      out << i << "/" << u << ":";
      for (int v : g.out_neighbors(i, u)) out << " " << v;
      out << "\n";
    }
  return out.str();
}

inline LayeredGraph import_adjacency_text(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next(line) || line.rfind("layers", 0) != 0)
    reader.fail("expected 'layers s0 ... sh'");
  std::vector<int> sizes;
  {
    std::istringstream tokens(line.substr(6));
    std::string token;
    while (tokens >> token)
      sizes.push_back(static_cast<int>(detail::parse_int(token, reader)));
  }
  if (sizes.size() < 2) reader.fail("need at least two layers");
  std::vector<EdgeList> edges(sizes.size() - 1);
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto slash = line.find('/');
    const auto colon = line.find(':');
    if (slash == std::string::npos || colon == std::string::npos ||
        colon < slash)
      reader.fail("expected 'layer/index: neighbors'");
    const int layer = static_cast<int>(
        detail::parse_int(line.substr(0, slash), reader));
    const int u = static_cast<int>(
        detail::parse_int(line.substr(slash + 1, colon - slash - 1), reader));
    if (layer < 0 || layer + 1 >= static_cast<int>(sizes.size()))
      reader.fail("layer out of range");
    std::istringstream tokens(line.substr(colon + 1));
    std::string token;
    while (tokens >> token)
      edges[layer].emplace_back(
          u, static_cast<int>(detail::parse_int(token, reader)));
  }
  return LayeredGraph(std::move(sizes), std::move(edges));
}

}  // namespace pluennecke
