#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pluennecke/ratio.hpp"

namespace pluennecke {

/// Address of a vertex: layer number plus dense index within the layer.
struct VertexId {
  int layer = 0;
  int index = 0;

  friend bool operator==(const VertexId&, const VertexId&) = default;
};

/// A subset of a single layer's vertices. Members are sorted and unique.
struct VertexSet {
  int layer = 0;
  std::vector<int> members;

  bool empty() const { return members.empty(); }
  int size() const { return static_cast<int>(members.size()); }
  bool contains(int idx) const {
    return std::binary_search(members.begin(), members.end(), idx);
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
};

inline VertexSet make_vertex_set(int layer, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return VertexSet{layer, std::move(members)};
}

using EdgeList = std::vector<std::pair<int, int>>;

/// Immutable directed graph with vertices partitioned into layers 0..h and
/// edges only between consecutive layers. Construction validates every
/// structural invariant; afterwards all operations are pure queries, so a
/// graph can be shared freely across threads.
class LayeredGraph {
 public:
  LayeredGraph(std::vector<int> layer_sizes, std::vector<EdgeList> gap_edges,
               std::optional<std::vector<std::vector<std::string>>> labels =
                   std::nullopt)
      : layer_sizes_(std::move(layer_sizes)),
        gap_edges_(std::move(gap_edges)),
        labels_(std::move(labels)) {
    const int h = static_cast<int>(layer_sizes_.size()) - 1;
    if (h < 1) throw ValidationError("LayeredGraph: level must be at least 1");
    for (int i = 0; i <= h; ++i) {
      if (layer_sizes_[i] < 1)
        throw ValidationError("LayeredGraph: layer " + std::to_string(i) +
                              " is empty");
    }
    if (static_cast<int>(gap_edges_.size()) != h)
      throw ValidationError("LayeredGraph: expected " + std::to_string(h) +
                            " edge groups, got " +
                            std::to_string(gap_edges_.size()));
    fwd_.resize(h);
    bwd_.resize(h);
    for (int i = 0; i < h; ++i) {
      auto& edges = gap_edges_[i];
      std::sort(edges.begin(), edges.end());
      if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw ValidationError("LayeredGraph: duplicate edge in gap " +
                              std::to_string(i));
      fwd_[i].resize(layer_sizes_[i]);
      bwd_[i].resize(layer_sizes_[i + 1]);
      for (const auto& [u, v] : edges) {
        if (u < 0 || u >= layer_sizes_[i] || v < 0 || v >= layer_sizes_[i + 1])
          throw ValidationError("LayeredGraph: edge (" + std::to_string(u) +
                                "," + std::to_string(v) + ") out of bounds in gap " +
                                std::to_string(i));
        fwd_[i][u].push_back(v);
        bwd_[i][v].push_back(u);
      }
    }
    if (labels_) {
      if (labels_->size() != layer_sizes_.size())
        throw ValidationError("LayeredGraph: label layer count mismatch");
      for (int i = 0; i <= h; ++i)
        if (static_cast<int>((*labels_)[i].size()) != layer_sizes_[i])
          throw ValidationError("LayeredGraph: label count mismatch in layer " +
                                std::to_string(i));
    }
    compute_on_max_path();
  }

  int level() const { return static_cast<int>(layer_sizes_.size()) - 1; }
  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  int layer_size(int layer) const {
    check_layer(layer);
    return layer_sizes_[layer];
  }
  std::size_t vertex_count() const {
    std::size_t n = 0;
    for (int s : layer_sizes_) n += static_cast<std::size_t>(s);
    return n;
  }

  /// Edges from layer `gap` to layer `gap`+1, sorted by (u, v).
  const EdgeList& gap_edges(int gap) const {
    check_gap(gap);
    return gap_edges_[gap];
  }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& e : gap_edges_) n += e.size();
    return n;
  }

  const std::vector<int>& out_neighbors(int layer, int index) const {
    check_vertex(layer, index);
    static const std::vector<int> kNone;
    if (layer == level()) return kNone;
    return fwd_[layer][index];
  }
  const std::vector<int>& in_neighbors(int layer, int index) const {
    check_vertex(layer, index);
    static const std::vector<int> kNone;
    if (layer == 0) return kNone;
    return bwd_[layer - 1][index];
  }

  bool has_labels() const { return labels_.has_value(); }
  const std::string& label(int layer, int index) const {
    check_vertex(layer, index);
    static const std::string kEmpty;
    if (!labels_) return kEmpty;
    return (*labels_)[layer][index];
  }
  const std::optional<std::vector<std::vector<std::string>>>& labels() const {
    return labels_;
  }

  /// True iff some V_0-to-V_h path passes through the vertex.
  bool on_max_length_path(int layer, int index) const {
    check_vertex(layer, index);
    return on_max_path_[layer][index];
  }

  void check_layer(int layer) const {
    if (layer < 0 || layer > level())
      throw ValidationError("layer " + std::to_string(layer) +
                            " out of range [0, " + std::to_string(level()) +
                            "]");
  }
  void check_vertex(int layer, int index) const {
    check_layer(layer);
    if (index < 0 || index >= layer_sizes_[layer])
      throw ValidationError("vertex index " + std::to_string(index) +
                            " out of range [0, " +
                            std::to_string(layer_sizes_[layer]) +
                            ") in layer " + std::to_string(layer));
  }
  void check_set(const VertexSet& s) const {
    check_layer(s.layer);
    for (int m : s.members) check_vertex(s.layer, m);
  }

  friend bool operator==(const LayeredGraph& a, const LayeredGraph& b) {
    return a.layer_sizes_ == b.layer_sizes_ && a.gap_edges_ == b.gap_edges_ &&
           a.labels_ == b.labels_;
  }

 private:
  void check_gap(int gap) const {
    if (gap < 0 || gap >= level())
      throw ValidationError("edge gap " + std::to_string(gap) +
                            " out of range [0, " + std::to_string(level()) +
                            ")");
  }

  void compute_on_max_path() {
    const int h = level();
    std::vector<std::vector<char>> fwd_reach(h + 1), bwd_reach(h + 1);
    fwd_reach[0].assign(layer_sizes_[0], 1);
    for (int i = 1; i <= h; ++i) {
      fwd_reach[i].assign(layer_sizes_[i], 0);
      for (int u = 0; u < layer_sizes_[i - 1]; ++u)
        if (fwd_reach[i - 1][u])
          for (int v : fwd_[i - 1][u]) fwd_reach[i][v] = 1;
    }
    bwd_reach[h].assign(layer_sizes_[h], 1);
    for (int i = h - 1; i >= 0; --i) {
      bwd_reach[i].assign(layer_sizes_[i], 0);
      for (int v = 0; v < layer_sizes_[i + 1]; ++v)
        if (bwd_reach[i + 1][v])
          for (int u : bwd_[i][v]) bwd_reach[i][u] = 1;
    }
    on_max_path_.resize(h + 1);
    for (int i = 0; i <= h; ++i) {
      on_max_path_[i].assign(layer_sizes_[i], 0);
      for (int v = 0; v < layer_sizes_[i]; ++v)
        on_max_path_[i][v] = fwd_reach[i][v] && bwd_reach[i][v];
    }
  }

  std::vector<int> layer_sizes_;
  std::vector<EdgeList> gap_edges_;
  std::optional<std::vector<std::vector<std::string>>> labels_;
  std::vector<std::vector<std::vector<int>>> fwd_, bwd_;
  std::vector<std::vector<char>> on_max_path_;
};

/// Vertices reachable from s by directed paths of |steps| edges; forward for
/// steps > 0, backward for steps < 0. steps == 0 returns s itself.
inline VertexSet image(const LayeredGraph& g, const VertexSet& s, int steps) {
  g.check_set(s);
  const int target = s.layer + steps;
  if (target < 0 || target > g.level())
    throw ValidationError("image: target layer " + std::to_string(target) +
                          " out of range [0, " + std::to_string(g.level()) +
                          "]");
  std::vector<char> frontier(g.layer_size(s.layer), 0);
  for (int m : s.members) frontier[m] = 1;
  const int dir = steps >= 0 ? 1 : -1;
  for (int layer = s.layer; layer != target; layer += dir) {
    std::vector<char> next(g.layer_size(layer + dir), 0);
    for (int u = 0; u < static_cast<int>(frontier.size()); ++u) {
      if (!frontier[u]) continue;
      const auto& nbrs = dir > 0 ? g.out_neighbors(layer, u)
                                 : g.in_neighbors(layer, u);
      for (int v : nbrs) next[v] = 1;
    }
    frontier = std::move(next);
  }
  VertexSet out{target, {}};
  for (int v = 0; v < static_cast<int>(frontier.size()); ++v)
    if (frontier[v]) out.members.push_back(v);
  return out;
}

inline VertexSet complement(const LayeredGraph& g, const VertexSet& s) {
  g.check_set(s);
  VertexSet out{s.layer, {}};
  for (int v = 0; v < g.layer_size(s.layer); ++v)
    if (!s.contains(v)) out.members.push_back(v);
  return out;
}

inline VertexSet full_layer(const LayeredGraph& g, int layer) {
  g.check_layer(layer);
  VertexSet out{layer, {}};
  out.members.resize(g.layer_size(layer));
  for (int v = 0; v < g.layer_size(layer); ++v) out.members[v] = v;
  return out;
}

struct DegreePair {
  int in = 0;
  int out = 0;

  friend bool operator==(const DegreePair&, const DegreePair&) = default;
};

inline DegreePair degrees(const LayeredGraph& g, VertexId v) {
  return DegreePair{
      static_cast<int>(g.in_neighbors(v.layer, v.index).size()),
      static_cast<int>(g.out_neighbors(v.layer, v.index).size())};
}

inline bool max_length_paths_exist_through(const LayeredGraph& g, VertexId v) {
  return g.on_max_length_path(v.layer, v.index);
}

}  // namespace pluennecke
