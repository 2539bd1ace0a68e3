#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pluennecke/graph.hpp"

namespace pluennecke {

/// Group elements are integer vectors: a single coordinate reduced mod n for
/// cyclic groups, `rank` coordinates for free commutative groups.
using GroupElement = std::vector<long long>;

class AbelianGroupSpec {
 public:
  static AbelianGroupSpec cyclic(long long modulus) {
    if (modulus < 2)
      throw ValidationError("cyclic group modulus must be at least 2");
    return AbelianGroupSpec(modulus, 1);
  }
  static AbelianGroupSpec free_group(int rank) {
    if (rank < 1) throw ValidationError("free group rank must be at least 1");
    return AbelianGroupSpec(0, rank);
  }

  bool is_cyclic() const { return modulus_ != 0; }
  long long modulus() const { return modulus_; }
  int rank() const { return rank_; }

  GroupElement reduce(GroupElement e) const {
    if (static_cast<int>(e.size()) != rank_)
      throw ValidationError("group element has wrong number of coordinates");
    if (is_cyclic()) e[0] = ((e[0] % modulus_) + modulus_) % modulus_;
    return e;
  }
  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r(rank_);
    for (int i = 0; i < rank_; ++i) r[i] = a[i] + b[i];
    return reduce(std::move(r));
  }
  GroupElement zero() const { return GroupElement(rank_, 0); }

  std::string format(const GroupElement& e) const {
    if (is_cyclic()) return std::to_string(e[0]);
    std::string s = "(";
    for (int i = 0; i < rank_; ++i) {
      if (i) s += ",";
      s += std::to_string(e[i]);
    }
    return s + ")";
  }

  friend bool operator==(const AbelianGroupSpec&,
                         const AbelianGroupSpec&) = default;

 private:
  AbelianGroupSpec(long long modulus, int rank)
      : modulus_(modulus), rank_(rank) {}

  long long modulus_;  // 0 means free
  int rank_;
};

/// A finite nonempty set of group elements, reduced and canonically ordered.
struct GroupSet {
  AbelianGroupSpec group;
  std::vector<GroupElement> elements;
};

inline GroupSet make_group_set(const AbelianGroupSpec& group,
                               std::vector<GroupElement> elements) {
  for (auto& e : elements) e = group.reduce(std::move(e));
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  if (elements.empty()) throw ValidationError("group set must be nonempty");
  return GroupSet{group, std::move(elements)};
}

/// The addition graph of A and B: layer i enumerates A+iB and x in layer i-1
/// is joined to y in layer i exactly when y-x lies in B.
inline LayeredGraph addition_graph(const GroupSet& a, const GroupSet& b,
                                   int level) {
  if (!(a.group == b.group))
    throw ValidationError("addition_graph: A and B lie in different groups");
  if (level < 1) throw ValidationError("addition_graph: level must be >= 1");

  const auto& group = a.group;
  std::vector<std::vector<GroupElement>> layers;
  layers.push_back(a.elements);
  for (int i = 0; i < level; ++i) {
    std::vector<GroupElement> next;
    next.reserve(layers.back().size() * b.elements.size());
    for (const auto& x : layers.back())
      for (const auto& beta : b.elements) next.push_back(group.add(x, beta));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layers.push_back(std::move(next));
  }

  std::vector<int> sizes;
  std::vector<std::vector<std::string>> labels;
  for (const auto& layer : layers) {
    sizes.push_back(static_cast<int>(layer.size()));
    std::vector<std::string> layer_labels;
    layer_labels.reserve(layer.size());
    for (const auto& e : layer) layer_labels.push_back(group.format(e));
    labels.push_back(std::move(layer_labels));
  }

  std::vector<EdgeList> edges(level);
  for (int i = 0; i < level; ++i) {
    std::map<GroupElement, int> next_index;
    for (int v = 0; v < sizes[i + 1]; ++v) next_index[layers[i + 1][v]] = v;
    for (int u = 0; u < sizes[i]; ++u)
      for (const auto& beta : b.elements)
        edges[i].emplace_back(u, next_index.at(group.add(layers[i][u], beta)));
  }
  return LayeredGraph(std::move(sizes), std::move(edges), std::move(labels));
}

/// Addition graph of a singleton against n free generators; layer i counts
/// the i-element multisets over the generators.
inline LayeredGraph independent_addition_graph(int generators, int level) {
  if (generators < 1)
    throw ValidationError("independent_addition_graph: need >= 1 generator");
  const auto group = AbelianGroupSpec::free_group(generators);
  GroupSet a = make_group_set(group, {group.zero()});
  std::vector<GroupElement> gens;
  for (int i = 0; i < generators; ++i) {
    GroupElement e(generators, 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return addition_graph(a, make_group_set(group, std::move(gens)), level);
}

inline LayeredGraph path_graph(int level) {
  std::vector<int> sizes(level + 1, 1);
  std::vector<EdgeList> edges(level, EdgeList{{0, 0}});
  return LayeredGraph(std::move(sizes), std::move(edges));
}

/// Layer-wise Cartesian product; degrees and magnification ratios multiply.
inline LayeredGraph cartesian_product(const LayeredGraph& g,
                                      const LayeredGraph& k) {
  if (g.level() != k.level())
    throw ValidationError("cartesian_product: levels differ (" +
                          std::to_string(g.level()) + " vs " +
                          std::to_string(k.level()) + ")");
  const int h = g.level();
  std::vector<int> sizes(h + 1);
  for (int i = 0; i <= h; ++i) sizes[i] = g.layer_size(i) * k.layer_size(i);

  std::vector<EdgeList> edges(h);
  for (int i = 0; i < h; ++i) {
    edges[i].reserve(g.gap_edges(i).size() * k.gap_edges(i).size());
    for (const auto& [gu, gv] : g.gap_edges(i))
      for (const auto& [ku, kv] : k.gap_edges(i))
        edges[i].emplace_back(gu * k.layer_size(i) + ku,
                              gv * k.layer_size(i + 1) + kv);
  }

  std::optional<std::vector<std::vector<std::string>>> labels;
  if (g.has_labels() && k.has_labels()) {
    labels.emplace(h + 1);
    for (int i = 0; i <= h; ++i) {
      (*labels)[i].reserve(sizes[i]);
      for (int u = 0; u < g.layer_size(i); ++u)
        for (int x = 0; x < k.layer_size(i); ++x)
          (*labels)[i].push_back("(" + g.label(i, u) + "," + k.label(i, x) +
                                 ")");
    }
  }
  return LayeredGraph(std::move(sizes), std::move(edges), std::move(labels));
}

/// Reverses layers and edges; applying it twice returns the original graph.
inline LayeredGraph inverse_graph(const LayeredGraph& g) {
  const int h = g.level();
  std::vector<int> sizes(h + 1);
  for (int i = 0; i <= h; ++i) sizes[i] = g.layer_size(h - i);
  std::vector<EdgeList> edges(h);
  for (int i = 0; i < h; ++i)
    for (const auto& [u, v] : g.gap_edges(h - i - 1))
      edges[i].emplace_back(v, u);
  std::optional<std::vector<std::vector<std::string>>> labels;
  if (g.has_labels()) {
    labels.emplace(h + 1);
    for (int i = 0; i <= h; ++i) (*labels)[i] = (*g.labels())[h - i];
  }
  return LayeredGraph(std::move(sizes), std::move(edges), std::move(labels));
}

/// The channel between x and y: the subgraph induced by vertices lying on a
/// directed path that starts in x and ends in y, re-leveled to start at 0.
inline LayeredGraph channel(const LayeredGraph& g, const VertexSet& x,
                            const VertexSet& y) {
  g.check_set(x);
  g.check_set(y);
  if (x.layer >= y.layer)
    throw ValidationError("channel: x must lie in a lower layer than y");

  const int lo = x.layer, hi = y.layer;
  std::vector<std::vector<char>> fwd(hi - lo + 1), bwd(hi - lo + 1);
  fwd[0].assign(g.layer_size(lo), 0);
  for (int m : x.members) fwd[0][m] = 1;
  for (int i = lo + 1; i <= hi; ++i) {
    fwd[i - lo].assign(g.layer_size(i), 0);
    for (int u = 0; u < g.layer_size(i - 1); ++u)
      if (fwd[i - 1 - lo][u])
        for (int v : g.out_neighbors(i - 1, u)) fwd[i - lo][v] = 1;
  }
  bwd[hi - lo].assign(g.layer_size(hi), 0);
  for (int m : y.members) bwd[hi - lo][m] = 1;
  for (int i = hi - 1; i >= lo; --i) {
    bwd[i - lo].assign(g.layer_size(i), 0);
    for (int v = 0; v < g.layer_size(i + 1); ++v)
      if (bwd[i + 1 - lo][v])
        for (int u : g.in_neighbors(i + 1, v)) bwd[i - lo][u] = 1;
  }

  std::vector<std::vector<int>> kept(hi - lo + 1);
  std::vector<std::vector<int>> new_index(hi - lo + 1);
  for (int i = lo; i <= hi; ++i) {
    new_index[i - lo].assign(g.layer_size(i), -1);
    for (int v = 0; v < g.layer_size(i); ++v)
      if (fwd[i - lo][v] && bwd[i - lo][v]) {
        new_index[i - lo][v] = static_cast<int>(kept[i - lo].size());
        kept[i - lo].push_back(v);
      }
    if (kept[i - lo].empty())
      throw ValidationError("empty channel: no directed path from x to y");
  }

  std::vector<int> sizes(hi - lo + 1);
  for (int i = 0; i <= hi - lo; ++i) sizes[i] = static_cast<int>(kept[i].size());
  std::vector<EdgeList> edges(hi - lo);
  for (int i = lo; i < hi; ++i)
    for (int u : kept[i - lo])
      for (int v : g.out_neighbors(i, u))
        if (new_index[i - lo + 1][v] >= 0)
          edges[i - lo].emplace_back(new_index[i - lo][u],
                                     new_index[i - lo + 1][v]);
  std::optional<std::vector<std::vector<std::string>>> labels;
  if (g.has_labels()) {
    labels.emplace(hi - lo + 1);
    for (int i = lo; i <= hi; ++i)
      for (int v : kept[i - lo]) (*labels)[i - lo].push_back(g.label(i, v));
  }
  return LayeredGraph(std::move(sizes), std::move(edges), std::move(labels));
}

/// Channel of Z: all maximum-length paths starting in Z.
inline LayeredGraph channel_of(const LayeredGraph& g, const VertexSet& z) {
  return channel(g, z, full_layer(g, g.level()));
}

}  // namespace pluennecke
