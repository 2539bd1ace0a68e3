#pragma once

#include <string>

#include "pluennecke/graph.hpp"
#include "pluennecke/magnification.hpp"
#include "pluennecke/matching.hpp"
#include "pluennecke/ratio.hpp"

namespace pluennecke {

/// Disjoint union of a level-two graph g (with all magnification ratios at
/// least 1) and a ratio-1 regular graph r, plus every cross edge from layer i
/// of g to layer i+1 of r. The result has every magnification ratio equal to
/// one. Preconditions are established by running the verifiers, not trusted.
inline LayeredGraph join_construction(const LayeredGraph& g,
                                      const LayeredGraph& r,
                                      const MagnificationOptions& opts = {}) {
  if (g.level() != 2 || r.level() != 2)
    throw ValidationError("join_construction: both inputs must be level 2");
  if (!is_commutative(g))
    throw ValidationError(
        "join_construction: g violates the matching conditions");
  if (!is_commutative(r))
    throw ValidationError(
        "join_construction: r violates the matching conditions");
  const auto ratio = verify_regular(r);
  if (!ratio || *ratio != ExactRatio(1))
    throw ValidationError("join_construction: r is not regular of ratio 1");
  const auto table = magnification_table(g, opts);
  for (int i = 1; i <= 2; ++i)
    if (table[i].value < ExactRatio(1))
      throw ValidationError("join_construction: D_" + std::to_string(i) +
                            "(g) = " + table[i].value.str() + " < 1");

  std::vector<int> sizes(3);
  for (int i = 0; i <= 2; ++i) sizes[i] = g.layer_size(i) + r.layer_size(i);
  std::vector<EdgeList> edges(2);
  for (int i = 0; i < 2; ++i) {
    edges[i] = g.gap_edges(i);
    for (const auto& [u, v] : r.gap_edges(i))
      edges[i].emplace_back(g.layer_size(i) + u, g.layer_size(i + 1) + v);
    // the cross edges: everything in layer i of g to everything in layer
    // i+1 of r
    for (int u = 0; u < g.layer_size(i); ++u)
      for (int v = 0; v < r.layer_size(i + 1); ++v)
        edges[i].emplace_back(u, g.layer_size(i + 1) + v);
  }
  std::optional<std::vector<std::vector<std::string>>> labels;
  if (g.has_labels() && r.has_labels()) {
    labels.emplace(3);
    for (int i = 0; i <= 2; ++i) {
      for (int u = 0; u < g.layer_size(i); ++u)
        (*labels)[i].push_back(g.label(i, u));
      for (int v = 0; v < r.layer_size(i); ++v)
        (*labels)[i].push_back(r.label(i, v));
    }
  }
  return LayeredGraph(std::move(sizes), std::move(edges), std::move(labels));
}

}  // namespace pluennecke
