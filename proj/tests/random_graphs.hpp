#pragma once

#include <random>
#include <vector>

#include "pluennecke/graph.hpp"

namespace testgen {

inline pluennecke::LayeredGraph random_layered_graph(std::mt19937& rng,
                                                     int max_level = 4,
                                                     int max_size = 5) {
  std::uniform_int_distribution<int> level_dist(1, max_level);
  std::uniform_int_distribution<int> size_dist(1, max_size);
  const int level = level_dist(rng);
  std::vector<int> sizes(level + 1);
  for (auto& s : sizes) s = size_dist(rng);
  std::vector<pluennecke::EdgeList> edges(level);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int i = 0; i < level; ++i)
    for (int u = 0; u < sizes[i]; ++u)
      for (int v = 0; v < sizes[i + 1]; ++v)
        if (coin(rng) != 0) edges[i].emplace_back(u, v);
  return pluennecke::LayeredGraph(std::move(sizes), std::move(edges));
}

inline pluennecke::VertexSet random_subset(std::mt19937& rng,
                                           const pluennecke::LayeredGraph& g,
                                           int layer) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> members;
  for (int v = 0; v < g.layer_size(layer); ++v)
    if (coin(rng)) members.push_back(v);
  if (members.empty()) members.push_back(0);
  return pluennecke::VertexSet{layer, members};
}

}  // namespace testgen
