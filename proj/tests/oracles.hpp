// Independent brute-force oracles for the test suite. These deliberately use
// different algorithms and data structures than the library: plain path
// enumeration instead of frontier masks, counter-based subset scans instead
// of the DFS minimizer, Pascal's triangle instead of multiplicative
// binomials. Tests compare library results against these.
#pragma once

#include <set>
#include <vector>

#include "pluennecke/graph.hpp"
#include "pluennecke/ratio.hpp"

namespace oracles {

using pluennecke::BigInt;
using pluennecke::ExactRatio;
using pluennecke::LayeredGraph;
using pluennecke::VertexSet;

// All directed paths with exactly `edges` edges starting at (layer, start),
// as vertex index sequences (forward only).
inline void collect_paths(const LayeredGraph& g, int layer, int start,
                          int edges, std::vector<int>& prefix,
                          std::vector<std::vector<int>>& out) {
  prefix.push_back(start);
  if (edges == 0) {
    out.push_back(prefix);
  } else {
    for (int next : g.out_neighbors(layer, start))
      collect_paths(g, layer + 1, next, edges - 1, prefix, out);
  }
  prefix.pop_back();
}

inline std::vector<std::vector<int>> all_full_paths(const LayeredGraph& g) {
  std::vector<std::vector<int>> paths;
  std::vector<int> prefix;
  for (int v = 0; v < g.layer_size(0); ++v)
    collect_paths(g, 0, v, g.level(), prefix, paths);
  return paths;
}

// Image by explicit path enumeration.
inline VertexSet naive_image(const LayeredGraph& g, const VertexSet& s,
                             int steps) {
  const bool backward = steps < 0;
  const LayeredGraph* host = &g;
  // Walk backward paths by enumerating forward paths of the same length that
  // end in s.
  std::set<int> result;
  if (!backward) {
    for (int v : s.members) {
      std::vector<std::vector<int>> paths;
      std::vector<int> prefix;
      collect_paths(*host, s.layer, v, steps, prefix, paths);
      for (const auto& p : paths) result.insert(p.back());
    }
  } else {
    const int start_layer = s.layer + steps;
    for (int v = 0; v < g.layer_size(start_layer); ++v) {
      std::vector<std::vector<int>> paths;
      std::vector<int> prefix;
      collect_paths(*host, start_layer, v, -steps, prefix, paths);
      for (const auto& p : paths)
        if (s.contains(p.back())) {
          result.insert(v);
          break;
        }
    }
  }
  VertexSet out{s.layer + steps, {}};
  out.members.assign(result.begin(), result.end());
  return out;
}

struct NaiveMagnification {
  ExactRatio value;
  std::vector<int> witness;
};

// Minimum of |im^(i)(Z)|/|Z| over nonempty Z by counter-based subset scan,
// with the same tie-breaking contract as the library (smaller value, then
// smaller cardinality, then lexicographically smaller members).
inline NaiveMagnification naive_magnification(const LayeredGraph& g,
                                              int steps) {
  const int n = g.layer_size(0);
  NaiveMagnification best;
  bool have = false;
  for (unsigned long long bits = 1; bits < (1ull << n); ++bits) {
    VertexSet z{0, {}};
    for (int v = 0; v < n; ++v)
      if (bits >> v & 1) z.members.push_back(v);
    const ExactRatio value(BigInt(naive_image(g, z, steps).size()),
                           BigInt(z.size()));
    bool better = !have;
    if (have) {
      if (value < best.value)
        better = true;
      else if (value == best.value &&
               z.size() < static_cast<int>(best.witness.size()))
        better = true;
      else if (value == best.value &&
               z.size() == static_cast<int>(best.witness.size()) &&
               z.members < best.witness)
        better = true;
    }
    if (better) {
      best.value = value;
      best.witness = z.members;
      have = true;
    }
  }
  return best;
}

// True iff every maximum-length path meets the set, checked path by path.
inline bool naive_is_separating(const LayeredGraph& g,
                                const std::vector<VertexSet>& members) {
  std::vector<std::set<int>> chosen(g.level() + 1);
  for (const auto& s : members)
    chosen[s.layer].insert(s.members.begin(), s.members.end());
  for (const auto& path : all_full_paths(g)) {
    bool hit = false;
    for (int i = 0; i <= g.level() && !hit; ++i)
      hit = chosen[i].count(path[i]) > 0;
    if (!hit) return false;
  }
  return true;
}

// Exhaustive minimum over all subsets of the on-path vertices; the number of
// on-path vertices must stay small.
inline ExactRatio naive_min_separating_weight(const LayeredGraph& g,
                                              const ExactRatio& c) {
  std::vector<std::pair<int, int>> on_path;
  for (int i = 0; i <= g.level(); ++i)
    for (int v = 0; v < g.layer_size(i); ++v)
      if (g.on_max_length_path(i, v)) on_path.emplace_back(i, v);
  const int n = static_cast<int>(on_path.size());
  ExactRatio best;
  bool have = false;
  for (unsigned long long bits = 0; bits < (1ull << n); ++bits) {
    std::vector<std::vector<int>> per_layer(g.level() + 1);
    ExactRatio weight;
    for (int j = 0; j < n; ++j)
      if (bits >> j & 1) {
        per_layer[on_path[j].first].push_back(on_path[j].second);
        weight += c.pow(-on_path[j].first);
      }
    if (have && !(weight < best)) continue;
    std::vector<VertexSet> members;
    for (int i = 0; i <= g.level(); ++i)
      if (!per_layer[i].empty()) members.push_back({i, per_layer[i]});
    if (naive_is_separating(g, members)) {
      best = weight;
      have = true;
    }
  }
  return best;
}

// Smallest cardinality of any separating set (unweighted), for the weak
// duality check against the disjoint-path count.
inline int naive_min_separating_cardinality(const LayeredGraph& g) {
  std::vector<std::pair<int, int>> on_path;
  for (int i = 0; i <= g.level(); ++i)
    for (int v = 0; v < g.layer_size(i); ++v)
      if (g.on_max_length_path(i, v)) on_path.emplace_back(i, v);
  const int n = static_cast<int>(on_path.size());
  int best = n;
  for (unsigned long long bits = 0; bits < (1ull << n); ++bits) {
    const int card = __builtin_popcountll(bits);
    if (card >= best) continue;
    std::vector<std::vector<int>> per_layer(g.level() + 1);
    for (int j = 0; j < n; ++j)
      if (bits >> j & 1) per_layer[on_path[j].first].push_back(on_path[j].second);
    std::vector<VertexSet> members;
    for (int i = 0; i <= g.level(); ++i)
      if (!per_layer[i].empty()) members.push_back({i, per_layer[i]});
    if (naive_is_separating(g, members)) best = card;
  }
  return best;
}

// Pascal's triangle.
inline BigInt pascal_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::vector<BigInt>> rows(n + 1);
  for (int i = 0; i <= n; ++i) {
    rows[i].assign(i + 1, 1);
    for (int j = 1; j < i; ++j) rows[i][j] = rows[i - 1][j - 1] + rows[i - 1][j];
  }
  return rows[n][k];
}

}  // namespace oracles
