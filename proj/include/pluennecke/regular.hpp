#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pluennecke/constructors.hpp"
#include "pluennecke/graph.hpp"
#include "pluennecke/matching.hpp"
#include "pluennecke/ratio.hpp"

namespace pluennecke {

/// The explicit one-to-k matching carried by the ratio-1 addition graph over
/// Z_{2k^2} with B = {0,...,k-1} u {k,2k,...,k^2}. For each b in B the entry
/// holds the k offsets o such that the matching assigns vertex v+o (in the
/// bottom layer) to image vertex v+b; offsets are translation invariant and
/// stored reduced mod 2k^2.
struct ThetaMap {
  int k = 0;
  std::vector<long long> b_elements;
  std::vector<std::vector<long long>> offsets;  // aligned with b_elements

  long long modulus() const { return 2ll * k * k; }
};

namespace detail {

inline ThetaMap make_theta_map(int k) {
  ThetaMap theta;
  theta.k = k;
  const long long m = 2ll * k * k;
  auto reduce = [m](long long x) { return ((x % m) + m) % m; };

  auto add = [&](long long b, std::vector<long long> offs) {
    theta.b_elements.push_back(reduce(b));
    for (auto& o : offs) o = reduce(o);
    theta.offsets.push_back(std::move(offs));
  };

  {
    std::vector<long long> offs;
    for (long long t = 0; t <= k - 1; ++t) offs.push_back(-t);
    add(0, std::move(offs));
  }
  for (long long j = 1; j <= k - 1; ++j) {
    std::vector<long long> offs{j};
    for (long long t = 2; t <= k; ++t) offs.push_back(j - t * k);
    add(j, std::move(offs));
  }
  {
    std::vector<long long> offs{k};
    for (long long t = 1; t <= k - 1; ++t) offs.push_back(-t * k);
    add(k, std::move(offs));
  }
  for (long long j = 2; j <= k; ++j) {
    std::vector<long long> offs;
    for (long long t = 0; t <= k - 1; ++t) offs.push_back(j * k - t);
    add(j * k, std::move(offs));
  }
  return theta;
}

inline void validate_theta_map(const ThetaMap& theta) {
  const long long m = theta.modulus();
  std::vector<char> in_b(m, 0), seen(m, 0);
  for (long long b : theta.b_elements) in_b[b] = 1;
  for (std::size_t i = 0; i < theta.b_elements.size(); ++i) {
    const long long b = theta.b_elements[i];
    for (long long o : theta.offsets[i]) {
      const long long diff = ((b - o) % m + m) % m;
      if (!in_b[diff])
        throw ValidationError(
            "theta map: offset " + std::to_string(o) + " for b=" +
            std::to_string(b) + " is not joined to it (difference " +
            std::to_string(diff) + " lies outside B)");
      if (seen[o])
        throw ValidationError("theta map: offset " + std::to_string(o) +
                              " for b=" + std::to_string(b) +
                              " repeats an earlier assignment");
      seen[o] = 1;
    }
  }
}

}  // namespace detail

/// Builds the level-h ratio-1 addition graph over Z_{2k^2} together with its
/// validated one-to-k matching offsets. Vertex indices coincide with group
/// residues in every layer.
inline std::pair<LayeredGraph, ThetaMap> build_theta_r1(int k, int level) {
  if (k < 2) throw ValidationError("build_theta_r1: k must be >= 2");
  if (level < 1) throw ValidationError("build_theta_r1: level must be >= 1");
  ThetaMap theta = detail::make_theta_map(k);
  detail::validate_theta_map(theta);

  const long long m = theta.modulus();
  const auto group = AbelianGroupSpec::cyclic(m);
  std::vector<GroupElement> everything;
  for (long long x = 0; x < m; ++x) everything.push_back({x});
  std::vector<GroupElement> b;
  for (long long x : theta.b_elements) b.push_back({x});
  LayeredGraph graph = addition_graph(make_group_set(group, everything),
                                      make_group_set(group, std::move(b)),
                                      level);
  return {std::move(graph), std::move(theta)};
}

/// Adds a complete bottom layer below the product of g with the matching
/// graph of the same level, turning a ratio-k regular graph whose bottom two
/// layers are completely joined into one of the next level with the same
/// property.
inline LayeredGraph extend_level(const LayeredGraph& g, int k) {
  if (k < 2) throw ValidationError("extend_level: k must be >= 2");
  const auto ratio = verify_regular(g);
  if (!ratio || *ratio != ExactRatio(k))
    throw ValidationError("extend_level: input is not regular of ratio " +
                          std::to_string(k));
  const long long complete =
      static_cast<long long>(g.layer_size(0)) * g.layer_size(1);
  if (static_cast<long long>(g.gap_edges(0).size()) != complete)
    throw ValidationError(
        "extend_level: bottom two layers are not completely joined");
  const int d = static_cast<int>(g.in_neighbors(1, 0).size());

  LayeredGraph product =
      cartesian_product(g, build_theta_r1(k, g.level()).first);
  const int new_bottom = 2 * d * k;

  std::vector<int> sizes;
  sizes.push_back(new_bottom);
  for (int s : product.layer_sizes()) sizes.push_back(s);
  std::vector<EdgeList> edges(product.level() + 1);
  edges[0].reserve(static_cast<std::size_t>(new_bottom) *
                   product.layer_size(0));
  for (int u = 0; u < new_bottom; ++u)
    for (int v = 0; v < product.layer_size(0); ++v) edges[0].emplace_back(u, v);
  for (int i = 0; i < product.level(); ++i) edges[i + 1] = product.gap_edges(i);
  return LayeredGraph(std::move(sizes), std::move(edges));
}

namespace detail {

inline BigInt predicted_rk_vertices(int k, int level) {
  if (k == 1) return level + 1;
  // Base in-degree after the extensions is (2k)^(level-1); layer i then has
  // k^i times the bottom size.
  BigInt bottom = ipow(2 * k, level - 1);
  BigInt total = 0;
  for (int i = 0; i <= level; ++i) total += bottom * ipow(k, i);
  return total;
}

inline void check_size_budget(const BigInt& predicted, std::size_t budget,
                              const std::string& what) {
  if (predicted > BigInt(budget))
    throw BudgetError(what + " would have " + predicted.str() +
                      " vertices, exceeding the size budget of " +
                      std::to_string(budget));
}

}  // namespace detail

/// Regular commutative graph of integer ratio k and the requested level,
/// grown from the one-vertex star by repeated level extension. k = 1 gives
/// the path.
inline LayeredGraph build_rk(int k, int level,
                             std::size_t size_budget = 1'000'000) {
  if (k < 1) throw ValidationError("build_rk: k must be >= 1");
  if (level < 1) throw ValidationError("build_rk: level must be >= 1");
  if (k == 1) return path_graph(level);
  detail::check_size_budget(detail::predicted_rk_vertices(k, level),
                            size_budget,
                            "build_rk(" + std::to_string(k) + ", " +
                                std::to_string(level) + ")");
  EdgeList star_edges;
  for (int v = 0; v < k; ++v) star_edges.emplace_back(0, v);
  LayeredGraph graph({1, k}, {std::move(star_edges)});
  for (int current = 1; current < level; ++current)
    graph = extend_level(graph, k);
  return graph;
}

/// Regular commutative graph of rational ratio p/q: the product of an R_p
/// with the inverse of an R_q.
inline LayeredGraph build_rc(int p, int q, int level,
                             std::size_t size_budget = 1'000'000) {
  if (p < 1 || q < 1) throw ValidationError("build_rc: p, q must be >= 1");
  if (level < 1) throw ValidationError("build_rc: level must be >= 1");
  const BigInt vp = detail::predicted_rk_vertices(p, level);
  const BigInt vq = detail::predicted_rk_vertices(q, level);
  detail::check_size_budget(vp * vq,  // coarse upper bound on the product
                            size_budget,
                            "build_rc(" + std::to_string(p) + "/" +
                                std::to_string(q) + ", " +
                                std::to_string(level) + ")");
  return cartesian_product(build_rk(p, level, size_budget),
                           inverse_graph(build_rk(q, level, size_budget)));
}

}  // namespace pluennecke
