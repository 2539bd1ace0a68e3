#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pluennecke/detail/flow.hpp"
#include "pluennecke/detail/subset_enum.hpp"
#include "pluennecke/graph.hpp"
#include "pluennecke/matching.hpp"
#include "pluennecke/ratio.hpp"

namespace pluennecke {

struct MagnificationOptions {
  int subset_cap = 24;
  int threads = 1;
};

struct MagnificationReport {
  int steps = 0;
  ExactRatio value;
  VertexSet witness;
  // The witness is tie-broken toward minimum cardinality, then smallest
  // member list, so it is always a cardinality-minimal attainer.
  bool witness_minimal = true;
};

namespace detail {

inline void check_subset_cap(int n, int cap, const std::string& where) {
  if (n > cap)
    throw BudgetError(where + ": bottom layer has " + std::to_string(n) +
                      " vertices, exceeding the subset enumeration cap of " +
                      std::to_string(cap) +
                      "; raise the cap explicitly to override");
}

}  // namespace detail

/// Exact magnification ratios D_1..D_h by enumeration of every nonempty
/// subset of the bottom layer. Index i of the result holds D_i.
inline std::vector<MagnificationReport> magnification_table(
    const LayeredGraph& g, const MagnificationOptions& opts = {}) {
  detail::check_subset_cap(g.layer_size(0), opts.subset_cap,
                           "magnification_table");
  const auto images = detail::per_vertex_images(g);
  const auto best =
      detail::SubsetMinimizer(g, images).run(std::max(1, opts.threads));
  std::vector<MagnificationReport> table(g.level() + 1);
  for (int i = 1; i <= g.level(); ++i) {
    table[i].steps = i;
    table[i].value =
        ExactRatio(BigInt(best[i].image_size), BigInt(best[i].subset_size));
    table[i].witness = VertexSet{0, best[i].members};
  }
  return table;
}

inline MagnificationReport magnification_ratio(
    const LayeredGraph& g, int steps, const MagnificationOptions& opts = {}) {
  if (steps < 1 || steps > g.level())
    throw ValidationError("magnification_ratio: steps must lie in [1, " +
                          std::to_string(g.level()) + "]");
  return magnification_table(g, opts)[steps];
}

struct InequalityReport {
  bool holds = true;
  std::vector<MagnificationReport> table;
};

/// Theorem check: D_i^h >= D_h^i for all i, compared exactly (no roots).
inline InequalityReport plunnecke_inequality_check(
    const LayeredGraph& g, const MagnificationOptions& opts = {}) {
  if (!is_commutative(g))
    throw ValidationError(
        "plunnecke_inequality_check: graph violates the matching conditions; "
        "the theorem's hypotheses are unmet");
  InequalityReport report;
  report.table = magnification_table(g, opts);
  const int h = g.level();
  const ExactRatio& top = report.table[h].value;
  for (int i = 1; i <= h; ++i)
    if (report.table[i].value.pow(h) < top.pow(i)) report.holds = false;
  return report;
}

/// D_h^{1/h} when it is rational.
inline std::optional<ExactRatio> rational_delta(
    const std::vector<MagnificationReport>& table) {
  const int h = static_cast<int>(table.size()) - 1;
  return exact_kth_root(table[h].value, static_cast<unsigned>(h));
}

/// Weighted vertex set meeting every maximum-length path. `members` holds
/// the nonempty per-layer pieces in ascending layer order; the weight of a
/// vertex in layer i is weight_base^-i.
struct SeparatingSet {
  std::vector<VertexSet> members;
  ExactRatio weight;
  ExactRatio weight_base;
};

namespace detail {

inline std::vector<std::vector<char>> dense_sets(
    const LayeredGraph& g, const std::vector<VertexSet>& members) {
  std::vector<std::vector<char>> dense(g.level() + 1);
  for (int i = 0; i <= g.level(); ++i) dense[i].assign(g.layer_size(i), 0);
  for (const auto& s : members) {
    g.check_set(s);
    for (int v : s.members) dense[s.layer][v] = 1;
  }
  return dense;
}

}  // namespace detail

/// True iff every V_0-to-V_h path meets the set.
inline bool is_separating(const LayeredGraph& g,
                          const std::vector<VertexSet>& members) {
  const auto dense = detail::dense_sets(g, members);
  const int h = g.level();
  std::vector<char> alive(g.layer_size(0));
  for (int v = 0; v < g.layer_size(0); ++v) alive[v] = !dense[0][v];
  for (int i = 0; i < h; ++i) {
    std::vector<char> next(g.layer_size(i + 1), 0);
    for (int u = 0; u < g.layer_size(i); ++u)
      if (alive[u])
        for (int v : g.out_neighbors(i, u))
          if (!dense[i + 1][v]) next[v] = 1;
    alive = std::move(next);
  }
  for (char c : alive)
    if (c) return false;
  return true;
}

inline ExactRatio separating_weight(const std::vector<VertexSet>& members,
                                    const ExactRatio& base) {
  ExactRatio total;
  for (const auto& s : members)
    total += ExactRatio(s.size()) * base.pow(-s.layer);
  return total;
}

/// Minimum-weight separating set under w(v) = c^-i on layer i. Weights are
/// scaled to integers by c^h's denominator structure and the problem is
/// solved as a vertex cut via node splitting and integer maximum flow.
inline SeparatingSet min_weight_separating_set(const LayeredGraph& g,
                                               const ExactRatio& c) {
  if (c.is_zero())
    throw ValidationError("min_weight_separating_set: weight base must be > 0");
  const int h = g.level();
  const BigInt p = c.numerator(), q = c.denominator();

  // Integer weight of a layer-i vertex: q^i * p^(h-i)  ( = c^-i * p^h ).
  std::vector<BigInt> layer_weight(h + 1);
  BigInt total = 0;
  std::vector<std::vector<int>> node_id(h + 1);
  int nodes = 0;
  for (int i = 0; i <= h; ++i) {
    layer_weight[i] = ipow(q, i) * ipow(p, h - i);
    node_id[i].assign(g.layer_size(i), -1);
    for (int v = 0; v < g.layer_size(i); ++v)
      if (g.on_max_length_path(i, v)) {
        node_id[i][v] = nodes;
        nodes += 2;  // split: in-node, out-node
        total += layer_weight[i];
      }
  }
  if (total > BigInt(1) << 61)
    throw BudgetError(
        "min_weight_separating_set: scaled integer weights exceed the flow "
        "solver's 64-bit budget");
  const long long infinite = total.convert_to<long long>() + 1;

  detail::Dinic dinic(nodes + 2);
  const int source = nodes, sink = nodes + 1;
  for (int i = 0; i <= h; ++i)
    for (int v = 0; v < g.layer_size(i); ++v) {
      if (node_id[i][v] < 0) continue;
      dinic.add_edge(node_id[i][v], node_id[i][v] + 1,
                     layer_weight[i].convert_to<long long>());
      if (i == 0) dinic.add_edge(source, node_id[i][v], infinite);
      if (i == h) dinic.add_edge(node_id[i][v] + 1, sink, infinite);
      if (i < h)
        for (int w : g.out_neighbors(i, v))
          if (node_id[i + 1][w] >= 0)
            dinic.add_edge(node_id[i][v] + 1, node_id[i + 1][w], infinite);
    }

  const long long flow = dinic.max_flow(source, sink);
  const auto reach = dinic.reachable(source);

  SeparatingSet result;
  result.weight_base = c;
  BigInt cut_total = 0;
  for (int i = 0; i <= h; ++i) {
    VertexSet s{i, {}};
    for (int v = 0; v < g.layer_size(i); ++v) {
      int id = node_id[i][v];
      if (id >= 0 && reach[id] && !reach[id + 1]) {
        s.members.push_back(v);
        cut_total += layer_weight[i];
      }
    }
    if (!s.empty()) result.members.push_back(std::move(s));
  }
  if (cut_total != flow)
    throw std::logic_error("min_weight_separating_set: cut/flow mismatch");
  result.weight = separating_weight(result.members, c);
  if (!is_separating(g, result.members))
    throw std::logic_error("min_weight_separating_set: cut is not separating");
  return result;
}

/// Moves a minimum-weight separating set into V_0 union V_h at equal weight
/// by repeatedly clearing the highest occupied middle layer: the occupied
/// layer S_j is swapped for the bottom layer of the level-two subgraph of
/// paths that reach S_j through the complements below and continue to the
/// top complement.
inline SeparatingSet pull_down(const LayeredGraph& g, const SeparatingSet& s) {
  const int h = g.level();
  const ExactRatio& c = s.weight_base;
  if (c.is_zero()) throw ValidationError("pull_down: weight base must be > 0");
  if (!is_separating(g, s.members))
    throw ValidationError("pull_down: input set is not separating");
  const ExactRatio optimum = min_weight_separating_set(g, c).weight;
  if (separating_weight(s.members, c) != optimum)
    throw ValidationError(
        "pull_down: input is not a minimum-weight separating set (weight " +
        separating_weight(s.members, c).str() + ", optimum " + optimum.str() +
        ")");

  auto dense = detail::dense_sets(g, s.members);
  auto layer_nonempty = [&](int i) {
    for (char v : dense[i])
      if (v) return true;
    return false;
  };

  for (;;) {
    int j = -1;
    for (int i = h - 1; i >= 1; --i)
      if (layer_nonempty(i)) {
        j = i;
        break;
      }
    if (j < 0) break;

    // Bottom side: vertices of V_{j-1} reachable through the complements of
    // S_0..S_{j-1}.
    std::vector<char> from_below(g.layer_size(0));
    for (int v = 0; v < g.layer_size(0); ++v) from_below[v] = !dense[0][v];
    for (int t = 1; t <= j - 1; ++t) {
      std::vector<char> next(g.layer_size(t), 0);
      for (int u = 0; u < g.layer_size(t - 1); ++u)
        if (from_below[u])
          for (int v : g.out_neighbors(t - 1, u))
            if (!dense[t][v]) next[v] = 1;
      from_below = std::move(next);
    }
    // Top side: vertices of V_{j+1} that lead to the complement of S_h.
    std::vector<char> to_above(g.layer_size(h));
    for (int v = 0; v < g.layer_size(h); ++v) to_above[v] = !dense[h][v];
    for (int t = h - 1; t >= j + 1; --t) {
      std::vector<char> prev(g.layer_size(t), 0);
      for (int v = 0; v < g.layer_size(t + 1); ++v)
        if (to_above[v])
          for (int u : g.in_neighbors(t + 1, v))
            if (!dense[t][u]) prev[u] = 1;
      to_above = std::move(prev);
    }

    // Middle layer of the level-two subgraph must be exactly S_j.
    std::vector<char> middle(g.layer_size(j), 0);
    for (int w = 0; w < g.layer_size(j); ++w) {
      bool from = false, to = false;
      for (int u : g.in_neighbors(j, w)) from = from || from_below[u];
      for (int x : g.out_neighbors(j, w)) to = to || to_above[x];
      middle[w] = from && to;
    }
    for (int w = 0; w < g.layer_size(j); ++w)
      if (middle[w] != dense[j][w])
        throw ValidationError(
            "pull_down: input set is not minimal (middle layer of the "
            "level-two subgraph differs from S_" + std::to_string(j) + ")");

    // Swap S_j for the subgraph's bottom layer.
    for (int u = 0; u < g.layer_size(j - 1); ++u) {
      if (!from_below[u]) continue;
      bool enters = false;
      for (int w : g.out_neighbors(j - 1, u)) enters = enters || middle[w];
      if (enters) dense[j - 1][u] = 1;
    }
    for (int w = 0; w < g.layer_size(j); ++w) dense[j][w] = 0;
  }

  SeparatingSet result;
  result.weight_base = c;
  for (int i = 0; i <= h; ++i) {
    VertexSet set{i, {}};
    for (int v = 0; v < g.layer_size(i); ++v)
      if (dense[i][v]) set.members.push_back(v);
    if (!set.empty()) result.members.push_back(std::move(set));
  }
  result.weight = separating_weight(result.members, c);
  if (!is_separating(g, result.members))
    throw std::logic_error("pull_down: result is not separating");
  if (result.weight != optimum)
    throw std::logic_error("pull_down: result weight drifted from optimum");
  return result;
}

struct SubsetViolation {
  VertexSet subset;
  bool forward = true;  // forward: |im(S)| >= c|S| failed; else the preimage
};

struct Level2PartitionReport {
  bool hypotheses_ok = false;
  std::string hypothesis_failure;
  std::optional<SubsetViolation> violating_subset;
  bool identity_holds = false;
  // class index -> class size
  std::map<int, int> in_middle, in_top;      // X_i over U_1, Y_i over U_2
  std::map<int, int> out_middle, out_bottom;  // X'_i over U_1, Y'_i over U_0
};

namespace detail {

// Enumerates nonempty subsets of the middle layer of a level-two graph and
// returns the first one violating |im(S)| >= c|S| or |im^-1(S)| >= |S|/c.
inline std::optional<SubsetViolation> find_middle_subset_violation(
    const LayeredGraph& g, const ExactRatio& c, bool check_forward,
    bool check_backward) {
  const int m = g.layer_size(1);
  const BigInt p = c.numerator(), q = c.denominator();
  std::vector<Mask> fwd(m, Mask(mask_words(g.layer_size(2)), 0));
  std::vector<Mask> bwd(m, Mask(mask_words(g.layer_size(0)), 0));
  for (int v = 0; v < m; ++v) {
    for (int w : g.out_neighbors(1, v)) fwd[v][w / 64] |= 1ull << (w % 64);
    for (int u : g.in_neighbors(1, v)) bwd[v][u / 64] |= 1ull << (u % 64);
  }
  std::optional<SubsetViolation> found;
  Mask acc_f(mask_words(g.layer_size(2)), 0);
  Mask acc_b(mask_words(g.layer_size(0)), 0);
  std::vector<int> members;
  auto walk = [&](auto&& self, int idx) -> bool {
    if (found) return false;
    if (idx == m) {
      if (members.empty()) return true;
      const BigInt card = static_cast<long long>(members.size());
      if (check_forward && BigInt(mask_popcount(acc_f)) * q < p * card) {
        found = SubsetViolation{VertexSet{1, members}, true};
        return false;
      }
      if (check_backward && BigInt(mask_popcount(acc_b)) * p < q * card) {
        found = SubsetViolation{VertexSet{1, members}, false};
        return false;
      }
      return true;
    }
    if (!self(self, idx + 1)) return false;
    Mask sf = acc_f, sb = acc_b;
    mask_or(acc_f, fwd[idx]);
    mask_or(acc_b, bwd[idx]);
    members.push_back(idx);
    bool keep = self(self, idx + 1);
    members.pop_back();
    acc_f = std::move(sf);
    acc_b = std::move(sb);
    return keep;
  };
  walk(walk, 0);
  return found;
}

}  // namespace detail

/// Degree-class identity for level-two graphs: when every middle subset
/// expands by factor c upward and 1/c downward, the in-degree classes of the
/// middle and top layers have sizes in exact ratio c, and the out-degree
/// classes of the middle and bottom layers in ratio 1/c.
inline Level2PartitionReport verify_level2_partition_identity(
    const LayeredGraph& g, const ExactRatio& c, int subset_cap = 20) {
  if (g.level() != 2)
    throw ValidationError("verify_level2_partition_identity: level must be 2");
  if (c.is_zero())
    throw ValidationError("verify_level2_partition_identity: c must be > 0");
  detail::check_subset_cap(g.layer_size(1), subset_cap,
                           "verify_level2_partition_identity");

  Level2PartitionReport report;
  if (!is_commutative(g)) {
    report.hypothesis_failure = "graph violates the matching conditions";
    return report;
  }
  for (int v = 0; v < g.layer_size(2); ++v)
    if (g.in_neighbors(2, v).empty()) {
      report.hypothesis_failure =
          "top-layer vertex " + std::to_string(v) + " has no incoming edge";
      return report;
    }
  for (int v = 0; v < g.layer_size(0); ++v)
    if (g.out_neighbors(0, v).empty()) {
      report.hypothesis_failure =
          "bottom-layer vertex " + std::to_string(v) + " has no outgoing edge";
      return report;
    }
  report.violating_subset =
      detail::find_middle_subset_violation(g, c, true, true);
  if (report.violating_subset) {
    report.hypothesis_failure = "middle-layer subset violates the expansion "
                                "hypothesis";
    return report;
  }
  report.hypotheses_ok = true;

  for (int v = 0; v < g.layer_size(1); ++v) {
    ++report.in_middle[static_cast<int>(g.in_neighbors(1, v).size())];
    ++report.out_middle[static_cast<int>(g.out_neighbors(1, v).size())];
  }
  for (int v = 0; v < g.layer_size(2); ++v)
    ++report.in_top[static_cast<int>(g.in_neighbors(2, v).size())];
  for (int v = 0; v < g.layer_size(0); ++v)
    ++report.out_bottom[static_cast<int>(g.out_neighbors(0, v).size())];

  report.identity_holds = true;
  auto classes = [](const std::map<int, int>& a, const std::map<int, int>& b) {
    std::vector<int> keys;
    for (const auto& [k, v] : a) keys.push_back(k);
    for (const auto& [k, v] : b) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
  };
  auto size_of = [](const std::map<int, int>& m, int k) {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  };
  for (int k : classes(report.in_middle, report.in_top))
    if (c * ExactRatio(size_of(report.in_middle, k)) !=
        ExactRatio(size_of(report.in_top, k)))
      report.identity_holds = false;
  for (int k : classes(report.out_middle, report.out_bottom))
    if (ExactRatio(size_of(report.out_middle, k)) !=
        c * ExactRatio(size_of(report.out_bottom, k)))
      report.identity_holds = false;
  return report;
}

struct Level2PrimeReport {
  bool hypotheses_ok = false;
  std::string hypothesis_failure;
  std::optional<SubsetViolation> violating_subset;
  bool identity_holds = false;  // |U_1| = c |U_0|
};

/// Variant identity: downward expansion by 1/c on middle subsets plus the
/// exact edge-count balance c|E(U_0,U_1)| = |E(U_1,U_2)| force
/// |U_1| = c|U_0|.
inline Level2PrimeReport verify_level2_prime_identity(const LayeredGraph& g,
                                                      const ExactRatio& c,
                                                      int subset_cap = 20) {
  if (g.level() != 2)
    throw ValidationError("verify_level2_prime_identity: level must be 2");
  if (c.is_zero())
    throw ValidationError("verify_level2_prime_identity: c must be > 0");
  detail::check_subset_cap(g.layer_size(1), subset_cap,
                           "verify_level2_prime_identity");

  Level2PrimeReport report;
  if (!is_commutative(g)) {
    report.hypothesis_failure = "graph violates the matching conditions";
    return report;
  }
  for (int v = 0; v < g.layer_size(0); ++v)
    if (g.out_neighbors(0, v).empty()) {
      report.hypothesis_failure =
          "bottom-layer vertex " + std::to_string(v) + " has no outgoing edge";
      return report;
    }
  for (int v = 0; v < g.layer_size(1); ++v)
    if (g.out_neighbors(1, v).empty()) {
      report.hypothesis_failure =
          "middle-layer vertex " + std::to_string(v) + " has no outgoing edge";
      return report;
    }
  if (c * ExactRatio(static_cast<long long>(g.gap_edges(0).size())) !=
      ExactRatio(static_cast<long long>(g.gap_edges(1).size()))) {
    report.hypothesis_failure = "edge counts are not in ratio c";
    return report;
  }
  report.violating_subset =
      detail::find_middle_subset_violation(g, c, false, true);
  if (report.violating_subset) {
    report.hypothesis_failure =
        "middle-layer subset violates the downward expansion hypothesis";
    return report;
  }
  report.hypotheses_ok = true;
  report.identity_holds = ExactRatio(g.layer_size(1)) ==
                          c * ExactRatio(g.layer_size(0));
  return report;
}

/// Maximum number of vertex-disjoint V_0-to-V_h paths, by unit-vertex-
/// capacity maximum flow on the on-path subgraph.
inline int count_vertex_disjoint_max_paths(const LayeredGraph& g) {
  const int h = g.level();
  std::vector<std::vector<int>> node_id(h + 1);
  int nodes = 0;
  for (int i = 0; i <= h; ++i) {
    node_id[i].assign(g.layer_size(i), -1);
    for (int v = 0; v < g.layer_size(i); ++v)
      if (g.on_max_length_path(i, v)) {
        node_id[i][v] = nodes;
        nodes += 2;
      }
  }
  detail::Dinic dinic(nodes + 2);
  const int source = nodes, sink = nodes + 1;
  for (int i = 0; i <= h; ++i)
    for (int v = 0; v < g.layer_size(i); ++v) {
      if (node_id[i][v] < 0) continue;
      dinic.add_edge(node_id[i][v], node_id[i][v] + 1, 1);
      if (i == 0) dinic.add_edge(source, node_id[i][v], 1);
      if (i == h) dinic.add_edge(node_id[i][v] + 1, sink, 1);
      if (i < h)
        for (int w : g.out_neighbors(i, v))
          if (node_id[i + 1][w] >= 0)
            dinic.add_edge(node_id[i][v] + 1, node_id[i + 1][w], 1);
    }
  return static_cast<int>(dinic.max_flow(source, sink));
}

struct GrowthReport {
  bool holds = true;
  bool equality_throughout = true;
  std::vector<BigInt> bounds;  // bounds[i] = binomial(n+i-1, i)
};

/// Growth bound for graphs rooted at a single vertex: layer i has at most
/// binomial(n+i-1, i) vertices where n is the size of the second layer.
inline GrowthReport growth_bound_check(const LayeredGraph& g) {
  if (g.layer_size(0) != 1)
    throw ValidationError(
        "growth_bound_check: bottom layer must be a single vertex");
  if (!is_commutative(g))
    throw ValidationError(
        "growth_bound_check: graph violates the matching conditions");
  const unsigned long long n = static_cast<unsigned long long>(g.layer_size(1));
  GrowthReport report;
  report.bounds.resize(g.level() + 1);
  report.bounds[0] = 1;
  for (int i = 1; i <= g.level(); ++i) {
    report.bounds[i] = binomial(n + i - 1, i);
    const BigInt actual = g.layer_size(i);
    if (actual > report.bounds[i]) report.holds = false;
    if (actual != report.bounds[i]) report.equality_throughout = false;
  }
  return report;
}

}  // namespace pluennecke
