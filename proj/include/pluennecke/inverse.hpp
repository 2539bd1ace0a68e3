#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pluennecke/constructors.hpp"
#include "pluennecke/graph.hpp"
#include "pluennecke/magnification.hpp"
#include "pluennecke/matching.hpp"
#include "pluennecke/ratio.hpp"

namespace pluennecke {

struct SharpnessResult {
  std::optional<ExactRatio> ratio;  // C with D_i = C^i for all i, if any
  std::vector<MagnificationReport> table;
  std::string failure_reason;  // set when ratio is absent
};

/// Tests whether the magnification ratios form an exact geometric sequence
/// D_i = C^i with C = D_1.
inline SharpnessResult check_sharpness_detail(
    const LayeredGraph& g, const MagnificationOptions& opts = {}) {
  SharpnessResult result;
  result.table = magnification_table(g, opts);
  const ExactRatio c = result.table[1].value;
  for (int i = 2; i <= g.level(); ++i) {
    if (result.table[i].value != c.pow(i)) {
      result.failure_reason = "hypothesis not met: D_" + std::to_string(i) +
                              " = " + result.table[i].value.str() +
                              " != D_1^" + std::to_string(i) + " = " +
                              c.pow(i).str();
      return result;
    }
  }
  result.ratio = c;
  return result;
}

inline std::optional<ExactRatio> check_sharpness(
    const LayeredGraph& g, const MagnificationOptions& opts = {}) {
  return check_sharpness_detail(g, opts).ratio;
}

namespace detail {

// First nonempty bottom subset with |im(Z)| = c|Z|, scanning cardinalities
// in increasing order and lexicographically within each cardinality.
inline std::optional<VertexSet> minimal_equality_subset(const LayeredGraph& g,
                                                        const ExactRatio& c) {
  const int n = g.layer_size(0);
  std::vector<Mask> first(n, Mask(mask_words(g.layer_size(1)), 0));
  for (int v = 0; v < n; ++v)
    for (int w : g.out_neighbors(0, v)) first[v][w / 64] |= 1ull << (w % 64);
  const BigInt p = c.numerator(), q = c.denominator();

  std::vector<int> pick;
  Mask acc(mask_words(g.layer_size(1)), 0);
  std::optional<VertexSet> found;
  auto walk = [&](auto&& self, int start, int remaining) -> void {
    if (found) return;
    if (remaining == 0) {
      if (BigInt(mask_popcount(acc)) * q ==
          p * BigInt(static_cast<long long>(pick.size())))
        found = VertexSet{0, pick};
      return;
    }
    for (int v = start; v + remaining <= n && !found; ++v) {
      Mask saved = acc;
      mask_or(acc, first[v]);
      pick.push_back(v);
      self(self, v + 1, remaining - 1);
      pick.pop_back();
      acc = std::move(saved);
    }
  };
  for (int card = 1; card <= n && !found; ++card) walk(walk, 0, card);
  return found;
}

}  // namespace detail

/// Smallest nonempty Z in the bottom layer with |im(Z)| = c|Z|, the set the
/// inverse theorem extracts its channel from. Requires the sharpness
/// hypothesis D_i = c^i.
inline VertexSet find_minimal_equality_set(const LayeredGraph& g,
                                           const ExactRatio& c,
                                           const MagnificationOptions& opts = {}) {
  const auto sharp = check_sharpness_detail(g, opts);
  if (!sharp.ratio || *sharp.ratio != c)
    throw ValidationError(
        sharp.ratio ? "find_minimal_equality_set: sharpness ratio is " +
                          sharp.ratio->str() + ", not " + c.str()
                    : "find_minimal_equality_set: " + sharp.failure_reason);
  detail::check_subset_cap(g.layer_size(0), opts.subset_cap,
                           "find_minimal_equality_set");
  auto z = detail::minimal_equality_subset(g, c);
  if (!z)
    throw std::logic_error(
        "find_minimal_equality_set: no equality set exists although D_1 is "
        "attained");
  return *z;
}

struct InverseCertificate {
  ExactRatio c;
  VertexSet z;
  std::vector<int> channel_layers;
  std::optional<ExactRatio> regular_ratio;
  bool layers_geometric = false;
  bool verdict = false;
};

/// Runs the full inverse pipeline: locate the minimal equality set, extract
/// its channel, and re-verify from scratch that the channel's layers grow
/// geometrically with ratio c and that it is regular of ratio c.
inline InverseCertificate inverse_theorem_certificate(
    const LayeredGraph& g, const MagnificationOptions& opts = {}) {
  const auto sharp = check_sharpness_detail(g, opts);
  if (!sharp.ratio)
    throw ValidationError("inverse_theorem_certificate: " +
                          sharp.failure_reason);
  InverseCertificate cert;
  cert.c = *sharp.ratio;
  cert.z = find_minimal_equality_set(g, cert.c, opts);
  const LayeredGraph h = channel_of(g, cert.z);
  cert.channel_layers = h.layer_sizes();

  cert.layers_geometric = true;
  const ExactRatio bottom(h.layer_size(0));
  for (int i = 1; i <= h.level(); ++i)
    if (ExactRatio(h.layer_size(i)) != cert.c.pow(i) * bottom)
      cert.layers_geometric = false;
  cert.regular_ratio = verify_regular(h);
  cert.verdict = cert.layers_geometric && cert.regular_ratio &&
                 *cert.regular_ratio == cert.c;
  return cert;
}

struct C1Report {
  bool ratios_all_one = false;          // left side of the equivalence
  int disjoint_paths = 0;
  bool disjoint_paths_match = false;    // count == |V_0|
  std::optional<VertexSet> r1_channel_witness;
  std::vector<MagnificationReport> table;

  bool right_side() const {
    return disjoint_paths_match && r1_channel_witness.has_value();
  }
  bool sides_agree() const { return ratios_all_one == right_side(); }
};

/// Evaluates both sides of the "all ratios one" characterization
/// independently: the exact D_i table on one side, and |V_0| vertex-disjoint
/// maximum-length paths plus some bottom subset whose channel is regular of
/// ratio 1 on the other.
inline C1Report c1_characterization_report(const LayeredGraph& g,
                                           const MagnificationOptions& opts = {}) {
  C1Report report;
  report.table = magnification_table(g, opts);
  report.ratios_all_one = true;
  for (int i = 1; i <= g.level(); ++i)
    if (report.table[i].value != ExactRatio(1)) report.ratios_all_one = false;

  report.disjoint_paths = count_vertex_disjoint_max_paths(g);
  report.disjoint_paths_match = report.disjoint_paths == g.layer_size(0);

  const int n = g.layer_size(0);
  detail::check_subset_cap(n, opts.subset_cap, "c1_characterization_report");
  std::vector<int> pick;
  auto walk = [&](auto&& self, int start, int remaining) -> void {
    if (report.r1_channel_witness) return;
    if (remaining == 0) {
      try {
        const auto ratio = verify_regular(channel_of(g, VertexSet{0, pick}));
        if (ratio && *ratio == ExactRatio(1))
          report.r1_channel_witness = VertexSet{0, pick};
      } catch (const ValidationError&) {
        // empty channel: this subset reaches nothing
      }
      return;
    }
    for (int v = start; v + remaining <= n && !report.r1_channel_witness; ++v) {
      pick.push_back(v);
      self(self, v + 1, remaining - 1);
      pick.pop_back();
    }
  };
  for (int card = 1; card <= n && !report.r1_channel_witness; ++card)
    walk(walk, 0, card);
  return report;
}

inline bool c1_characterization_check(const LayeredGraph& g,
                                      const MagnificationOptions& opts = {}) {
  return c1_characterization_report(g, opts).sides_agree();
}

}  // namespace pluennecke
