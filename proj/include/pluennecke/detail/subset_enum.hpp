#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "pluennecke/graph.hpp"

namespace pluennecke::detail {

using Mask = std::vector<std::uint64_t>;

inline int mask_words(int bits) { return (bits + 63) / 64; }

inline void mask_or(Mask& acc, const Mask& other) {
  for (std::size_t w = 0; w < acc.size(); ++w) acc[w] |= other[w];
}

inline long long mask_popcount(const Mask& m) {
  long long n = 0;
  for (std::uint64_t w : m) n += __builtin_popcountll(w);
  return n;
}

// images[i][v]: bitmask over layer i of the vertices reachable from bottom
// vertex v in exactly i steps, for i = 1..h.
inline std::vector<std::vector<Mask>> per_vertex_images(const LayeredGraph& g) {
  const int h = g.level();
  const int n = g.layer_size(0);
  std::vector<std::vector<Mask>> images(h + 1);
  for (int i = 1; i <= h; ++i)
    images[i].assign(n, Mask(mask_words(g.layer_size(i)), 0));
  for (int v = 0; v < n; ++v) {
    std::vector<char> frontier(g.layer_size(0), 0);
    frontier[v] = 1;
    for (int i = 0; i < h; ++i) {
      std::vector<char> next(g.layer_size(i + 1), 0);
      for (int u = 0; u < static_cast<int>(frontier.size()); ++u)
        if (frontier[u])
          for (int w : g.out_neighbors(i, u)) next[w] = 1;
      for (int w = 0; w < static_cast<int>(next.size()); ++w)
        if (next[w]) images[i + 1][v][w / 64] |= 1ull << (w % 64);
      frontier = std::move(next);
    }
  }
  return images;
}

// Best subset found so far for one step count: minimal |image|/|subset|, with
// ties broken toward smaller subsets, then lexicographically smaller member
// lists.
struct BestSubset {
  long long image_size = -1;
  long long subset_size = 0;
  std::vector<int> members;

  bool valid() const { return subset_size > 0; }

  bool candidate_improves(long long image, long long card,
                          const std::vector<int>& mem) const {
    if (!valid()) return true;
    const long long lhs = image * subset_size;
    const long long rhs = image_size * card;
    if (lhs != rhs) return lhs < rhs;
    if (card != subset_size) return card < subset_size;
    return mem < members;
  }

  void merge_from(const BestSubset& other) {
    if (other.valid() &&
        candidate_improves(other.image_size, other.subset_size, other.members))
      *this = other;
  }
};

// Walks every nonempty subset of the bottom layer once, maintaining the
// image mask for every step count, and records the minimizer per step.
class SubsetMinimizer {
 public:
  SubsetMinimizer(const LayeredGraph& g,
                  const std::vector<std::vector<Mask>>& images)
      : g_(g), images_(images), n_(g.layer_size(0)), h_(g.level()) {}

  std::vector<BestSubset> run(int threads) const {
    std::vector<BestSubset> best(h_ + 1);
    if (threads > 1 && n_ >= 12) {
      const int prefix = std::min(6, n_ - 1);
      const int tasks = 1 << prefix;
      std::vector<std::vector<BestSubset>> partial(
          tasks, std::vector<BestSubset>(h_ + 1));
      std::atomic<int> next_task{0};
      auto worker = [&] {
        for (int task = next_task++; task < tasks; task = next_task++) {
          State state = initial_state();
          for (int v = 0; v < prefix; ++v)
            if (task >> v & 1) include(state, v);
          enumerate(prefix, state, partial[task]);
        }
      };
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      for (const auto& p : partial)
        for (int i = 1; i <= h_; ++i) best[i].merge_from(p[i]);
    } else {
      State state = initial_state();
      enumerate(0, state, best);
    }
    return best;
  }

 private:
  struct State {
    std::vector<Mask> acc;  // acc[i]: image mask at layer i of the members
    std::vector<int> members;
  };

  State initial_state() const {
    State s;
    s.acc.resize(h_ + 1);
    for (int i = 1; i <= h_; ++i)
      s.acc[i].assign(mask_words(g_.layer_size(i)), 0);
    return s;
  }

  void include(State& s, int v) const {
    s.members.push_back(v);
    for (int i = 1; i <= h_; ++i) mask_or(s.acc[i], images_[i][v]);
  }

  void enumerate(int idx, State& s, std::vector<BestSubset>& best) const {
    if (idx == n_) {
      if (s.members.empty()) return;
      const long long card = static_cast<long long>(s.members.size());
      for (int i = 1; i <= h_; ++i) {
        const long long image = mask_popcount(s.acc[i]);
        if (best[i].candidate_improves(image, card, s.members))
          best[i] = BestSubset{image, card, s.members};
      }
      return;
    }
    enumerate(idx + 1, s, best);
    std::vector<Mask> saved = s.acc;
    include(s, idx);
    enumerate(idx + 1, s, best);
    s.acc = std::move(saved);
    s.members.pop_back();
  }

  const LayeredGraph& g_;
  const std::vector<std::vector<Mask>>& images_;
  int n_, h_;
};

}  // namespace pluennecke::detail
