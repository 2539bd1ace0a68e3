#pragma once

#include <limits>
#include <queue>
#include <vector>

namespace pluennecke::detail {

// Dinic maximum flow with integer capacities.
class Dinic {
 public:
  explicit Dinic(int n) : graph_(n) {}

  void add_edge(int from, int to, long long cap) {
    graph_[from].push_back({to, cap, static_cast<int>(graph_[to].size())});
    graph_[to].push_back({from, 0, static_cast<int>(graph_[from].size()) - 1});
  }

  long long max_flow(int source, int sink) {
    long long flow = 0;
    while (bfs(source, sink)) {
      iter_.assign(graph_.size(), 0);
      long long f;
      while ((f = dfs(source, sink, std::numeric_limits<long long>::max())) > 0)
        flow += f;
    }
    return flow;
  }

  // Residual reachability from the source; call after max_flow.
  std::vector<char> reachable(int source) const {
    std::vector<char> seen(graph_.size(), 0);
    std::queue<int> queue;
    seen[source] = 1;
    queue.push(source);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (const auto& e : graph_[u])
        if (e.cap > 0 && !seen[e.to]) {
          seen[e.to] = 1;
          queue.push(e.to);
        }
    }
    return seen;
  }

 private:
  struct Edge {
    int to;
    long long cap;
    int rev;
  };

  bool bfs(int source, int sink) {
    level_.assign(graph_.size(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (const auto& e : graph_[u])
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          queue.push(e.to);
        }
    }
    return level_[sink] >= 0;
  }

  long long dfs(int u, int sink, long long limit) {
    if (u == sink) return limit;
    for (int& i = iter_[u]; i < static_cast<int>(graph_[u].size()); ++i) {
      Edge& e = graph_[u][i];
      if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
      long long got = dfs(e.to, sink, std::min(limit, e.cap));
      if (got > 0) {
        e.cap -= got;
        graph_[e.to][e.rev].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<Edge>> graph_;
  std::vector<int> level_, iter_;
};

}  // namespace pluennecke::detail
