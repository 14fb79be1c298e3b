#pragma once

#include <limits>
#include <queue>
#include <vector>

namespace hamdec::detail {

// Dinic max-flow on a small dense network. Used for degree-constrained
// subgraph extraction; capacities are tiny integers, so no scaling.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(n) {}

  int add_edge(int from, int to, int cap) {
    int id = static_cast<int>(edges_.size());
    edges_.push_back({to, cap, 0});
    head_[from].push_back(id);
    edges_.push_back({from, 0, 0});
    head_[to].push_back(id + 1);
    return id;
  }

  int flow_on(int id) const { return edges_[id].flow; }

  long long run(int source, int sink) {
    long long total = 0;
    while (bfs(source, sink)) {
      std::fill(ptr_.begin(), ptr_.end(), 0);
      while (int pushed = dfs(source, sink, std::numeric_limits<int>::max()))
        total += pushed;
    }
    return total;
  }

  // After run(): nodes reachable from source in the residual network.
  std::vector<char> residual_reachable(int source) const {
    std::vector<char> seen(head_.size(), 0);
    std::queue<int> q;
    q.push(source);
    seen[source] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : head_[v]) {
        const Edge& e = edges_[id];
        if (e.cap - e.flow > 0 && !seen[e.to]) {
          seen[e.to] = 1;
          q.push(e.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    int to;
    int cap;
    int flow;
  };

  bool bfs(int source, int sink) {
    dist_.assign(head_.size(), -1);
    ptr_.assign(head_.size(), 0);
    std::queue<int> q;
    q.push(source);
    dist_[source] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : head_[v]) {
        const Edge& e = edges_[id];
        if (e.cap - e.flow > 0 && dist_[e.to] == -1) {
          dist_[e.to] = dist_[v] + 1;
          q.push(e.to);
        }
      }
    }
    return dist_[sink] != -1;
  }

  int dfs(int v, int sink, int limit) {
    if (v == sink || limit == 0) return limit;
    for (int& i = ptr_[v]; i < static_cast<int>(head_[v].size()); ++i) {
      int id = head_[v][i];
      Edge& e = edges_[id];
      if (e.cap - e.flow <= 0 || dist_[e.to] != dist_[v] + 1) continue;
      int pushed = dfs(e.to, sink, std::min(limit, e.cap - e.flow));
      if (pushed > 0) {
        e.flow += pushed;
        edges_[id ^ 1].flow -= pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> head_;
  std::vector<int> dist_;
  std::vector<int> ptr_;
};

}  // namespace hamdec::detail
