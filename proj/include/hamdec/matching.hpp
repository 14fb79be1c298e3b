#pragma once

#include <queue>
#include <vector>

namespace hamdec::detail {

// Maximum matching in a general graph (blossom contraction, O(V^3)).
// Input is a simple adjacency list; returns match[v] = partner or -1.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const std::vector<std::vector<int>>& adj)
      : n_(static_cast<int>(adj.size())),
        adj_(adj),
        match_(n_, -1),
        parent_(n_),
        base_(n_),
        in_queue_(n_),
        in_blossom_(n_) {}

  std::vector<int> solve() {
    for (int v = 0; v < n_; ++v)
      if (match_[v] == -1) augment_from(v);
    return match_;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> used(n_, 0);
    while (true) {
      a = base_[a];
      used[a] = 1;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (used[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = 1;
      in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  bool augment_from(int root) {
    std::fill(parent_.begin(), parent_.end(), -1);
    std::fill(in_queue_.begin(), in_queue_.end(), 0);
    for (int i = 0; i < n_; ++i) base_[i] = i;

    std::queue<int> q;
    q.push(root);
    in_queue_[root] = 1;

    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int u : adj_[v]) {
        if (base_[v] == base_[u] || match_[v] == u) continue;
        if (u == root || (match_[u] != -1 && parent_[match_[u]] != -1)) {
          // odd cycle: contract the blossom
          int b = lca(v, u);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, b, u);
          mark_path(u, b, v);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = b;
              if (!in_queue_[i]) {
                in_queue_[i] = 1;
                q.push(i);
              }
            }
          }
        } else if (parent_[u] == -1) {
          parent_[u] = v;
          if (match_[u] == -1) {
            // augmenting path found; flip it
            int cur = u;
            while (cur != -1) {
              int prev = parent_[cur];
              int next = match_[prev];
              match_[cur] = prev;
              match_[prev] = cur;
              cur = next;
            }
            return true;
          }
          if (!in_queue_[match_[u]]) {
            in_queue_[match_[u]] = 1;
            q.push(match_[u]);
          }
        }
      }
    }
    return false;
  }

  int n_;
  const std::vector<std::vector<int>>& adj_;
  std::vector<int> match_;
  std::vector<int> parent_, base_;
  std::vector<char> in_queue_, in_blossom_;
};

}  // namespace hamdec::detail
