#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hamdec/graph.hpp"

namespace hamdec {

/// Proper edge coloring of a simple graph. colors[i] is the color of
/// edges[i]; color_count <= max_degree + 1.
struct EdgeColoring {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> colors;
  int color_count = 0;

  std::vector<std::vector<std::pair<int, int>>> classes() const {
    std::vector<std::vector<std::pair<int, int>>> out(color_count);
    for (std::size_t i = 0; i < edges.size(); ++i)
      out[colors[i]].push_back(edges[i]);
    return out;
  }
};

namespace detail {

// Fan-and-rotate edge coloring (Misra–Gries construction of the Vizing
// bound), followed by a greedy pass that tries to empty small color classes.
class EdgeColorer {
 public:
  EdgeColorer(int n, std::vector<std::pair<int, int>> edges)
      : n_(n), edges_(std::move(edges)), eid_(static_cast<std::size_t>(n) * n, -1) {
    std::vector<int> deg(n_, 0);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      auto [u, v] = edges_[e];
      ++deg[u];
      ++deg[v];
      eid_[static_cast<std::size_t>(u) * n_ + v] = e;
      eid_[static_cast<std::size_t>(v) * n_ + u] = e;
    }
    int max_deg = 0;
    for (int d : deg) max_deg = std::max(max_deg, d);
    num_colors_ = max_deg + 1;
    ecolor_.assign(edges_.size(), -1);
    color_at_.assign(n_, std::vector<int>(num_colors_, -1));
  }

  EdgeColoring run() {
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) color_edge(e);
    reduce_classes();
    return finish();
  }

 private:
  bool is_free(int c, int v) const { return color_at_[v][c] == -1; }

  int free_color(int v) const {
    for (int c = 0; c < num_colors_; ++c)
      if (is_free(c, v)) return c;
    throw std::logic_error("no free color; degree bookkeeping broken");
  }

  int edge_between(int u, int w) const {
    return eid_[static_cast<std::size_t>(u) * n_ + w];
  }

  void set_color(int e, int c) {
    auto [a, b] = edges_[e];
    if (ecolor_[e] != -1) {
      color_at_[a][ecolor_[e]] = -1;
      color_at_[b][ecolor_[e]] = -1;
    }
    ecolor_[e] = c;
    if (c != -1) {
      color_at_[a][c] = e;
      color_at_[b][c] = e;
    }
  }

  int other_end(int e, int v) const {
    return edges_[e].first == v ? edges_[e].second : edges_[e].first;
  }

  // Invert the maximal path starting at `start` that alternates colors
  // (d, c, d, ...). Returns the far endpoint.
  int invert_path(int start, int c, int d) {
    std::vector<int> path_edges;
    int cur = start;
    int want = d;
    while (true) {
      int e = color_at_[cur][want];
      if (e == -1) break;
      path_edges.push_back(e);
      cur = other_end(e, cur);
      want = (want == d) ? c : d;
    }
    for (int e : path_edges) set_color(e, -1);
    want = c;
    for (int e : path_edges) {
      set_color(e, want);
      want = (want == d) ? c : d;
    }
    return cur;
  }

  void color_edge(int e) {
    auto [u, v] = edges_[e];
    // maximal fan of u starting at v
    std::vector<int> fan{v};
    std::vector<char> in_fan(n_, 0);
    in_fan[v] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      int last = fan.back();
      for (int c = 0; c < num_colors_; ++c) {
        int fe = color_at_[u][c];
        if (fe == -1) continue;
        int w = other_end(fe, u);
        if (in_fan[w]) continue;
        if (is_free(c, last)) {
          fan.push_back(w);
          in_fan[w] = 1;
          grew = true;
          break;
        }
      }
    }

    int c = free_color(u);
    int d = free_color(fan.back());
    if (c != d && !is_free(d, u)) invert_path(u, c, d);

    // rotate the shortest valid fan prefix ending at a vertex with d free
    int pivot = -1;
    for (std::size_t j = 0; j < fan.size(); ++j) {
      if (j > 0) {
        int col = ecolor_[edge_between(u, fan[j])];
        if (col == -1 || !is_free(col, fan[j - 1])) break;  // chain broken
      }
      if (is_free(d, fan[j])) {
        pivot = static_cast<int>(j);
        break;
      }
    }
    if (pivot == -1)
      throw std::logic_error("edge coloring invariant violated (no pivot)");

    for (int j = 0; j < pivot; ++j) {
      int fe = edge_between(u, fan[j + 1]);
      int col = ecolor_[fe];
      set_color(fe, -1);
      int pe = (j == 0) ? e : edge_between(u, fan[j]);
      set_color(pe, col);
    }
    int target = (pivot == 0) ? e : edge_between(u, fan[pivot]);
    set_color(target, d);
  }

  // Try to empty color classes, smallest first: first by moving an edge to a
  // color free at both ends, then via one alternating-path swap.
  void reduce_classes() {
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<std::vector<int>> by_color(num_colors_);
      for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
        if (ecolor_[e] != -1) by_color[ecolor_[e]].push_back(e);

      std::vector<int> order;
      for (int c = 0; c < num_colors_; ++c)
        if (!by_color[c].empty()) order.push_back(c);
      if (order.size() <= 1) return;
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (by_color[a].size() != by_color[b].size())
          return by_color[a].size() < by_color[b].size();
        return a > b;
      });

      for (int cc : order) {
        if (try_empty_class(cc, by_color[cc])) {
          progress = true;
          break;
        }
      }
    }
  }

  bool try_empty_class(int cc, const std::vector<int>& members) {
    for (int e : members) {
      auto [a, b] = edges_[e];
      bool moved = false;
      for (int c = 0; c < num_colors_ && !moved; ++c) {
        if (c == cc || !is_free(c, a) || !is_free(c, b)) continue;
        set_color(e, c);
        moved = true;
      }
      if (moved) continue;
      for (int ca = 0; ca < num_colors_ && !moved; ++ca) {
        if (ca == cc || !is_free(ca, a)) continue;
        for (int cb = 0; cb < num_colors_ && !moved; ++cb) {
          if (cb == cc || cb == ca || !is_free(cb, b)) continue;
          if (invert_path(a, ca, cb) != b && is_free(cb, a)) {
            set_color(e, cb);
            moved = true;
          }
        }
      }
      if (!moved) return false;  // class stays; partial moves are still proper
    }
    return true;
  }

  EdgeColoring finish() const {
    EdgeColoring out;
    out.edges = edges_;
    out.colors.assign(edges_.size(), -1);
    std::vector<int> remap(num_colors_, -1);
    int next = 0;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      int c = ecolor_[e];
      if (c == -1) throw std::logic_error("uncolored edge after coloring");
      if (remap[c] == -1) remap[c] = next++;
      out.colors[e] = remap[c];
    }
    out.color_count = next;
    return out;
  }

  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> eid_;
  int num_colors_;
  std::vector<int> ecolor_;
  std::vector<std::vector<int>> color_at_;
};

}  // namespace detail

/// Proper edge coloring of a simple (multiplicity <= 1) graph with at most
/// max_degree + 1 colors.
inline EdgeColoring vizing_color(const Multigraph& g) {
  if (g.multiplicity() > 1)
    throw std::invalid_argument("vizing_color requires a simple graph");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (g.has_edge(u, v)) edges.emplace_back(u, v);
  detail::EdgeColorer colorer(g.vertex_count(), std::move(edges));
  return colorer.run();
}

}  // namespace hamdec
