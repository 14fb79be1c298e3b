#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hamdec/edge_coloring.hpp"
#include "hamdec/flow.hpp"
#include "hamdec/graph.hpp"
#include "hamdec/matching.hpp"

namespace hamdec {

namespace detail {

struct InstanceAdjacency {
  // adj[v] = list of (neighbour, instance id); every instance appears in the
  // lists of both endpoints.
  std::vector<std::vector<std::pair<int, int>>> adj;
  std::vector<std::pair<int, int>> ends;  // instance id -> {u, v}, u < v

  static InstanceAdjacency of(const Multigraph& g) {
    InstanceAdjacency ia;
    ia.adj.resize(g.vertex_count());
    for (int u = 0; u < g.vertex_count(); ++u)
      for (int v = u + 1; v < g.vertex_count(); ++v)
        for (int c = 0; c < g.mult(u, v); ++c) {
          int id = static_cast<int>(ia.ends.size());
          ia.ends.emplace_back(u, v);
          ia.adj[u].emplace_back(v, id);
          ia.adj[v].emplace_back(u, id);
        }
    return ia;
  }

  void shuffle(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (auto& lst : adj) std::shuffle(lst.begin(), lst.end(), rng);
  }
};

// Orient every edge instance along Euler circuits of each component. All
// degrees must be even; the closed walks then give exact in/out balance.
inline MultiDigraph euler_orient_even(const Multigraph& g,
                                      InstanceAdjacency ia) {
  const int n = g.vertex_count();
  MultiDigraphBuilder out(n);
  std::vector<char> used(ia.ends.size(), 0);
  std::vector<std::size_t> ptr(n, 0);

  for (int start = 0; start < n; ++start) {
    if (ptr[start] >= ia.adj[start].size()) continue;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      while (ptr[v] < ia.adj[v].size() && used[ia.adj[v][ptr[v]].second])
        ++ptr[v];
      if (ptr[v] == ia.adj[v].size()) {
        stack.pop_back();
        continue;
      }
      auto [w, id] = ia.adj[v][ptr[v]];
      used[id] = 1;
      out.add_edge(v, w);  // traversal direction
      stack.push_back(w);
    }
  }
  return out.build();
}

}  // namespace detail

/// Orient an all-even-degree multigraph so that d+(v) = d-(v) = d(v)/2
/// exactly at every vertex. Rejects any odd-degree vertex.
inline MultiDigraph eulerian_orient(const Multigraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) % 2 != 0)
      throw std::invalid_argument("eulerian_orient: vertex " +
                                  std::to_string(v) + " has odd degree " +
                                  std::to_string(g.degree(v)));
  return detail::euler_orient_even(g, detail::InstanceAdjacency::of(g));
}

/// Orientation of an arbitrary multigraph with |d+(v) - d-(v)| <= 1 at every
/// vertex: odd-degree vertices are paired through a virtual vertex, the
/// augmented graph is Euler-oriented, and the virtual edges dropped. The seed
/// shuffles traversal order, producing different (still balanced)
/// orientations.
inline MultiDigraph balanced_orient(const Multigraph& g, std::uint64_t seed = 0) {
  const int n = g.vertex_count();
  std::vector<int> odd;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) % 2 != 0) odd.push_back(v);
  if (odd.empty()) {
    auto ia = detail::InstanceAdjacency::of(g);
    ia.shuffle(seed);
    return detail::euler_orient_even(g, ia);
  }

  MultigraphBuilder aug(n + 1);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (g.mult(u, v) > 0) aug.add_edge(u, v, g.mult(u, v));
  for (int v : odd) aug.add_edge(v, n);
  auto ia = detail::InstanceAdjacency::of(aug.build());
  ia.shuffle(seed);
  MultiDigraph oriented = detail::euler_orient_even(aug.build(), ia);

  MultiDigraphBuilder out(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && oriented.mult(u, v) > 0) out.add_edge(u, v, oriented.mult(u, v));
  return out.build();
}

/// Partition of the edge instances of an all-even-degree multigraph into
/// cycles of length >= 2 (a 2-cycle consumes two parallel copies). Each cycle
/// is the vertex sequence [v0, ..., vk-1], closed implicitly.
inline std::vector<std::vector<int>> cycle_decompose_even(const Multigraph& g) {
  const int n = g.vertex_count();
  for (int v = 0; v < n; ++v)
    if (g.degree(v) % 2 != 0)
      throw std::invalid_argument("cycle_decompose_even: vertex " +
                                  std::to_string(v) + " has odd degree " +
                                  std::to_string(g.degree(v)));

  auto ia = detail::InstanceAdjacency::of(g);
  std::vector<char> used(ia.ends.size(), 0);
  std::vector<std::size_t> ptr(n, 0);
  std::vector<int> pos(n, -1);  // position on the current walk, or -1
  std::vector<std::vector<int>> cycles;

  for (int start = 0; start < n; ++start) {
    std::vector<int> walk;
    auto advance_ptr = [&](int v) {
      while (ptr[v] < ia.adj[v].size() && used[ia.adj[v][ptr[v]].second])
        ++ptr[v];
      return ptr[v] < ia.adj[v].size();
    };
    if (!advance_ptr(start)) continue;
    walk.push_back(start);
    pos[start] = 0;
    while (!walk.empty()) {
      int cur = walk.back();
      if (!advance_ptr(cur)) {
        // even degrees: the walk can only stall back at its start
        pos[cur] = -1;
        walk.pop_back();
        continue;
      }
      auto [w, id] = ia.adj[cur][ptr[cur]];
      used[id] = 1;
      if (pos[w] != -1) {
        std::vector<int> cyc(walk.begin() + pos[w], walk.end());
        cycles.push_back(cyc);
        for (std::size_t i = pos[w] + 1; i < walk.size(); ++i) pos[walk[i]] = -1;
        walk.resize(pos[w] + 1);
      } else {
        pos[w] = static_cast<int>(walk.size());
        walk.push_back(w);
      }
    }
  }
  return cycles;
}

/// Orient each cycle consistently along its listed order; a 2-cycle [u,v]
/// becomes the pair (u,v),(v,u).
inline MultiDigraph orient_cycles(const std::vector<std::vector<int>>& cycles,
                                  int n) {
  MultiDigraphBuilder b(n);
  for (const auto& cyc : cycles) {
    if (cyc.size() < 2)
      throw std::invalid_argument("orient_cycles: cycle shorter than 2");
    for (std::size_t i = 0; i < cyc.size(); ++i)
      b.add_edge(cyc[i], cyc[(i + 1) % cyc.size()]);
  }
  return b.build();
}

/// Outcome of k-factor extraction. On infeasibility the violated cut is the
/// residual source side of the degree-constrained-subgraph network.
struct FactorResult {
  std::optional<MultiDigraph> factor;
  struct Cut {
    std::vector<int> out_side;  // vertices whose out-node is on the source side
    std::vector<int> in_side;   // vertices whose in-node is on the source side
    long long achieved = 0;
    long long required = 0;
  };
  std::optional<Cut> cut;

  bool feasible() const { return factor.has_value(); }
};

/// Spanning k-regular subdigraph of a simple digraph, found by max-flow on
/// the out/in bipartite network; finds a factor whenever one exists.
inline FactorResult extract_factor(const MultiDigraph& d, int k) {
  if (d.multiplicity() > 1)
    throw std::invalid_argument("extract_factor requires a simple digraph");
  if (k < 0) throw std::invalid_argument("factor degree must be >= 0");
  const int n = d.vertex_count();

  // node layout: 0 = source, 1..n out-nodes, n+1..2n in-nodes, 2n+1 = sink
  detail::MaxFlow net(2 * n + 2);
  const int source = 0, sink = 2 * n + 1;
  auto out_node = [&](int v) { return 1 + v; };
  auto in_node = [&](int v) { return 1 + n + v; };

  for (int v = 0; v < n; ++v) {
    net.add_edge(source, out_node(v), k);
    net.add_edge(in_node(v), sink, k);
  }
  std::vector<std::pair<std::pair<int, int>, int>> arc_ids;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && d.has_edge(u, v))
        arc_ids.push_back({{u, v}, net.add_edge(out_node(u), in_node(v), 1)});

  const long long required = static_cast<long long>(k) * n;
  const long long achieved = net.run(source, sink);

  FactorResult res;
  if (achieved == required) {
    MultiDigraphBuilder b(n);
    for (auto& [uv, id] : arc_ids)
      if (net.flow_on(id) > 0) b.add_edge(uv.first, uv.second);
    res.factor = b.build();
    return res;
  }
  auto reach = net.residual_reachable(source);
  FactorResult::Cut cut;
  cut.achieved = achieved;
  cut.required = required;
  for (int v = 0; v < n; ++v) {
    if (reach[out_node(v)]) cut.out_side.push_back(v);
    if (reach[in_node(v)]) cut.in_side.push_back(v);
  }
  res.cut = std::move(cut);
  return res;
}

/// Result of a perfect matching attempt; on failure `unmatched` lists the
/// vertices left exposed by a maximum matching (the exhaustion certificate).
struct PerfectMatchingResult {
  std::optional<std::vector<std::pair<int, int>>> matching;
  std::vector<int> unmatched;

  bool found() const { return matching.has_value(); }
};

inline PerfectMatchingResult perfect_matching(const Multigraph& g) {
  const int n = g.vertex_count();
  if (n % 2 != 0)
    throw std::invalid_argument("perfect_matching requires an even vertex count");
  std::vector<std::vector<int>> adj(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && g.mult(u, v) > 0) adj[u].push_back(v);

  detail::BlossomMatcher matcher(adj);
  std::vector<int> match = matcher.solve();

  PerfectMatchingResult res;
  for (int v = 0; v < n; ++v)
    if (match[v] == -1) res.unmatched.push_back(v);
  if (!res.unmatched.empty()) return res;

  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    if (v < match[v]) edges.emplace_back(v, match[v]);
  res.matching = std::move(edges);
  return res;
}

/// Decomposition of a leftover digraph into matchings (edges pairwise sharing
/// no endpoint, heads and tails alike), each of size <= the cap.
struct MatchingDecomposition {
  std::vector<std::vector<std::pair<int, int>>> matchings;
  int classes_before_split = 0;
  int half_max_degree[2] = {0, 0};  // underlying max degrees of the two halves
};

/// Splits the digraph into two oriented halves — (u,v) with u < v, and (u,v)
/// with u > v — so each half's underlying graph is simple, edge-colors each
/// half, then splits classes larger than size_cap into near-equal pieces.
/// Multiplicities above 1 are handled one simple layer at a time.
inline MatchingDecomposition matching_decompose(const MultiDigraph& d,
                                                int size_cap) {
  if (size_cap < 1) throw std::invalid_argument("size_cap must be >= 1");
  const int n = d.vertex_count();
  MatchingDecomposition out;

  std::vector<std::vector<std::pair<int, int>>> raw_classes;
  for (int layer = 0; layer < std::max(1, d.multiplicity()); ++layer) {
    for (int half = 0; half < 2; ++half) {
      MultigraphBuilder underlying(n);
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          if (u == v || d.mult(u, v) <= layer) continue;
          if ((half == 0) != (u < v)) continue;
          underlying.add_edge(std::min(u, v), std::max(u, v));
        }
      Multigraph ug = underlying.build();
      if (ug.edge_count() == 0) continue;
      if (layer == 0) {
        int maxdeg = 0;
        for (int v = 0; v < n; ++v) maxdeg = std::max(maxdeg, ug.degree(v));
        out.half_max_degree[half] = maxdeg;
      }
      EdgeColoring coloring = vizing_color(ug);
      for (auto& cls : coloring.classes()) {
        std::vector<std::pair<int, int>> directed;
        for (auto [a, b] : cls)
          directed.emplace_back(half == 0 ? a : b, half == 0 ? b : a);
        raw_classes.push_back(std::move(directed));
      }
    }
  }
  out.classes_before_split = static_cast<int>(raw_classes.size());

  for (auto& cls : raw_classes) {
    const int m = static_cast<int>(cls.size());
    const int pieces = (m + size_cap - 1) / size_cap;
    // pieces of as equal size as possible
    int base = pieces == 0 ? 0 : m / pieces;
    int extra = pieces == 0 ? 0 : m % pieces;
    int idx = 0;
    for (int p = 0; p < pieces; ++p) {
      int take = base + (p < extra ? 1 : 0);
      out.matchings.emplace_back(cls.begin() + idx, cls.begin() + idx + take);
      idx += take;
    }
  }
  return out;
}

}  // namespace hamdec
