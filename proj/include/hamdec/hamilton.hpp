#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hamdec/bitset.hpp"
#include "hamdec/graph.hpp"

namespace hamdec {

struct DirectedPath {
  std::vector<int> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
      e.emplace_back(vertices[i], vertices[i + 1]);
    return e;
  }
};

/// Spanning cycle, stored as the vertex sequence; the closing edge
/// (back -> front) is implicit.
struct HamiltonCycle {
  std::vector<int> vertices;

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      e.emplace_back(vertices[i], vertices[(i + 1) % vertices.size()]);
    return e;
  }
};

struct HamiltonDecomposition {
  std::vector<HamiltonCycle> cycles;
};

/// `absent` is a definite result (the search space was exhausted);
/// `indeterminate` means the node budget ran out first.
enum class SearchStatus { found, absent, indeterminate };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::absent: return "absent";
    case SearchStatus::indeterminate: return "indeterminate";
  }
  return "?";
}

inline constexpr std::uint64_t kDefaultSearchBudget = 5'000'000;

struct PathSearchResult {
  SearchStatus status = SearchStatus::absent;
  DirectedPath path;
  std::uint64_t expansions = 0;
};

struct CycleSearchResult {
  SearchStatus status = SearchStatus::absent;
  HamiltonCycle cycle;
  std::uint64_t expansions = 0;
};

struct DecompositionSearchResult {
  SearchStatus status = SearchStatus::absent;
  HamiltonDecomposition decomposition;
  std::uint64_t expansions = 0;
};

namespace detail {

class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t limit) : limit_(limit) {}
  bool spend() { return ++used_ <= limit_; }
  bool exhausted() const { return used_ > limit_; }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

struct Digraph01 {
  int n = 0;
  std::vector<Bitset> out, in;

  static Digraph01 of(const MultiDigraph& d) {
    Digraph01 a;
    a.n = d.vertex_count();
    a.out.assign(a.n, Bitset(a.n));
    a.in.assign(a.n, Bitset(a.n));
    for (int u = 0; u < a.n; ++u)
      for (int v = 0; v < a.n; ++v)
        if (u != v && d.mult(u, v) > 0) {
          a.out[u].set(v);
          a.in[v].set(u);
        }
    return a;
  }

  static Digraph01 of_caps(int n, const std::vector<int>& caps) {
    Digraph01 a;
    a.n = n;
    a.out.assign(n, Bitset(n));
    a.in.assign(n, Bitset(n));
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && caps[static_cast<std::size_t>(u) * n + v] > 0) {
          a.out[u].set(v);
          a.in[v].set(u);
        }
    return a;
  }
};

// All unvisited vertices must stay reachable from cur via edges inside the
// unvisited set. Sound for both the path and the cycle search.
inline bool all_reachable(const std::vector<Bitset>& out, int n, int cur,
                          const Bitset& unvisited) {
  Bitset seen(n);
  seen.set(cur);
  Bitset frontier = seen;
  Bitset next(n);
  while (frontier.any()) {
    next.clear();
    frontier.for_each([&](int v) { next |= out[v]; });
    next &= unvisited;
    next -= seen;
    seen |= next;
    frontier = next;
  }
  return (unvisited - seen).none();
}

// Depth-first search for one Hamilton path (mode kPath: start -> target) or
// one Hamilton cycle through `start` (mode kCycle), over the `active` vertex
// set. Successors are tried lowest-remaining-out-degree first; dead-degree
// and reachability pruning keep dense desk-scale instances fast. Loops are
// forbidden throughout, so u never occurs in its own neighbourhood and the
// base sets below need no per-vertex adjustment.
class HamiltonSearch {
 public:
  enum class Mode { kPath, kCycle };

  HamiltonSearch(const Digraph01& g, Bitset active, Mode mode, int start,
                 int target, NodeBudget& budget)
      : g_(g),
        active_(std::move(active)),
        mode_(mode),
        start_(start),
        target_(target),
        budget_(budget),
        visited_(g.n) {}

  SearchStatus run(std::vector<int>& out_path) {
    remaining_ = active_.count() - 1;
    visited_.set(start_);
    path_.clear();
    path_.push_back(start_);
    bool found = dfs(start_);
    if (found) {
      out_path = path_;
      return SearchStatus::found;
    }
    return budget_.exhausted() ? SearchStatus::indeterminate
                               : SearchStatus::absent;
  }

 private:
  bool dfs(int cur) {
    if (remaining_ == 0) {
      if (mode_ == Mode::kPath) return cur == target_;
      return g_.out[cur].test(target_);
    }
    if (!budget_.spend()) return false;

    Bitset unvisited = active_ - visited_;
    if (!feasible(cur, unvisited)) return false;

    Bitset cand = g_.out[cur] & unvisited;
    order_.clear();
    cand.for_each([&](int c) {
      if (mode_ == Mode::kPath && c == target_ && remaining_ > 1) return;
      order_.emplace_back(g_.out[c].intersection_count(unvisited), c);
    });
    std::sort(order_.begin(), order_.end());
    auto order = order_;  // keep a frame-local copy across recursion

    for (auto [deg, c] : order) {
      visited_.set(c);
      --remaining_;
      path_.push_back(c);
      if (dfs(c)) return true;
      path_.pop_back();
      ++remaining_;
      visited_.reset(c);
      if (budget_.exhausted()) return false;
    }
    return false;
  }

  bool feasible(int cur, const Bitset& unvisited) {
    Bitset out_base = unvisited;
    if (mode_ == Mode::kCycle) out_base.set(target_);
    Bitset in_base = unvisited;
    if (mode_ == Mode::kPath) in_base.reset(target_);
    in_base.set(cur);
    Bitset in_base_target = unvisited;  // for the path endpoint itself
    in_base_target.set(cur);

    for (int u = unvisited.next(0); u != -1; u = unvisited.next(u + 1)) {
      const bool is_endpoint = mode_ == Mode::kPath && u == target_;
      if (!is_endpoint && !g_.out[u].intersects(out_base)) return false;
      if (!g_.in[u].intersects(is_endpoint ? in_base_target : in_base))
        return false;
    }
    if (mode_ == Mode::kCycle) {
      Bitset closers = unvisited;
      closers.set(cur);
      if (!g_.in[target_].intersects(closers)) return false;
    }
    return all_reachable(g_.out, g_.n, cur, unvisited);
  }

  const Digraph01& g_;
  Bitset active_;
  Mode mode_;
  int start_, target_;
  NodeBudget& budget_;
  Bitset visited_;
  std::vector<int> path_;
  std::vector<std::pair<int, int>> order_;
  int remaining_ = 0;
};

// Enumerates Hamilton cycles anchored at vertex 0 in lexicographic order of
// their vertex sequences, optionally restricted to sequences >= `lower`.
// Used by the exact decomposition search, where cycles are extracted in
// nondecreasing order so each decomposition (a sorted multiset of cycles) is
// visited exactly once.
class CycleEnumerator {
 public:
  enum class Result { complete, stopped, out_of_budget };
  // sink returns false to stop the whole enumeration
  using Sink = std::function<bool(const std::vector<int>&)>;

  CycleEnumerator(const Digraph01& g, NodeBudget& budget)
      : g_(g), budget_(budget), visited_(g.n), all_(g.n) {
    all_.set_all();
  }

  Result run(const std::vector<int>* lower, const Sink& sink) {
    if (g_.n < 2) return Result::complete;
    lower_ = lower;
    sink_ = &sink;
    stopped_ = false;
    visited_.clear();
    visited_.set(0);
    remaining_ = g_.n - 1;
    path_.assign(1, 0);
    dfs(0, lower_ != nullptr);
    if (budget_.exhausted()) return Result::out_of_budget;
    return stopped_ ? Result::stopped : Result::complete;
  }

 private:
  // returns false to abort the enumeration (sink stop or budget)
  bool dfs(int cur, bool tight) {
    if (remaining_ == 0) {
      if (g_.out[cur].test(0)) {
        if (!(*sink_)(path_)) {
          stopped_ = true;
          return false;
        }
      }
      return true;
    }
    if (!budget_.spend()) return false;

    Bitset unvisited = all_ - visited_;
    if (!feasible(cur, unvisited)) return true;

    Bitset cand = g_.out[cur] & unvisited;
    const int depth = static_cast<int>(path_.size());
    const int min_c = tight ? (*lower_)[depth] : 0;
    for (int c = cand.next(min_c); c != -1; c = cand.next(c + 1)) {
      visited_.set(c);
      --remaining_;
      path_.push_back(c);
      bool keep = dfs(c, tight && c == min_c);
      path_.pop_back();
      ++remaining_;
      visited_.reset(c);
      if (!keep) return false;
    }
    return true;
  }

  bool feasible(int cur, const Bitset& unvisited) {
    Bitset out_base = unvisited;
    out_base.set(0);
    Bitset in_base = unvisited;
    in_base.set(cur);
    for (int u = unvisited.next(0); u != -1; u = unvisited.next(u + 1)) {
      if (!g_.out[u].intersects(out_base)) return false;
      if (!g_.in[u].intersects(in_base)) return false;
    }
    Bitset closers = unvisited;
    closers.set(cur);
    if (!g_.in[0].intersects(closers)) return false;
    return all_reachable(g_.out, g_.n, cur, unvisited);
  }

  const Digraph01& g_;
  NodeBudget& budget_;
  Bitset visited_;
  Bitset all_;
  std::vector<int> path_;
  int remaining_ = 0;
  const std::vector<int>* lower_ = nullptr;
  const Sink* sink_ = nullptr;
  bool stopped_ = false;
};

inline bool strongly_connected_caps(int n, const std::vector<int>& caps) {
  if (n <= 1) return true;
  Digraph01 g = Digraph01::of_caps(n, caps);
  for (int dir = 0; dir < 2; ++dir) {
    const auto& adj = dir == 0 ? g.out : g.in;
    Bitset seen(n);
    seen.set(0);
    Bitset frontier = seen;
    while (frontier.any()) {
      Bitset next(n);
      frontier.for_each([&](int v) { next |= adj[v]; });
      next -= seen;
      seen |= next;
      frontier = next;
    }
    if (seen.count() != n) return false;
  }
  return true;
}

inline std::vector<int> caps_of(const MultiDigraph& d) {
  const int n = d.vertex_count();
  std::vector<int> caps(static_cast<std::size_t>(n) * n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) caps[static_cast<std::size_t>(u) * n + v] = d.mult(u, v);
  return caps;
}

}  // namespace detail

/// Spanning x->y path, or a definite absence, or indeterminate on budget
/// exhaustion. Multidigraph hosts are fine: a path uses each ordered pair at
/// most once, so only the underlying adjacency matters.
inline PathSearchResult hamilton_path(const MultiDigraph& d, int x, int y,
                                      std::uint64_t budget = kDefaultSearchBudget) {
  const int n = d.vertex_count();
  detail::check_vertex(x, n, "hamilton_path");
  detail::check_vertex(y, n, "hamilton_path");
  if (x == y) throw std::invalid_argument("hamilton_path requires x != y");

  detail::Digraph01 g = detail::Digraph01::of(d);
  Bitset active(n);
  active.set_all();
  detail::NodeBudget nb(budget);
  detail::HamiltonSearch search(g, active, detail::HamiltonSearch::Mode::kPath,
                                x, y, nb);
  PathSearchResult res;
  res.status = search.run(res.path.vertices);
  res.expansions = nb.used();
  return res;
}

inline CycleSearchResult hamilton_cycle(const MultiDigraph& d,
                                        std::uint64_t budget = kDefaultSearchBudget) {
  const int n = d.vertex_count();
  if (n < 2)
    throw std::invalid_argument("hamilton_cycle requires at least 2 vertices");

  detail::Digraph01 g = detail::Digraph01::of(d);
  // anchor at the tightest vertex
  int anchor = 0;
  for (int v = 1; v < n; ++v)
    if (g.out[v].count() < g.out[anchor].count()) anchor = v;

  Bitset active(n);
  active.set_all();
  detail::NodeBudget nb(budget);
  detail::HamiltonSearch search(g, active, detail::HamiltonSearch::Mode::kCycle,
                                anchor, anchor, nb);
  CycleSearchResult res;
  res.status = search.run(res.cycle.vertices);
  res.expansions = nb.used();
  return res;
}

struct GreedyHamiltonResult {
  std::vector<HamiltonCycle> cycles;
  MultiDigraph leftover;
  /// found when the target was reached, else the status of the first failed
  /// extraction. Shortfall is data, not an error.
  SearchStatus last_status = SearchStatus::found;
  int leftover_max_semidegree = 0;
};

/// Extracts up to `target` edge-disjoint Hamilton cycles, one at a time from
/// the running remainder.
inline GreedyHamiltonResult greedy_edge_disjoint_hamilton(
    const MultiDigraph& d, int target,
    std::uint64_t budget_per_search = kDefaultSearchBudget) {
  if (target < 0) throw std::invalid_argument("target must be >= 0");
  GreedyHamiltonResult res;
  MultiDigraph remainder = d;
  for (int t = 0; t < target; ++t) {
    CycleSearchResult c = hamilton_cycle(remainder, budget_per_search);
    if (c.status != SearchStatus::found) {
      res.last_status = c.status;
      break;
    }
    remainder = subtract_edges(remainder, c.cycle.edges());
    res.cycles.push_back(std::move(c.cycle));
  }
  res.leftover = remainder;
  res.leftover_max_semidegree = max_semidegree(remainder);
  return res;
}

/// BFS shortest x->y path avoiding the forbidden vertices and (ordered) edge
/// pairs; returned only when its length is at most maxlen. Absence is a
/// value, not an error.
inline std::optional<DirectedPath> short_path(
    const MultiDigraph& d, int x, int y, int maxlen,
    const std::vector<int>& forbidden_vertices = {},
    std::span<const std::pair<int, int>> forbidden_edges = {}) {
  const int n = d.vertex_count();
  detail::check_vertex(x, n, "short_path");
  detail::check_vertex(y, n, "short_path");
  std::vector<char> blocked(n, 0);
  for (int v : forbidden_vertices) {
    detail::check_vertex(v, n, "short_path");
    blocked[v] = 1;
  }
  if (blocked[x] || blocked[y])
    throw std::invalid_argument("short_path endpoints must not be forbidden");
  std::set<std::pair<int, int>> banned(forbidden_edges.begin(),
                                       forbidden_edges.end());

  std::vector<int> parent(n, -1);
  std::vector<int> dist(n, -1);
  std::vector<int> queue;
  queue.push_back(x);
  dist[x] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    if (u == y) break;
    if (dist[u] == maxlen) continue;
    for (int v = 0; v < n; ++v) {
      if (v == u || dist[v] != -1 || blocked[v] || d.mult(u, v) == 0) continue;
      if (banned.count({u, v})) continue;
      dist[v] = dist[u] + 1;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  if (dist[y] == -1 || dist[y] > maxlen) return std::nullopt;
  DirectedPath p;
  for (int v = y; v != -1; v = parent[v]) p.vertices.push_back(v);
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

/// Failure of a staged construction, naming the step and the blocked pair.
struct AbsorbResult {
  bool ok = false;
  DirectedPath path;
  int failed_step = -1;  // 1-based index into the matching
  std::pair<int, int> blocked{-1, -1};
};

/// Builds one path containing every matching edge, in order: the first edge
/// seeds the path, then each further edge (u_j, v_j) is attached by a short
/// connector from the current endpoint to u_j that avoids v_j, all later
/// matched vertices, and the interior of the path built so far.
inline AbsorbResult absorb_matching(
    const std::vector<std::pair<int, int>>& matching, const MultiDigraph& host,
    std::span<const std::pair<int, int>> reserved_edges, int path_vertex_cap,
    int connector_maxlen) {
  if (matching.empty())
    throw std::invalid_argument("absorb_matching: empty matching");
  if (path_vertex_cap < 2 || connector_maxlen < 1)
    throw std::invalid_argument("absorb_matching: caps must be positive");
  {
    std::set<int> ends;
    for (auto [u, v] : matching) {
      if (host.mult(u, v) == 0)
        throw std::invalid_argument("absorb_matching: matching edge not in host");
      ends.insert(u);
      ends.insert(v);
    }
    if (ends.size() != 2 * matching.size())
      throw std::invalid_argument("absorb_matching: edges share endpoints");
  }

  // avoidance by clamped removal; the verifier re-checks edge usage downstream
  MultiDigraphBuilder reduced_b(host);
  for (auto [u, v] : reserved_edges)
    if (reduced_b.mult(u, v) > 0) reduced_b.remove_edge(u, v);
  MultiDigraph reduced = reduced_b.build();

  AbsorbResult res;
  auto& q = res.path.vertices;
  q = {matching[0].first, matching[0].second};

  const int m = static_cast<int>(matching.size());
  for (int j = 1; j < m; ++j) {
    auto [uj, vj] = matching[j];
    std::vector<int> forbidden;
    forbidden.push_back(vj);
    for (int k = j + 1; k < m; ++k) {
      forbidden.push_back(matching[k].first);
      forbidden.push_back(matching[k].second);
    }
    for (std::size_t i = 0; i + 1 < q.size(); ++i) forbidden.push_back(q[i]);

    auto connector =
        short_path(reduced, q.back(), uj, connector_maxlen, forbidden);
    if (!connector) {
      res.failed_step = j + 1;
      res.blocked = {q.back(), uj};
      return res;
    }
    q.insert(q.end(), connector->vertices.begin() + 1, connector->vertices.end());
    q.push_back(vj);
    if (static_cast<int>(q.size()) > path_vertex_cap) {
      res.failed_step = j + 1;
      res.blocked = {uj, vj};
      return res;
    }
  }
  res.ok = true;
  return res;
}

struct CompleteToHamiltonResult {
  SearchStatus status = SearchStatus::absent;
  HamiltonCycle cycle;
};

/// Closes a path into a Hamilton cycle of the host: contract the path's
/// interior, then search for a spanning path from its last vertex back to its
/// first through all remaining vertices.
inline CompleteToHamiltonResult complete_to_hamilton(
    const DirectedPath& p, const MultiDigraph& host,
    std::span<const std::pair<int, int>> reserved_edges,
    std::uint64_t budget = kDefaultSearchBudget) {
  if (p.vertices.size() < 2)
    throw std::invalid_argument("complete_to_hamilton: path needs >= 2 vertices");
  const int n = host.vertex_count();
  const int x = p.vertices.front();
  const int y = p.vertices.back();

  MultiDigraphBuilder reduced_b(host);
  for (auto [u, v] : reserved_edges)
    if (reduced_b.mult(u, v) > 0) reduced_b.remove_edge(u, v);
  MultiDigraph reduced = reduced_b.build();

  Bitset active(n);
  active.set_all();
  for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i)
    active.reset(p.vertices[i]);

  detail::Digraph01 g = detail::Digraph01::of(reduced);
  detail::NodeBudget nb(budget);
  detail::HamiltonSearch search(g, active, detail::HamiltonSearch::Mode::kPath,
                                y, x, nb);
  CompleteToHamiltonResult res;
  std::vector<int> closing;
  SearchStatus st = search.run(closing);
  res.status = st;
  if (st != SearchStatus::found) return res;

  res.cycle.vertices = p.vertices;
  res.cycle.vertices.insert(res.cycle.vertices.end(), closing.begin() + 1,
                            closing.end() - 1);
  return res;
}

/// Exact Hamilton decomposition of a regular multidigraph by recursive cycle
/// extraction with backtracking across cycles. Exhausting the tree proves
/// nonexistence; running out of budget is reported as indeterminate.
inline DecompositionSearchResult decompose_regular(
    const MultiDigraph& d, std::uint64_t budget = kDefaultSearchBudget) {
  auto s_opt = is_regular(d);
  if (!s_opt)
    throw std::invalid_argument("decompose_regular requires a regular digraph");
  const int s = *s_opt;
  const int n = d.vertex_count();

  DecompositionSearchResult res;
  if (s == 0) {
    res.status = SearchStatus::found;
    return res;
  }
  if (n < 2) {
    res.status = SearchStatus::absent;
    return res;
  }

  std::vector<int> caps = detail::caps_of(d);
  detail::NodeBudget nb(budget);
  std::vector<HamiltonCycle> chosen;
  bool found = false;

  std::function<bool(int, const std::vector<int>*)> solve =
      [&](int remaining, const std::vector<int>* lower) -> bool {
    if (remaining == 0) {
      found = true;
      return false;  // unwind; `chosen` is the decomposition
    }
    if (!detail::strongly_connected_caps(n, caps)) return true;  // dead branch

    detail::Digraph01 g = detail::Digraph01::of_caps(n, caps);
    detail::CycleEnumerator en(g, nb);
    auto result = en.run(lower, [&](const std::vector<int>& cyc) -> bool {
      for (std::size_t i = 0; i < cyc.size(); ++i)
        --caps[static_cast<std::size_t>(cyc[i]) * n + cyc[(i + 1) % cyc.size()]];
      chosen.push_back(HamiltonCycle{cyc});
      bool keep = solve(remaining - 1, &chosen.back().vertices);
      if (!keep && found) return false;
      chosen.pop_back();
      for (std::size_t i = 0; i < cyc.size(); ++i)
        ++caps[static_cast<std::size_t>(cyc[i]) * n + cyc[(i + 1) % cyc.size()]];
      return keep;
    });
    return result == detail::CycleEnumerator::Result::complete;
  };

  solve(s, nullptr);
  res.expansions = nb.used();
  if (found) {
    res.status = SearchStatus::found;
    res.decomposition.cycles = std::move(chosen);
  } else {
    res.status = nb.exhausted() ? SearchStatus::indeterminate
                                : SearchStatus::absent;
  }
  return res;
}

// ---------------------------------------------------------------------------
// undirected exact decomposition

namespace detail {

struct Graph01 {
  int n = 0;
  std::vector<Bitset> nbr;

  static Graph01 of_caps(int n, const std::vector<int>& caps) {
    Graph01 g;
    g.n = n;
    g.nbr.assign(n, Bitset(n));
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && caps[static_cast<std::size_t>(u) * n + v] > 0) g.nbr[u].set(v);
    return g;
  }
};

// Undirected analogue of CycleEnumerator: sequences anchored at 0 with
// second vertex < last vertex, one representative per traversal direction.
class UndirectedCycleEnumerator {
 public:
  using Sink = std::function<bool(const std::vector<int>&)>;
  enum class Result { complete, stopped, out_of_budget };

  UndirectedCycleEnumerator(const Graph01& g, NodeBudget& budget)
      : g_(g), budget_(budget), visited_(g.n), all_(g.n) {
    all_.set_all();
  }

  Result run(const std::vector<int>* lower, const Sink& sink) {
    if (g_.n < 3) return Result::complete;
    lower_ = lower;
    sink_ = &sink;
    stopped_ = false;
    visited_.clear();
    visited_.set(0);
    remaining_ = g_.n - 1;
    path_.assign(1, 0);
    dfs(0, lower_ != nullptr);
    if (budget_.exhausted()) return Result::out_of_budget;
    return stopped_ ? Result::stopped : Result::complete;
  }

 private:
  bool dfs(int cur, bool tight) {
    if (remaining_ == 0) {
      if (g_.nbr[cur].test(0) && path_[1] < path_.back()) {
        if (!(*sink_)(path_)) {
          stopped_ = true;
          return false;
        }
      }
      return true;
    }
    if (!budget_.spend()) return false;

    Bitset unvisited = all_ - visited_;
    if (!feasible(cur, unvisited)) return true;

    Bitset cand = g_.nbr[cur] & unvisited;
    const int depth = static_cast<int>(path_.size());
    const int min_c = tight ? (*lower_)[depth] : 0;
    for (int c = cand.next(min_c); c != -1; c = cand.next(c + 1)) {
      visited_.set(c);
      --remaining_;
      path_.push_back(c);
      bool keep = dfs(c, tight && c == min_c);
      path_.pop_back();
      ++remaining_;
      visited_.reset(c);
      if (!keep) return false;
    }
    return true;
  }

  bool feasible(int cur, const Bitset& unvisited) {
    // each unvisited vertex still needs two distinct cycle neighbours
    Bitset base = unvisited;
    base.set(cur);
    base.set(0);
    for (int u = unvisited.next(0); u != -1; u = unvisited.next(u + 1))
      if (g_.nbr[u].intersection_count(base) < 2) return false;

    Bitset closers = unvisited;
    closers.set(cur);
    if (!g_.nbr[0].intersects(closers)) return false;
    return all_reachable(g_.nbr, g_.n, cur, unvisited);
  }

  const Graph01& g_;
  NodeBudget& budget_;
  Bitset visited_;
  Bitset all_;
  std::vector<int> path_;
  int remaining_ = 0;
  const std::vector<int>* lower_ = nullptr;
  const Sink* sink_ = nullptr;
  bool stopped_ = false;
};

inline bool connected_caps_undirected(int n, const std::vector<int>& caps) {
  if (n <= 1) return true;
  Graph01 g = Graph01::of_caps(n, caps);
  Bitset seen(n);
  seen.set(0);
  Bitset frontier = seen;
  while (frontier.any()) {
    Bitset next(n);
    frontier.for_each([&](int v) { next |= g.nbr[v]; });
    next -= seen;
    seen |= next;
    frontier = next;
  }
  return seen.count() == n;
}

}  // namespace detail

/// Exact Hamilton decomposition of a regular multigraph (undirected). A cycle
/// contributes 2 to every degree, so an s-regular host needs s even and
/// yields s/2 cycles; on 2 vertices a Hamilton cycle is a pair of parallel
/// edges.
inline DecompositionSearchResult decompose_regular_undirected(
    const Multigraph& g, std::uint64_t budget = kDefaultSearchBudget) {
  auto s_opt = is_regular(g);
  if (!s_opt)
    throw std::invalid_argument(
        "decompose_regular_undirected requires a regular multigraph");
  const int s = *s_opt;
  const int n = g.vertex_count();

  DecompositionSearchResult res;
  if (s == 0) {
    res.status = SearchStatus::found;
    return res;
  }
  if (s % 2 != 0 || n < 2) {
    res.status = SearchStatus::absent;
    return res;
  }
  if (n == 2) {
    for (int i = 0; i < s / 2; ++i)
      res.decomposition.cycles.push_back(HamiltonCycle{{0, 1}});
    res.status = SearchStatus::found;
    return res;
  }

  const int total = s / 2;
  std::vector<int> caps(static_cast<std::size_t>(n) * n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) caps[static_cast<std::size_t>(u) * n + v] = g.mult(u, v);

  detail::NodeBudget nb(budget);
  std::vector<HamiltonCycle> chosen;
  bool found = false;

  auto adjust = [&](const std::vector<int>& cyc, int delta) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      caps[static_cast<std::size_t>(a) * n + b] += delta;
      caps[static_cast<std::size_t>(b) * n + a] += delta;
    }
  };

  std::function<bool(int, const std::vector<int>*)> solve =
      [&](int remaining, const std::vector<int>* lower) -> bool {
    if (remaining == 0) {
      found = true;
      return false;
    }
    if (!detail::connected_caps_undirected(n, caps)) return true;

    detail::Graph01 gv = detail::Graph01::of_caps(n, caps);
    detail::UndirectedCycleEnumerator en(gv, nb);
    auto result = en.run(lower, [&](const std::vector<int>& cyc) -> bool {
      adjust(cyc, -1);
      chosen.push_back(HamiltonCycle{cyc});
      bool keep = solve(remaining - 1, &chosen.back().vertices);
      if (!keep && found) return false;
      chosen.pop_back();
      adjust(cyc, +1);
      return keep;
    });
    return result == detail::UndirectedCycleEnumerator::Result::complete;
  };

  solve(total, nullptr);
  res.expansions = nb.used();
  if (found) {
    res.status = SearchStatus::found;
    res.decomposition.cycles = std::move(chosen);
  } else {
    res.status = nb.exhausted() ? SearchStatus::indeterminate
                                : SearchStatus::absent;
  }
  return res;
}

}  // namespace hamdec
