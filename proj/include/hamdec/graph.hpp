#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hamdec {

/// One concrete copy of an edge. Decompositions partition edge *multisets*,
/// so an edge is identified by (tail, head, copy), not just by its endpoints.
struct EdgeInstance {
  int tail = 0;
  int head = 0;
  int copy = 0;

  friend bool operator==(const EdgeInstance&, const EdgeInstance&) = default;
};

class MultiDigraph;
class Multigraph;

namespace detail {
inline void check_vertex(int v, int n, const char* what) {
  if (v < 0 || v >= n)
    throw std::invalid_argument(std::string(what) + ": vertex " +
                                std::to_string(v) + " out of range [0," +
                                std::to_string(n) + ")");
}
}  // namespace detail

/// Directed multigraph on vertices 0..n-1 with a dense multiplicity matrix.
/// Values are immutable once built; use MultiDigraphBuilder or the free
/// functions (disjoint_union, subtract, ...) to derive new graphs.
class MultiDigraph {
 public:
  MultiDigraph() = default;
  explicit MultiDigraph(int n) : n_(n), mult_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw std::invalid_argument("vertex count must be >= 0");
  }

  int vertex_count() const { return n_; }

  int mult(int u, int v) const {
    detail::check_vertex(u, n_, "mult");
    detail::check_vertex(v, n_, "mult");
    return mult_[static_cast<std::size_t>(u) * n_ + v];
  }

  bool has_edge(int u, int v) const { return mult(u, v) > 0; }

  int out_degree(int v) const {
    detail::check_vertex(v, n_, "out_degree");
    int d = 0;
    for (int u = 0; u < n_; ++u) d += mult_[static_cast<std::size_t>(v) * n_ + u];
    return d;
  }

  int in_degree(int v) const {
    detail::check_vertex(v, n_, "in_degree");
    int d = 0;
    for (int u = 0; u < n_; ++u) d += mult_[static_cast<std::size_t>(u) * n_ + v];
    return d;
  }

  /// Number of edge instances (counted with multiplicity).
  long long edge_count() const {
    long long e = 0;
    for (int m : mult_) e += m;
    return e;
  }

  /// Maximum multiplicity over all ordered pairs (0 for the empty graph).
  int multiplicity() const {
    int m = 0;
    for (int x : mult_) m = std::max(m, x);
    return m;
  }

  std::vector<EdgeInstance> instances() const {
    std::vector<EdgeInstance> out;
    out.reserve(static_cast<std::size_t>(edge_count()));
    for (int u = 0; u < n_; ++u)
      for (int v = 0; v < n_; ++v)
        for (int c = 0; c < mult_[static_cast<std::size_t>(u) * n_ + v]; ++c)
          out.push_back({u, v, c});
    return out;
  }

  friend bool operator==(const MultiDigraph&, const MultiDigraph&) = default;

 private:
  friend class MultiDigraphBuilder;
  int n_ = 0;
  std::vector<int> mult_;  // row-major, mult_[u*n+v]
};

class MultiDigraphBuilder {
 public:
  explicit MultiDigraphBuilder(int n) : n_(n), mult_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw std::invalid_argument("vertex count must be >= 0");
  }
  explicit MultiDigraphBuilder(const MultiDigraph& d)
      : n_(d.n_), mult_(d.mult_) {}

  int vertex_count() const { return n_; }

  int mult(int u, int v) const {
    return mult_[static_cast<std::size_t>(u) * n_ + v];
  }

  MultiDigraphBuilder& add_edge(int u, int v, int copies = 1) {
    check_pair(u, v);
    if (copies < 0) throw std::invalid_argument("negative edge count");
    mult_[static_cast<std::size_t>(u) * n_ + v] += copies;
    return *this;
  }

  MultiDigraphBuilder& remove_edge(int u, int v, int copies = 1) {
    check_pair(u, v);
    int& m = mult_[static_cast<std::size_t>(u) * n_ + v];
    if (copies < 0 || m < copies)
      throw std::invalid_argument("edge removal underflow on (" +
                                  std::to_string(u) + "," + std::to_string(v) +
                                  ")");
    m -= copies;
    return *this;
  }

  MultiDigraphBuilder& set_mult(int u, int v, int m) {
    check_pair(u, v);
    if (m < 0) throw std::invalid_argument("negative multiplicity");
    mult_[static_cast<std::size_t>(u) * n_ + v] = m;
    return *this;
  }

  MultiDigraph build() const {
    MultiDigraph d(n_);
    d.mult_ = mult_;
    return d;
  }

 private:
  void check_pair(int u, int v) const {
    detail::check_vertex(u, n_, "edge");
    detail::check_vertex(v, n_, "edge");
    if (u == v)
      throw std::invalid_argument("loops are not allowed (vertex " +
                                  std::to_string(u) + ")");
  }

  int n_;
  std::vector<int> mult_;
};

/// Undirected multigraph; multiplicities live on unordered pairs, so
/// mult(u,v) == mult(v,u) always.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n) : n_(n), mult_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw std::invalid_argument("vertex count must be >= 0");
  }

  int vertex_count() const { return n_; }

  int mult(int u, int v) const {
    detail::check_vertex(u, n_, "mult");
    detail::check_vertex(v, n_, "mult");
    return mult_[static_cast<std::size_t>(u) * n_ + v];
  }

  bool has_edge(int u, int v) const { return mult(u, v) > 0; }

  int degree(int v) const {
    detail::check_vertex(v, n_, "degree");
    int d = 0;
    for (int u = 0; u < n_; ++u) d += mult_[static_cast<std::size_t>(v) * n_ + u];
    return d;
  }

  long long edge_count() const {
    long long e = 0;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) e += mult(u, v);
    return e;
  }

  int multiplicity() const {
    int m = 0;
    for (int x : mult_) m = std::max(m, x);
    return m;
  }

  /// Instances carry the normalized pair (tail < head).
  std::vector<EdgeInstance> instances() const {
    std::vector<EdgeInstance> out;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        for (int c = 0; c < mult(u, v); ++c) out.push_back({u, v, c});
    return out;
  }

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  friend class MultigraphBuilder;
  int n_ = 0;
  std::vector<int> mult_;
};

class MultigraphBuilder {
 public:
  explicit MultigraphBuilder(int n) : n_(n), mult_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw std::invalid_argument("vertex count must be >= 0");
  }
  explicit MultigraphBuilder(const Multigraph& g) : n_(g.n_), mult_(g.mult_) {}

  int vertex_count() const { return n_; }

  int mult(int u, int v) const {
    return mult_[static_cast<std::size_t>(u) * n_ + v];
  }

  MultigraphBuilder& add_edge(int u, int v, int copies = 1) {
    check_pair(u, v);
    if (copies < 0) throw std::invalid_argument("negative edge count");
    mult_[static_cast<std::size_t>(u) * n_ + v] += copies;
    mult_[static_cast<std::size_t>(v) * n_ + u] += copies;
    return *this;
  }

  MultigraphBuilder& remove_edge(int u, int v, int copies = 1) {
    check_pair(u, v);
    int& a = mult_[static_cast<std::size_t>(u) * n_ + v];
    int& b = mult_[static_cast<std::size_t>(v) * n_ + u];
    if (copies < 0 || a < copies)
      throw std::invalid_argument("edge removal underflow on {" +
                                  std::to_string(u) + "," + std::to_string(v) +
                                  "}");
    a -= copies;
    b -= copies;
    return *this;
  }

  MultigraphBuilder& set_mult(int u, int v, int m) {
    check_pair(u, v);
    if (m < 0) throw std::invalid_argument("negative multiplicity");
    mult_[static_cast<std::size_t>(u) * n_ + v] = m;
    mult_[static_cast<std::size_t>(v) * n_ + u] = m;
    return *this;
  }

  Multigraph build() const {
    Multigraph g(n_);
    g.mult_ = mult_;
    return g;
  }

 private:
  void check_pair(int u, int v) const {
    detail::check_vertex(u, n_, "edge");
    detail::check_vertex(v, n_, "edge");
    if (u == v)
      throw std::invalid_argument("loops are not allowed (vertex " +
                                  std::to_string(u) + ")");
  }

  int n_;
  std::vector<int> mult_;
};

// ---------------------------------------------------------------------------
// graph-core operations

inline MultiDigraph underlying_simple(const MultiDigraph& d) {
  MultiDigraphBuilder b(d.vertex_count());
  for (int u = 0; u < d.vertex_count(); ++u)
    for (int v = 0; v < d.vertex_count(); ++v)
      if (u != v && d.mult(u, v) > 0) b.set_mult(u, v, 1);
  return b.build();
}

inline Multigraph underlying_simple(const Multigraph& g) {
  MultigraphBuilder b(g.vertex_count());
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (g.mult(u, v) > 0) b.set_mult(u, v, 1);
  return b.build();
}

/// Degree s such that d+(v) = d-(v) = s for all v, or nullopt.
inline std::optional<int> is_regular(const MultiDigraph& d) {
  if (d.vertex_count() < 1)
    throw std::invalid_argument("is_regular: empty vertex set");
  int s = d.out_degree(0);
  for (int v = 0; v < d.vertex_count(); ++v)
    if (d.out_degree(v) != s || d.in_degree(v) != s) return std::nullopt;
  return s;
}

inline std::optional<int> is_regular(const Multigraph& g) {
  if (g.vertex_count() < 1)
    throw std::invalid_argument("is_regular: empty vertex set");
  int s = g.degree(0);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != s) return std::nullopt;
  return s;
}

struct DegreeProfile {
  std::vector<int> out;
  std::vector<int> in;
};

inline DegreeProfile degree_profile(const MultiDigraph& d) {
  DegreeProfile p;
  p.out.resize(d.vertex_count());
  p.in.resize(d.vertex_count());
  for (int v = 0; v < d.vertex_count(); ++v) {
    p.out[v] = d.out_degree(v);
    p.in[v] = d.in_degree(v);
  }
  return p;
}

inline std::vector<int> degree_profile(const Multigraph& g) {
  std::vector<int> deg(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);
  return deg;
}

namespace detail {
inline void check_same_vertices(int a, int b) {
  if (a != b)
    throw std::invalid_argument("graphs live on different vertex sets (" +
                                std::to_string(a) + " vs " + std::to_string(b) +
                                ")");
}
}  // namespace detail

inline MultiDigraph disjoint_union(const MultiDigraph& a, const MultiDigraph& b) {
  detail::check_same_vertices(a.vertex_count(), b.vertex_count());
  MultiDigraphBuilder out(a);
  for (int u = 0; u < b.vertex_count(); ++u)
    for (int v = 0; v < b.vertex_count(); ++v)
      if (u != v && b.mult(u, v) > 0) out.add_edge(u, v, b.mult(u, v));
  return out.build();
}

inline Multigraph disjoint_union(const Multigraph& a, const Multigraph& b) {
  detail::check_same_vertices(a.vertex_count(), b.vertex_count());
  MultigraphBuilder out(a);
  for (int u = 0; u < b.vertex_count(); ++u)
    for (int v = u + 1; v < b.vertex_count(); ++v)
      if (b.mult(u, v) > 0) out.add_edge(u, v, b.mult(u, v));
  return out.build();
}

/// Pointwise difference; throws on underflow (removing an absent copy).
inline MultiDigraph subtract(const MultiDigraph& a, const MultiDigraph& b) {
  detail::check_same_vertices(a.vertex_count(), b.vertex_count());
  MultiDigraphBuilder out(a);
  for (int u = 0; u < b.vertex_count(); ++u)
    for (int v = 0; v < b.vertex_count(); ++v)
      if (u != v && b.mult(u, v) > 0) out.remove_edge(u, v, b.mult(u, v));
  return out.build();
}

inline Multigraph subtract(const Multigraph& a, const Multigraph& b) {
  detail::check_same_vertices(a.vertex_count(), b.vertex_count());
  MultigraphBuilder out(a);
  for (int u = 0; u < b.vertex_count(); ++u)
    for (int v = u + 1; v < b.vertex_count(); ++v)
      if (b.mult(u, v) > 0) out.remove_edge(u, v, b.mult(u, v));
  return out.build();
}

/// Removes one copy per listed pair (repeats remove further copies).
inline MultiDigraph subtract_edges(const MultiDigraph& a,
                                   std::span<const std::pair<int, int>> edges) {
  MultiDigraphBuilder out(a);
  for (auto [u, v] : edges) out.remove_edge(u, v);
  return out.build();
}

inline Multigraph subtract_edges(const Multigraph& a,
                                 std::span<const std::pair<int, int>> edges) {
  MultigraphBuilder out(a);
  for (auto [u, v] : edges) out.remove_edge(u, v);
  return out.build();
}

inline MultiDigraph add_edges(const MultiDigraph& a,
                              std::span<const std::pair<int, int>> edges) {
  MultiDigraphBuilder out(a);
  for (auto [u, v] : edges) out.add_edge(u, v);
  return out.build();
}

/// Minimum semi-degree: min over vertices of both in- and out-degree.
inline int min_semidegree(const MultiDigraph& d) {
  if (d.vertex_count() == 0) return 0;
  int m = d.out_degree(0);
  for (int v = 0; v < d.vertex_count(); ++v)
    m = std::min({m, d.out_degree(v), d.in_degree(v)});
  return m;
}

inline int min_degree(const Multigraph& g) {
  if (g.vertex_count() == 0) return 0;
  int m = g.degree(0);
  for (int v = 0; v < g.vertex_count(); ++v) m = std::min(m, g.degree(v));
  return m;
}

inline int max_semidegree(const MultiDigraph& d) {
  int m = 0;
  for (int v = 0; v < d.vertex_count(); ++v)
    m = std::max({m, d.out_degree(v), d.in_degree(v)});
  return m;
}

}  // namespace hamdec
