#pragma once

// The source-free k-graph Lambda~ built from boundary paths of a locally
// convex Lambda, handled through canonical representatives.
//
// A vertex [x; m] is determined by (x(m ^ d(x)), m - m ^ d(x)); a morphism
// [x; (m, n)] by (x(m ^ d(x), n ^ d(x)), m - m ^ d(x), n - n ^ d(x)). The
// equivalence oracles below evaluate the defining conditions literally and
// are kept independent of the canonical maps.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/boundary.hpp"
#include "kgraph/degree.hpp"
#include "kgraph/enumerate.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/path.hpp"

namespace kgraph {

/// Canonical form of a vertex of Lambda~: the class of (x; m) with
/// base = x(m ^ d(x)) and overshoot = m - m ^ d(x).
struct VTilde {
  VertexId base{};
  Degree overshoot;

  friend bool operator==(const VTilde&, const VTilde&) = default;
  friend auto operator<=>(const VTilde&, const VTilde&) = default;
};

/// Canonical form of a morphism of Lambda~.
struct MTilde {
  Path core;
  Degree range_overshoot;
  Degree source_overshoot;

  Degree degree() const { return core.degree + source_overshoot - range_overshoot; }
  VTilde range() const { return {core.range, range_overshoot}; }
  VTilde source() const { return {core.source, source_overshoot}; }

  friend bool operator==(const MTilde&, const MTilde&) = default;
  friend auto operator<=>(const MTilde& a, const MTilde& b) {
    if (auto c = a.core <=> b.core; c != 0) return c;
    if (auto c = a.range_overshoot <=> b.range_overshoot; c != 0) return c;
    return a.source_overshoot <=> b.source_overshoot;
  }
};

/// Overshoot only in colours exhausted at the base.
inline bool is_valid(const KGraph& g, const VTilde& v) {
  for (std::size_t c = 0; c < g.rank(); ++c)
    if (v.overshoot[c] > 0 && g.alive(v.base, c)) return false;
  return true;
}

inline bool is_valid(const KGraph& g, const MTilde& t) {
  const auto& a = t.range_overshoot;
  const auto& b = t.source_overshoot;
  if (!leq(a, b)) return false;
  for (std::size_t c = 0; c < g.rank(); ++c) {
    if (a[c] > 0 && (t.core.degree[c] != 0 || g.alive(t.core.range, c) || g.alive(t.core.source, c)))
      return false;
    if (b[c] > 0 && g.alive(t.core.source, c)) return false;
  }
  return true;
}

inline std::string to_string(const KGraph& g, const VTilde& v) {
  if (v.overshoot.is_zero()) return g.name(v.base);
  std::string s = g.name(v.base) + "~";
  for (std::size_t c = 0; c < v.overshoot.rank(); ++c) {
    if (c) s += '_';
    s += std::to_string(v.overshoot[c]);
  }
  return s;
}

inline std::string to_string(const KGraph& g, const MTilde& t) {
  return "[" + to_string(g, t.core) + "; " + t.range_overshoot.to_string() + " -> " +
         t.source_overshoot.to_string() + "]";
}

/// (x; m) ~ (y; n), evaluated literally.
inline bool equiv_V(const KGraph& g, const BoundaryFragment& x, const Degree& m,
                    const BoundaryFragment& y, const Degree& n) {
  const Degree mx = meet_degree(x, m);
  const Degree ny = meet_degree(y, n);
  return vertex_at(g, x.body, mx) == vertex_at(g, y.body, ny) && m - mx == n - ny;
}

/// (x; (m, n)) ~ (y; (p, q)), evaluated literally.
inline bool equiv_P(const KGraph& g, const BoundaryFragment& x, const Degree& m, const Degree& n,
                    const BoundaryFragment& y, const Degree& p, const Degree& q) {
  if (!leq(m, n) || !leq(p, q)) throw DegreeOutOfRange("pair (m, n) requires m <= n");
  const Degree mx = meet_degree(x, m), nx = meet_degree(x, n);
  const Degree py = meet_degree(y, p), qy = meet_degree(y, q);
  if (m - mx != p - py) return false;                                 // P2
  if (n - m != q - p) return false;                                   // P3
  return segment(g, x.body, mx, nx) == segment(g, y.body, py, qy);  // P1
}

inline VTilde canon_vertex(const KGraph& g, const BoundaryFragment& x, const Degree& m) {
  const Degree mx = meet_degree(x, m);
  return {vertex_at(g, x.body, mx), m - mx};
}

inline MTilde canon_morphism(const KGraph& g, const BoundaryFragment& x, const Degree& m,
                             const Degree& n) {
  if (!leq(m, n)) throw DegreeOutOfRange("canon_morphism requires m <= n");
  const Degree mx = meet_degree(x, m);
  const Degree nx = meet_degree(x, n);
  return {segment(g, x.body, mx, nx), m - mx, n - nx};
}

/// iota(lambda) = [lambda x; (0, d(lambda))].
inline MTilde iota(const KGraph& g, const Path& lambda) {
  return {lambda, Degree::zero(g.rank()), Degree::zero(g.rank())};
}
inline VTilde iota(const KGraph& g, VertexId v) { return {v, Degree::zero(g.rank())}; }

/// pi: the core of the canonical form.
inline Path project(const MTilde& t) { return t.core; }
inline VertexId project(const VTilde& v) { return v.base; }

struct Representative {
  BoundaryFragment x;
  Degree m;
  Degree n;
};

namespace detail {
inline void require_valid(const KGraph& g, const MTilde& t) {
  if (!is_valid(g, t)) throw PreconditionFailed("not a canonical Lambda~ morphism: " + to_string(g, t));
}
}  // namespace detail

/// A representative (x; (m, n)) of t: x is the core followed by the greedy
/// boundary extension of depth B from its source, m = a, n = d(core) + b.
inline Representative realize(const KGraph& g, const MTilde& t, std::uint32_t B) {
  detail::require_valid(g, t);
  BoundaryFragment tail = greedy_fragment(g, t.core.source, B);
  return {prepend(g, t.core, tail), t.range_overshoot, t.core.degree + t.source_overshoot};
}

/// Every representative of t whose extension beyond the core is a depth-B
/// fragment.
inline std::vector<Representative> realize_all(const KGraph& g, const MTilde& t, std::uint32_t B) {
  detail::require_valid(g, t);
  std::vector<Representative> out;
  for (const auto& tail : fragments_from(g, t.core.source, B))
    out.push_back({prepend(g, t.core, tail), t.range_overshoot, t.core.degree + t.source_overshoot});
  return out;
}

/// [x; (m, n)] o [y; (p, q)] := [x(0, n ^ d(x)) sigma^{p ^ d(y)}(y); (m, n + q - p)]
/// evaluated on the given representatives.
inline MTilde compose_representatives(const KGraph& g, const Representative& s,
                                      const Representative& t) {
  const Degree nx = meet_degree(s.x, s.n);
  const Degree py = meet_degree(t.x, t.m);
  const Path head = segment(g, s.x.body, Degree::zero(g.rank()), nx);
  const BoundaryFragment spliced = prepend(g, head, shift(g, t.x, py));
  return canon_morphism(g, spliced, s.m, s.n + t.n - t.m);
}

/// Composition in Lambda~ through representatives (the defining formula).
inline MTilde compose_tilde(const KGraph& g, const MTilde& s, const MTilde& t) {
  if (s.source() != t.range())
    throw NotComposable("source " + to_string(g, s.source()) + " != range " + to_string(g, t.range()));
  const std::uint32_t B = 2;
  return compose_representatives(g, realize(g, s, B), realize(g, t, B));
}

/// Composition in Lambda~ on canonical forms: (mu, a, b)(nu, b, c) = (mu nu, a, c).
inline MTilde compose_canonical(const KGraph& g, const MTilde& s, const MTilde& t) {
  if (s.source() != t.range())
    throw NotComposable("source " + to_string(g, s.source()) + " != range " + to_string(g, t.range()));
  return {compose(g, s.core, t.core), s.range_overshoot, t.source_overshoot};
}

/// t(p, q) for 0 <= p <= q <= d(t), through a representative.
inline MTilde segment_tilde(const KGraph& g, const MTilde& t, const Degree& p, const Degree& q) {
  if (!leq(p, q) || !leq(q, t.degree()))
    throw DegreeOutOfRange("segment outside Lambda~ degree " + t.degree().to_string());
  auto rep = realize(g, t, 1);
  return canon_morphism(g, rep.x, rep.m + p, rep.m + q);
}

/// The edges of t in colour-ascending order.
inline std::vector<MTilde> edge_word(const KGraph& g, const MTilde& t) {
  std::vector<MTilde> out;
  auto rep = realize(g, t, 1);
  Degree at = rep.m;
  const Degree d = t.degree();
  for (std::size_t c = 0; c < g.rank(); ++c) {
    for (std::uint32_t s = 0; s < d[c]; ++s) {
      Degree next = at;
      ++next[c];
      out.push_back(canon_morphism(g, rep.x, at, next));
      at = next;
    }
  }
  return out;
}

/// A box of Lambda~: vertices with overshoot <= p_max and the degree-e_i
/// morphisms between them, presented (and validated) as a k-graph.
struct Region {
  KGraph graph;
  Degree p_max;
  std::vector<VTilde> vertices;  // indexed by region VertexId
  std::vector<MTilde> edges;     // indexed by region EdgeId
  std::map<VTilde, VertexId> vertex_index;
  std::map<MTilde, EdgeId> edge_index;

  /// Overshoot strictly below p_max in every colour.
  bool is_interior(VertexId v) const {
    const auto& o = vertices[idx(v)].overshoot;
    for (std::size_t c = 0; c < o.rank(); ++c)
      if (o[c] >= p_max[c]) return false;
    return true;
  }
  /// Far enough inside that every depth-B fragment from v stays in the box.
  bool has_room(VertexId v, std::uint32_t B) const {
    const auto& o = vertices[idx(v)].overshoot;
    for (std::size_t c = 0; c < o.rank(); ++c)
      if (o[c] + B > p_max[c]) return false;
    return true;
  }
};

namespace detail {

inline std::string overshoot_suffix(const Degree& a) {
  std::string s = "~";
  for (std::size_t c = 0; c < a.rank(); ++c) {
    if (c) s += '_';
    s += std::to_string(a[c]);
  }
  return s;
}

}  // namespace detail

/// Region paths to Lambda~ morphisms.
inline MTilde to_tilde(const KGraph& g, const Region& r, const Path& p) {
  MTilde t{vertex_path(g, r.vertices[idx(p.range)].base), r.vertices[idx(p.range)].overshoot,
           r.vertices[idx(p.range)].overshoot};
  for (auto e : p.edges) t = compose_canonical(g, t, r.edges[idx(e)]);
  return t;
}

/// Lambda~ morphisms inside the region to region paths.
inline Path to_region_path(const KGraph& g, const Region& r, const MTilde& t) {
  auto vit = r.vertex_index.find(t.range());
  if (vit == r.vertex_index.end()) throw DegreeOutOfRange("range outside the region");
  std::vector<EdgeId> word;
  for (const auto& e : edge_word(g, t)) {
    auto it = r.edge_index.find(e);
    if (it == r.edge_index.end()) throw DegreeOutOfRange("edge outside the region: " + to_string(g, e));
    word.push_back(it->second);
  }
  return path_from_edges(r.graph, vit->second, std::move(word));
}

/// Materialises the part of Lambda~ with overshoots at most p_max.
/// Checks that interior vertices receive an edge of every colour.
inline Region materialize(const KGraph& g, const Degree& p_max) {
  detail::require_convex(g);
  const auto k = g.rank();
  Region r;
  r.p_max = p_max;
  SkeletonSpec spec;
  spec.rank = k;

  auto overshoots_for = [&](VertexId w) {
    std::vector<Degree> out;
    for_each_degree_le(p_max, [&](const Degree& p) {
      if (is_valid(g, VTilde{w, p})) out.push_back(p);
    });
    return out;
  };

  for (std::size_t wi = 0; wi < g.num_vertices(); ++wi) {
    VertexId w{static_cast<std::uint32_t>(wi)};
    for (const auto& p : overshoots_for(w)) {
      VTilde v{w, p};
      auto id = spec.add_vertex(p.is_zero() ? g.name(w) : g.name(w) + detail::overshoot_suffix(p));
      r.vertices.push_back(v);
      r.vertex_index.emplace(v, id);
    }
  }
  auto add_edge = [&](const MTilde& t, std::string name) {
    auto src = r.vertex_index.find(t.source());
    auto rng = r.vertex_index.find(t.range());
    if (src == r.vertex_index.end() || rng == r.vertex_index.end()) return;
    std::size_t colour = 0;
    while (t.degree()[colour] == 0) ++colour;
    auto id = spec.add_edge(std::move(name), src->second, rng->second, colour);
    r.edges.push_back(t);
    r.edge_index.emplace(t, id);
  };
  // Edges of Lambda at every admissible overshoot.
  for (std::size_t ei = 0; ei < g.num_edges(); ++ei) {
    EdgeId e{static_cast<std::uint32_t>(ei)};
    for (const auto& a : overshoots_for(g.range(e))) {
      MTilde t{edge_path(g, e), a, a};
      if (!is_valid(g, t)) continue;
      add_edge(t, a.is_zero() ? g.name(e) : g.name(e) + detail::overshoot_suffix(a));
    }
  }
  // Tail edges in exhausted colours.
  for (std::size_t wi = 0; wi < g.num_vertices(); ++wi) {
    VertexId w{static_cast<std::uint32_t>(wi)};
    for (const auto& a : overshoots_for(w)) {
      for (std::size_t c = 0; c < k; ++c) {
        if (g.alive(w, c)) continue;
        Degree b = a;
        ++b[c];
        add_edge(MTilde{vertex_path(g, w), a, b},
                 g.name(w) + detail::overshoot_suffix(a) + "^" + std::to_string(c + 1));
      }
    }
  }
  // Squares induced by composition.
  for (std::size_t fi = 0; fi < r.edges.size(); ++fi) {
    const MTilde& f = r.edges[fi];
    const auto cf = spec.edges[fi].color;
    const auto s = r.vertex_index.at(f.source());
    for (std::size_t gi = 0; gi < r.edges.size(); ++gi) {
      if (spec.edges[gi].range != s || spec.edges[gi].color <= cf) continue;
      const MTilde& g2 = r.edges[gi];
      const MTilde whole = compose_canonical(g, f, g2);
      const Degree ej = Degree::unit(k, spec.edges[gi].color);
      const MTilde outer = segment_tilde(g, whole, Degree::zero(k), ej);
      const MTilde inner = segment_tilde(g, whole, ej, whole.degree());
      auto oi = r.edge_index.find(outer);
      auto ii = r.edge_index.find(inner);
      if (oi == r.edge_index.end() || ii == r.edge_index.end())
        throw InvariantBreach("factorisation of " + to_string(g, whole) + " leaves the region");
      spec.add_square(EdgeId(static_cast<std::uint32_t>(fi)), EdgeId(static_cast<std::uint32_t>(gi)),
                      oi->second, ii->second);
    }
  }
  r.graph = validate(std::move(spec));
  for (std::size_t vi = 0; vi < r.vertices.size(); ++vi) {
    VertexId v{static_cast<std::uint32_t>(vi)};
    if (!r.is_interior(v)) continue;
    for (std::size_t c = 0; c < k; ++c)
      if (!r.graph.alive(v, c))
        throw InvariantBreach("interior vertex " + r.graph.name(v) + " is a source in colour " +
                              std::to_string(c + 1));
  }
  return r;
}

/// [x; (n, infinity)] restricted to the box [0, box]: the Lambda~ morphism
/// [x; (n, n + box)].
inline MTilde lift_fragment(const KGraph& g, const BoundaryFragment& x, const Degree& n,
                            const Degree& box) {
  return canon_morphism(g, x, n, n + box);
}

struct InfiniteProjection {
  Degree p;               // p_y, with p ^ d(pi(y)) = 0
  BoundaryFragment path;  // pi(y), known to depth `box`
};

/// Splits a truncated infinite path y(0, box) of Lambda~ as [pi(y); (p_y, p_y + box)].
inline InfiniteProjection project_infinite(const KGraph& g, const MTilde& y) {
  detail::require_valid(g, y);
  const Degree box = y.degree();
  BoundaryFragment f = make_fragment(g, y.core, box);
  for (std::size_t c = 0; c < g.rank(); ++c)
    if (f.alive(c) && y.core.degree[c] < box[c])
      throw InsufficientDepth("y does not determine pi(y) in colour " + std::to_string(c + 1));
  return {y.range_overshoot, std::move(f)};
}

}  // namespace kgraph
