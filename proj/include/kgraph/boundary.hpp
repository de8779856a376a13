#pragma once

// Boundary paths truncated to a finite box ("fragments").
//
// A fragment stands for every boundary path x whose initial segment
// x(0, depth ^ d(x)) is `body`. Colours in `frontier` are still alive at
// s(body): for those d(x)_i >= d(body)_i = depth_i is all that is known.
// Every other colour is exhausted and d(x)_i = d(body)_i exactly.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgraph/degree.hpp"
#include "kgraph/enumerate.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/path.hpp"

namespace kgraph {

struct BoundaryFragment {
  Path body;
  std::uint32_t frontier = 0;  // bit c set: colour c alive at s(body)
  Degree depth;

  VertexId range() const { return body.range; }
  bool alive(std::size_t c) const { return (frontier >> c) & 1u; }
  bool complete() const { return frontier == 0; }

  /// d(x) as far as it is known: exhausted colours exact, live colours
  /// unbounded.
  ExtDegree determined_degree() const {
    ExtDegree d(body.degree);
    for (std::size_t c = 0; c < body.degree.rank(); ++c)
      if (alive(c)) d.set_unbounded(c);
    return d;
  }

  friend bool operator==(const BoundaryFragment&, const BoundaryFragment&) = default;
  friend auto operator<=>(const BoundaryFragment& a, const BoundaryFragment& b) {
    if (auto c = a.body <=> b.body; c != 0) return c;
    if (auto c = a.depth <=> b.depth; c != 0) return c;
    return a.frontier <=> b.frontier;
  }
};

inline BoundaryFragment make_fragment(const KGraph& g, Path body, const Degree& depth) {
  BoundaryFragment f{std::move(body), 0, depth};
  f.frontier = g.alive_mask(f.body.source);
  return f;
}

namespace detail {
inline void require_convex(const KGraph& g) {
  if (!g.locally_convex()) throw NotLocallyConvex("boundary paths need a locally convex graph");
}
}  // namespace detail

/// One fragment per element of v Lambda^{<=B(1,...,1)}.
inline std::vector<BoundaryFragment> fragments_from(const KGraph& g, VertexId v, std::uint32_t B) {
  detail::require_convex(g);
  const Degree box = Degree::filled(g.rank(), B);
  std::vector<BoundaryFragment> out;
  for (auto& p : paths_le(g, v, box)) out.push_back(make_fragment(g, std::move(p), box));
  return out;
}

/// All fragments of depth `new_depth` whose truncation to f.depth is f.
inline std::vector<BoundaryFragment> extend_to(const KGraph& g, const BoundaryFragment& f,
                                               const Degree& new_depth) {
  detail::require_convex(g);
  if (!leq(f.depth, new_depth))
    throw DegreeOutOfRange("extension depth " + new_depth.to_string() + " below " +
                           f.depth.to_string());
  Degree room = Degree::zero(g.rank());
  for (std::size_t c = 0; c < g.rank(); ++c)
    if (f.alive(c)) room[c] = new_depth[c] - f.depth[c];
  std::vector<BoundaryFragment> out;
  for_each_path_in_box(g, f.body.source, room, [&](const Path& tail) {
    if (!in_le(g, tail, room)) return;
    out.push_back(make_fragment(g, compose(g, f.body, tail), new_depth));
  });
  return out;
}

inline std::vector<BoundaryFragment> extend(const KGraph& g, const BoundaryFragment& f,
                                            std::uint32_t B) {
  return extend_to(g, f, Degree::filled(g.rank(), B));
}

/// x(p, q) for q within the known body.
inline Path fragment_segment(const KGraph& g, const BoundaryFragment& f, const Degree& p,
                             const Degree& q) {
  return segment(g, f.body, p, q);
}

/// m ^ d(x), or InsufficientDepth when a live colour is asked beyond the body.
inline Degree meet_degree(const BoundaryFragment& f, const Degree& m) {
  Degree r = meet(m, f.body.degree);
  for (std::size_t c = 0; c < m.rank(); ++c)
    if (f.alive(c) && m[c] > f.body.degree[c])
      throw InsufficientDepth("coordinate " + std::to_string(c + 1) + " of " + m.to_string() +
                              " exceeds the explored depth " + f.body.degree.to_string());
  return r;
}

/// Truncation to a smaller box.
inline BoundaryFragment truncate(const KGraph& g, const BoundaryFragment& f, const Degree& depth) {
  if (!leq(depth, f.depth))
    throw DegreeOutOfRange("truncation depth " + depth.to_string() + " exceeds " +
                           f.depth.to_string());
  const Degree top = meet(depth, f.body.degree);
  return make_fragment(g, segment(g, f.body, Degree::zero(g.rank()), top), depth);
}

/// sigma^n(x).
inline BoundaryFragment shift(const KGraph& g, const BoundaryFragment& f, const Degree& n) {
  if (!leq(n, f.body.degree))
    throw DegreeOutOfRange("shift " + n.to_string() + " beyond body degree " +
                           f.body.degree.to_string());
  return BoundaryFragment{segment(g, f.body, n, f.body.degree), f.frontier, f.depth - n};
}

/// lambda x.
inline BoundaryFragment prepend(const KGraph& g, const Path& lambda, const BoundaryFragment& f) {
  if (lambda.source != f.body.range)
    throw NotComposable("s(lambda) = " + g.name(lambda.source) + " but r(x) = " +
                        g.name(f.body.range));
  return BoundaryFragment{compose(g, lambda, f.body), f.frontier, lambda.degree + f.depth};
}

/// x(0, depth ^ d(x)) = y(0, depth ^ d(y)). Throws InsufficientDepth when
/// either side is not determined that far.
inline bool fragment_eq(const KGraph& g, const BoundaryFragment& f, const BoundaryFragment& h,
                        const Degree& depth) {
  const Degree a = meet_degree(f, depth);
  const Degree b = meet_degree(h, depth);
  if (a != b || f.body.range != h.body.range) return false;
  const Degree zero = Degree::zero(g.rank());
  return segment(g, f.body, zero, a) == segment(g, h.body, zero, b);
}

/// The largest box on which both fragments are determined.
inline Degree common_determined_depth(const BoundaryFragment& f, const BoundaryFragment& h,
                                      std::uint32_t cap) {
  Degree d = Degree::filled(f.body.degree.rank(), cap);
  for (std::size_t c = 0; c < d.rank(); ++c) {
    if (f.alive(c)) d[c] = std::min(d[c], f.body.degree[c]);
    if (h.alive(c)) d[c] = std::min(d[c], h.body.degree[c]);
  }
  return d;
}

/// Every vertex x(p), 0 <= p <= d(body).
inline std::set<VertexId> visited_vertices(const KGraph& g, const Path& body) {
  std::set<VertexId> out;
  for_each_degree_le(body.degree, [&](const Degree& p) { out.insert(vertex_at(g, body, p)); });
  return out;
}

/// The greedy boundary extension from v: colours in ascending order, always
/// the least edge id, each colour run for up to B steps.
inline BoundaryFragment greedy_fragment(const KGraph& g, VertexId v, std::uint32_t B) {
  detail::require_convex(g);
  Path p = vertex_path(g, v);
  for (std::size_t c = 0; c < g.rank(); ++c) {
    for (std::uint32_t t = 0; t < B; ++t) {
      auto into = g.edges_into(p.source, c);
      if (into.empty()) break;
      p.edges.push_back(into.front());
      p.source = g.source(into.front());
      ++p.degree[c];
    }
  }
  return make_fragment(g, std::move(p), Degree::filled(g.rank(), B));
}

inline std::string to_string(const KGraph& g, const BoundaryFragment& f) {
  std::string s = to_string(g, f.body) + " |frontier {";
  bool first = true;
  for (std::size_t c = 0; c < g.rank(); ++c) {
    if (!f.alive(c)) continue;
    if (!first) s += ',';
    s += std::to_string(c + 1);
    first = false;
  }
  return s + "} depth " + f.depth.to_string();
}

}  // namespace kgraph
