#pragma once

// Morphisms of a k-graph as edge words in colour-ascending normal form, and
// the factorisation machinery that moves between words of different shapes.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/degree.hpp"
#include "kgraph/graph.hpp"

namespace kgraph {

/// A morphism lambda. `edges` lists the factorisation whose colours ascend
/// from the range end: all colour-1 edges, then colour-2, and so on. The
/// first edge has range `range`; each later edge has range equal to the
/// source of its predecessor. A degree-0 path is the vertex `range`.
struct Path {
  VertexId range{};
  VertexId source{};
  Degree degree;
  std::vector<EdgeId> edges;

  bool is_vertex() const { return edges.empty(); }

  friend bool operator==(const Path& a, const Path& b) {
    return a.range == b.range && a.edges == b.edges && a.degree.rank() == b.degree.rank();
  }
  friend auto operator<=>(const Path& a, const Path& b) {
    if (auto c = a.range <=> b.range; c != 0) return c;
    if (auto c = a.degree <=> b.degree; c != 0) return c;
    return a.edges <=> b.edges;
  }
};

inline Path vertex_path(const KGraph& g, VertexId v) {
  return Path{v, v, Degree::zero(g.rank()), {}};
}

namespace detail {

/// Reorders a composable edge word so its colours follow `target` (a
/// permutation of the word's colour multiset). Adjacent distinct-colour
/// pairs are exchanged through squares; the result is unique by the
/// factorisation property.
inline void reorder(const KGraph& g, std::vector<EdgeId>& word,
                    const std::vector<std::size_t>& target) {
  for (std::size_t p = 0; p < word.size(); ++p) {
    std::size_t q = p;
    while (q < word.size() && g.color(word[q]) != target[p]) ++q;
    if (q == word.size()) throw InvariantBreach("reorder: colour multiset mismatch");
    for (; q > p; --q) {
      auto swapped = g.exchange(word[q - 1], word[q]);
      word[q - 1] = swapped.outer;
      word[q] = swapped.inner;
    }
  }
}

inline void append_colour_block(std::vector<std::size_t>& word, const Degree& d) {
  for (std::size_t c = 0; c < d.rank(); ++c)
    for (std::uint32_t t = 0; t < d[c]; ++t) word.push_back(c);
}

inline std::vector<std::size_t> ascending_word(const Degree& d) {
  std::vector<std::size_t> w;
  append_colour_block(w, d);
  return w;
}

inline void sort_ascending(const KGraph& g, std::vector<EdgeId>& word) {
  Degree d = Degree::zero(g.rank());
  for (auto e : word) ++d[g.color(e)];
  reorder(g, word, ascending_word(d));
}

}  // namespace detail

/// Builds the morphism represented by an arbitrary composable edge word.
inline Path path_from_edges(const KGraph& g, VertexId range, std::vector<EdgeId> word) {
  VertexId at = range;
  Degree d = Degree::zero(g.rank());
  for (auto e : word) {
    if (g.range(e) != at)
      throw NotComposable("edge " + g.name(e) + " does not start at " + g.name(at));
    at = g.source(e);
    ++d[g.color(e)];
  }
  detail::sort_ascending(g, word);
  return Path{range, at, d, std::move(word)};
}

inline Path edge_path(const KGraph& g, EdgeId e) {
  return path_from_edges(g, g.range(e), {e});
}

/// The composite a b (b first). Requires s(a) = r(b).
inline Path compose(const KGraph& g, const Path& a, const Path& b) {
  if (a.source != b.range)
    throw NotComposable("s(a) = " + g.name(a.source) + " but r(b) = " + g.name(b.range));
  Path r{a.range, b.source, a.degree + b.degree, a.edges};
  r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
  detail::sort_ascending(g, r.edges);
  return r;
}

/// lambda(m, n) for 0 <= m <= n <= d(lambda).
inline Path segment(const KGraph& g, const Path& lambda, const Degree& m, const Degree& n) {
  if (!leq(m, n) || !leq(n, lambda.degree))
    throw DegreeOutOfRange("segment " + m.to_string() + ".." + n.to_string() +
                           " outside degree " + lambda.degree.to_string());
  if (m.is_zero() && n == lambda.degree) return lambda;
  const Degree mid = n - m;
  std::vector<std::size_t> target;
  detail::append_colour_block(target, m);
  detail::append_colour_block(target, mid);
  detail::append_colour_block(target, lambda.degree - n);
  std::vector<EdgeId> word = lambda.edges;
  detail::reorder(g, word, target);
  const std::size_t lo = static_cast<std::size_t>(m.total());
  const std::size_t hi = lo + static_cast<std::size_t>(mid.total());
  VertexId start = lo == 0 ? lambda.range : g.source(word[lo - 1]);
  std::vector<EdgeId> piece(word.begin() + lo, word.begin() + hi);
  VertexId end = piece.empty() ? start : g.source(piece.back());
  detail::sort_ascending(g, piece);
  return Path{start, end, mid, std::move(piece)};
}

/// The unique (lambda(0,m), lambda(m,d(lambda))).
inline std::pair<Path, Path> factorize(const KGraph& g, const Path& lambda, const Degree& m) {
  if (!leq(m, lambda.degree))
    throw DegreeOutOfRange("factorize at " + m.to_string() + " exceeds degree " +
                           lambda.degree.to_string());
  return {segment(g, lambda, Degree::zero(g.rank()), m), segment(g, lambda, m, lambda.degree)};
}

/// lambda(p): the vertex reached at position p of the degree box.
inline VertexId vertex_at(const KGraph& g, const Path& lambda, const Degree& p) {
  if (p.is_zero()) return lambda.range;
  if (p == lambda.degree) return lambda.source;
  return segment(g, lambda, Degree::zero(g.rank()), p).source;
}

inline std::string to_string(const KGraph& g, const Path& p) {
  if (p.is_vertex()) return g.name(p.range);
  std::string s;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += '.';
    s += g.name(p.edges[i]);
  }
  return s;
}

}  // namespace kgraph

template <>
struct std::hash<kgraph::Path> {
  std::size_t operator()(const kgraph::Path& p) const noexcept {
    std::size_t h = kgraph::idx(p.range) * 0x9e3779b97f4a7c15ull;
    for (auto e : p.edges) h = (h ^ kgraph::idx(e)) * 0x100000001b3ull;
    return h;
  }
};
