#pragma once

// Finite k-graphs presented by a coloured skeleton plus commuting squares.
//
// A square (f, g, f2, g2) with color(f) = color(f2) = i < j = color(g) =
// color(g2) declares the identity f g2 = g f2 between the two factorisations
// of one degree e_i + e_j morphism. Composition is written as juxtaposition:
// in `a b` the edge `b` is traversed first, so s(a) = r(b).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgraph/degree.hpp"
#include "kgraph/errors.hpp"

namespace kgraph {

enum class VertexId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};

constexpr std::uint32_t idx(VertexId v) { return static_cast<std::uint32_t>(v); }
constexpr std::uint32_t idx(EdgeId e) { return static_cast<std::uint32_t>(e); }

struct EdgeDecl {
  std::string name;
  std::size_t color = 0;  // 0-based
  VertexId source{};
  VertexId range{};
};

/// Declares `left_outer left_inner = right_outer right_inner` (outer factor
/// applied last). Orientation is free; validation normalises it.
struct SquareDecl {
  EdgeId left_outer{};
  EdgeId left_inner{};
  EdgeId right_outer{};
  EdgeId right_inner{};
};

struct SkeletonSpec {
  std::size_t rank = 1;
  std::vector<std::string> vertices;
  std::vector<EdgeDecl> edges;
  std::vector<SquareDecl> squares;

  VertexId add_vertex(std::string name) {
    vertices.push_back(std::move(name));
    return VertexId(static_cast<std::uint32_t>(vertices.size() - 1));
  }
  EdgeId add_edge(std::string name, VertexId source, VertexId range, std::size_t color) {
    edges.push_back({std::move(name), color, source, range});
    return EdgeId(static_cast<std::uint32_t>(edges.size() - 1));
  }
  void add_square(EdgeId left_outer, EdgeId left_inner, EdgeId right_outer, EdgeId right_inner) {
    squares.push_back({left_outer, left_inner, right_outer, right_inner});
  }

  std::optional<VertexId> find_vertex(const std::string& name) const {
    auto it = std::find(vertices.begin(), vertices.end(), name);
    if (it == vertices.end()) return std::nullopt;
    return VertexId(static_cast<std::uint32_t>(it - vertices.begin()));
  }
  std::optional<EdgeId> find_edge(const std::string& name) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i].name == name) return EdgeId(static_cast<std::uint32_t>(i));
    return std::nullopt;
  }
};

/// Two edges in composition order: `outer inner`, with s(outer) = r(inner).
struct EdgePair {
  EdgeId outer{};
  EdgeId inner{};
  friend bool operator==(const EdgePair&, const EdgePair&) = default;
  friend auto operator<=>(const EdgePair&, const EdgePair&) = default;
};

/// Edges of distinct colours with a common range; `lower` has the smaller
/// colour.
struct ConvexityViolation {
  EdgeId lower{};
  EdgeId upper{};
  friend bool operator==(const ConvexityViolation&, const ConvexityViolation&) = default;
};

struct EdgeTriple {
  EdgeId a{}, b{}, c{};
  friend bool operator==(const EdgeTriple&, const EdgeTriple&) = default;
};

/// Everything wrong with a presentation. Empty means valid.
struct ValidationReport {
  /// Composable two-colour pairs covered by no square.
  std::vector<EdgePair> incomplete_pairs;
  /// Composable edge triples (colours strictly decreasing) whose two
  /// resolutions to normal form disagree.
  std::vector<EdgeTriple> non_associative;
  /// Indices into SkeletonSpec::squares of squares that are malformed or
  /// cover a pair already covered by an earlier square.
  std::vector<std::size_t> malformed_squares;
  std::vector<std::string> messages;

  bool ok() const {
    return incomplete_pairs.empty() && non_associative.empty() && malformed_squares.empty() &&
           messages.empty();
  }
};

class InvalidGraph : public Error {
 public:
  InvalidGraph(const std::string& what, ValidationReport report)
      : Error(what), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

class KGraph;
inline ValidationReport check_presentation(const SkeletonSpec& spec);
inline KGraph validate(SkeletonSpec spec);

/// A validated finite k-graph. Immutable; every query is const.
class KGraph {
 public:
  KGraph() = default;

  std::size_t rank() const { return spec_.rank; }
  std::size_t num_vertices() const { return spec_.vertices.size(); }
  std::size_t num_edges() const { return spec_.edges.size(); }
  const SkeletonSpec& spec() const { return spec_; }

  const std::string& name(VertexId v) const { return spec_.vertices.at(idx(v)); }
  const std::string& name(EdgeId e) const { return spec_.edges.at(idx(e)).name; }
  VertexId vertex(const std::string& n) const {
    if (auto v = spec_.find_vertex(n)) return *v;
    throw UnknownName("unknown vertex '" + n + "'");
  }
  EdgeId edge(const std::string& n) const {
    if (auto e = spec_.find_edge(n)) return *e;
    throw UnknownName("unknown edge '" + n + "'");
  }

  std::size_t color(EdgeId e) const { return spec_.edges[idx(e)].color; }
  VertexId source(EdgeId e) const { return spec_.edges[idx(e)].source; }
  VertexId range(EdgeId e) const { return spec_.edges[idx(e)].range; }

  /// v Lambda^{e_c}, sorted by edge id.
  std::span<const EdgeId> edges_into(VertexId v, std::size_t c) const {
    return in_[idx(v) * rank() + c];
  }
  /// True iff v Lambda^{e_c} is non-empty.
  bool alive(VertexId v, std::size_t c) const { return !edges_into(v, c).empty(); }
  /// Bitmask of colours c with v Lambda^{e_c} non-empty.
  std::uint32_t alive_mask(VertexId v) const {
    std::uint32_t m = 0;
    for (std::size_t c = 0; c < rank(); ++c)
      if (alive(v, c)) m |= 1u << c;
    return m;
  }

  /// Rewrites `a b` with color(a) > color(b) into `b2 a2` with the colours
  /// exchanged.
  EdgePair to_ascending(EdgeId a, EdgeId b) const {
    auto it = down_.find(key(a, b));
    if (it == down_.end())
      throw InvariantBreach("no square for pair " + name(a) + "." + name(b));
    return it->second;
  }
  /// Rewrites `a b` with color(a) < color(b) into `b2 a2`.
  EdgePair to_descending(EdgeId a, EdgeId b) const {
    auto it = up_.find(key(a, b));
    if (it == up_.end())
      throw InvariantBreach("no square for pair " + name(a) + "." + name(b));
    return it->second;
  }
  /// Swaps two adjacent edges of distinct colours.
  EdgePair exchange(EdgeId a, EdgeId b) const {
    return color(a) > color(b) ? to_ascending(a, b) : to_descending(a, b);
  }

  /// True iff some morphism has source w and range v (v Lambda w != empty).
  bool reaches(VertexId w, VertexId v) const {
    return reach_[idx(v) * num_vertices() + idx(w)] != 0;
  }

  bool locally_convex() const { return !convexity_witness_.has_value(); }
  /// Edges with distinct colours and common range where one of them cannot
  /// be continued in the other's colour.
  const std::optional<ConvexityViolation>& convexity_witness() const { return convexity_witness_; }

 private:
  friend KGraph validate(SkeletonSpec spec);

  static std::uint64_t key(EdgeId a, EdgeId b) {
    return (std::uint64_t(idx(a)) << 32) | idx(b);
  }

  void build_indices();
  void build_reachability();
  void build_convexity();

  SkeletonSpec spec_;
  std::vector<std::vector<EdgeId>> in_;
  std::unordered_map<std::uint64_t, EdgePair> down_;
  std::unordered_map<std::uint64_t, EdgePair> up_;
  std::vector<char> reach_;
  std::optional<ConvexityViolation> convexity_witness_;
};

namespace detail {

inline std::string pair_text(const SkeletonSpec& s, EdgePair p) {
  return s.edges[idx(p.outer)].name + "." + s.edges[idx(p.inner)].name;
}

/// Square in canonical orientation: f g2 = g f2, color(f) < color(g).
struct NormalSquare {
  EdgeId f, g, f2, g2;
};

inline std::optional<NormalSquare> normalise(const SkeletonSpec& s, const SquareDecl& d,
                                             std::string& why) {
  const auto n = s.edges.size();
  for (EdgeId e : {d.left_outer, d.left_inner, d.right_outer, d.right_inner}) {
    if (idx(e) >= n) {
      why = "edge index out of range";
      return std::nullopt;
    }
  }
  auto col = [&](EdgeId e) { return s.edges[idx(e)].color; };
  auto src = [&](EdgeId e) { return s.edges[idx(e)].source; };
  auto rng = [&](EdgeId e) { return s.edges[idx(e)].range; };
  NormalSquare q{};
  if (col(d.left_outer) < col(d.left_inner)) {
    q = {d.left_outer, d.right_outer, d.right_inner, d.left_inner};
  } else {
    q = {d.right_outer, d.left_outer, d.left_inner, d.right_inner};
  }
  if (col(q.f) >= col(q.g2) || col(q.f) != col(q.f2) || col(q.g) != col(q.g2)) {
    why = "colours do not form two distinct matching pairs";
    return std::nullopt;
  }
  if (rng(q.f) != rng(q.g) || src(q.f) != rng(q.g2) || src(q.g) != rng(q.f2) ||
      src(q.g2) != src(q.f2)) {
    why = "endpoints do not close up";
    return std::nullopt;
  }
  return q;
}

}  // namespace detail

inline ValidationReport check_presentation(const SkeletonSpec& s) {
  ValidationReport rep;
  if (s.rank == 0 || s.rank > kMaxRank) {
    rep.messages.push_back("rank must be in 1.." + std::to_string(kMaxRank));
    return rep;
  }
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    const auto& e = s.edges[i];
    if (e.color >= s.rank || idx(e.source) >= s.vertices.size() ||
        idx(e.range) >= s.vertices.size())
      rep.messages.push_back("edge '" + e.name + "' has bad colour or endpoint");
  }
  if (!rep.messages.empty()) return rep;

  std::map<EdgePair, std::size_t> down, up;  // (g,f2) -> square, (f,g2) -> square
  std::map<std::uint64_t, EdgePair> down_map;
  for (std::size_t i = 0; i < s.squares.size(); ++i) {
    std::string why;
    auto q = detail::normalise(s, s.squares[i], why);
    if (!q) {
      rep.malformed_squares.push_back(i);
      rep.messages.push_back("square #" + std::to_string(i + 1) + ": " + why);
      continue;
    }
    bool dup = !down.emplace(EdgePair{q->g, q->f2}, i).second;
    dup = !up.emplace(EdgePair{q->f, q->g2}, i).second || dup;
    if (dup) {
      rep.malformed_squares.push_back(i);
      rep.messages.push_back("square #" + std::to_string(i + 1) +
                             " covers a pair already covered by another square");
      continue;
    }
    down_map[(std::uint64_t(idx(q->g)) << 32) | idx(q->f2)] = EdgePair{q->f, q->g2};
  }

  // Completeness: every composable two-colour pair lies on exactly one square.
  std::vector<std::vector<EdgeId>> out_of(s.vertices.size());  // edges with range v
  for (std::size_t i = 0; i < s.edges.size(); ++i)
    out_of[idx(s.edges[i].range)].push_back(EdgeId(static_cast<std::uint32_t>(i)));
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    EdgeId a{static_cast<std::uint32_t>(i)};
    for (EdgeId b : out_of[idx(s.edges[i].source)]) {
      auto ca = s.edges[idx(a)].color, cb = s.edges[idx(b)].color;
      if (ca == cb) continue;
      const auto& table = ca < cb ? up : down;
      if (!table.count(EdgePair{a, b})) rep.incomplete_pairs.push_back({a, b});
    }
  }
  if (!rep.incomplete_pairs.empty() || !rep.malformed_squares.empty()) return rep;

  // Associativity: for colours l > j > i every composable triple a b c must
  // resolve to the same ascending word along both reduced swap sequences.
  auto swap_down = [&](EdgeId a, EdgeId b) {
    return down_map.at((std::uint64_t(idx(a)) << 32) | idx(b));
  };
  for (std::size_t ia = 0; ia < s.edges.size(); ++ia) {
    EdgeId a{static_cast<std::uint32_t>(ia)};
    auto ca = s.edges[ia].color;
    for (EdgeId b : out_of[idx(s.edges[ia].source)]) {
      auto cb = s.edges[idx(b)].color;
      if (cb >= ca) continue;
      for (EdgeId c : out_of[idx(s.edges[idx(b)].source)]) {
        auto cc = s.edges[idx(c)].color;
        if (cc >= cb) continue;
        // Route 1: (b c), (a c'), (a' b')
        auto [c1, b1] = swap_down(b, c);
        auto [c2, a1] = swap_down(a, c1);
        auto [b2, a2] = swap_down(a1, b1);
        // Route 2: (a b), (a' c), (b' c')
        auto [b3, a3] = swap_down(a, b);
        auto [c3, a4] = swap_down(a3, c);
        auto [c4, b4] = swap_down(b3, c3);
        if (!(c2 == c4 && b2 == b4 && a2 == a4)) rep.non_associative.push_back({a, b, c});
      }
    }
  }
  return rep;
}

/// Validates a presentation and builds the query indices.
/// Throws InvalidGraph carrying the full report on failure.
inline KGraph validate(SkeletonSpec spec) {
  auto rep = check_presentation(spec);
  if (!rep.ok()) {
    std::ostringstream os;
    if (!rep.messages.empty()) os << rep.messages.front();
    if (!rep.malformed_squares.empty())
      os << (os.tellp() ? "; " : "") << "MalformedSquare #" << rep.malformed_squares.front() + 1;
    if (!rep.incomplete_pairs.empty()) {
      os << (os.tellp() ? "; " : "") << "IncompleteSquares:";
      for (auto p : rep.incomplete_pairs) os << ' ' << detail::pair_text(spec, p);
    }
    if (!rep.non_associative.empty()) {
      auto t = rep.non_associative.front();
      os << (os.tellp() ? "; " : "") << "NonAssociative: " << spec.edges[idx(t.a)].name << '.'
         << spec.edges[idx(t.b)].name << '.' << spec.edges[idx(t.c)].name;
    }
    throw InvalidGraph(os.str(), std::move(rep));
  }
  KGraph g;
  g.spec_ = std::move(spec);
  g.build_indices();
  g.build_reachability();
  g.build_convexity();
  // Direction death is hereditary: if r(e) has no colour-c edges then
  // neither does s(e). Follows from completeness; checked as a tripwire.
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    EdgeId e{static_cast<std::uint32_t>(i)};
    for (std::size_t c = 0; c < g.rank(); ++c)
      if (!g.alive(g.range(e), c) && g.alive(g.source(e), c))
        throw InvariantBreach("direction-death heredity fails along edge " + g.name(e));
  }
  return g;
}

inline void KGraph::build_indices() {
  const auto k = rank();
  in_.assign(num_vertices() * k, {});
  for (std::size_t i = 0; i < num_edges(); ++i) {
    const auto& e = spec_.edges[i];
    in_[idx(e.range) * k + e.color].push_back(EdgeId(static_cast<std::uint32_t>(i)));
  }
  for (const auto& sq : spec_.squares) {
    std::string why;
    auto q = detail::normalise(spec_, sq, why);
    down_[key(q->g, q->f2)] = EdgePair{q->f, q->g2};
    up_[key(q->f, q->g2)] = EdgePair{q->g, q->f2};
  }
}

inline void KGraph::build_reachability() {
  const auto n = num_vertices();
  reach_.assign(n * n, 0);
  std::vector<std::vector<VertexId>> preds(n);  // sources of edges into v
  for (const auto& e : spec_.edges) preds[idx(e.range)].push_back(e.source);
  std::vector<VertexId> stack;
  for (std::size_t v = 0; v < n; ++v) {
    char* row = &reach_[v * n];
    row[v] = 1;
    stack.assign(1, VertexId(static_cast<std::uint32_t>(v)));
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto w : preds[idx(u)]) {
        if (!row[idx(w)]) {
          row[idx(w)] = 1;
          stack.push_back(w);
        }
      }
    }
  }
}

inline void KGraph::build_convexity() {
  convexity_witness_.reset();
  const auto k = rank();
  for (std::size_t v = 0; v < num_vertices() && !convexity_witness_; ++v) {
    VertexId vv{static_cast<std::uint32_t>(v)};
    for (std::size_t i = 0; i < k && !convexity_witness_; ++i) {
      for (std::size_t j = 0; j < k && !convexity_witness_; ++j) {
        if (i == j) continue;
        for (EdgeId l : edges_into(vv, i)) {
          if (alive(source(l), j)) continue;
          auto others = edges_into(vv, j);
          if (!others.empty()) {
            convexity_witness_ = i < j ? ConvexityViolation{l, others.front()}
                                       : ConvexityViolation{others.front(), l};
            break;
          }
        }
      }
    }
  }
}

}  // namespace kgraph
