#pragma once

// Built-in example graphs.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kgraph/degree.hpp"
#include "kgraph/graph.hpp"

namespace kgraph {

struct Fixture {
  std::string name;
  SkeletonSpec spec;
  /// Vertices standing in for a cut-off infinite part of the graph.
  std::vector<std::string> truncation_frontier;

  KGraph build() const { return validate(spec); }
};

namespace fixtures {

namespace detail {

inline std::string coords(const Degree& p) {
  std::string s;
  for (std::size_t c = 0; c < p.rank(); ++c) {
    if (c) s += '_';
    s += std::to_string(p[c]);
  }
  return s;
}

/// Adds every square forced by the skeleton: for each range r, source s and
/// colour pair i < j, the ascending and descending two-edge paths from s to
/// r must be one each. Throws if the completion is not unique.
inline void complete_squares(SkeletonSpec& spec) {
  const std::size_t ne = spec.edges.size();
  std::vector<std::vector<EdgeId>> into(spec.vertices.size());
  for (std::size_t i = 0; i < ne; ++i) into[idx(spec.edges[i].range)].push_back(EdgeId(static_cast<std::uint32_t>(i)));
  using Key = std::tuple<std::uint32_t, std::uint32_t, std::size_t, std::size_t>;
  std::map<Key, std::pair<std::vector<std::pair<EdgeId, EdgeId>>, std::vector<std::pair<EdgeId, EdgeId>>>> blocks;
  for (std::size_t i = 0; i < ne; ++i) {
    EdgeId a{static_cast<std::uint32_t>(i)};
    const auto& ea = spec.edges[i];
    for (EdgeId b : into[idx(ea.source)]) {
      const auto& eb = spec.edges[idx(b)];
      if (ea.color == eb.color) continue;
      const auto lo = std::min(ea.color, eb.color), hi = std::max(ea.color, eb.color);
      Key k{idx(ea.range), idx(eb.source), lo, hi};
      if (ea.color < eb.color)
        blocks[k].first.emplace_back(a, b);
      else
        blocks[k].second.emplace_back(a, b);
    }
  }
  for (const auto& [k, paths] : blocks) {
    const auto& [asc, desc] = paths;
    if (asc.size() != 1 || desc.size() != 1)
      throw InvariantBreach("square completion not unique between " + spec.vertices[std::get<1>(k)] +
                            " and " + spec.vertices[std::get<0>(k)] + " (" + std::to_string(asc.size()) +
                            " ascending, " + std::to_string(desc.size()) + " descending paths)");
    spec.add_square(asc[0].first, asc[0].second, desc[0].first, desc[0].second);
  }
}

}  // namespace detail

/// Omega_{k,m}: vertices p <= m, one colour-i edge from p + e_i to p.
inline Fixture omega(std::size_t k, const Degree& m) {
  Fixture f;
  f.name = "omega";
  f.spec.rank = k;
  std::map<Degree, VertexId> at;
  for_each_degree_le(m, [&](const Degree& p) { at[p] = f.spec.add_vertex("v" + detail::coords(p)); });
  std::map<std::pair<Degree, std::size_t>, EdgeId> edge;
  for_each_degree_le(m, [&](const Degree& p) {
    for (std::size_t i = 0; i < k; ++i) {
      if (p[i] == m[i]) continue;
      Degree q = p;
      ++q[i];
      edge[{p, i}] = f.spec.add_edge("e" + std::to_string(i + 1) + "_" + detail::coords(p), at[q], at[p], i);
    }
  });
  for_each_degree_le(m, [&](const Degree& p) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        if (p[i] == m[i] || p[j] == m[j]) continue;
        Degree pi = p, pj = p;
        ++pi[i];
        ++pj[j];
        f.spec.add_square(edge[{p, i}], edge[{pi, j}], edge[{p, j}], edge[{pj, i}]);
      }
  });
  return f;
}

/// The cycle C_L: edge e_i from v_{i+1} to v_i.
inline Fixture cycle(std::size_t L) {
  Fixture f;
  f.name = "cycle";
  f.spec.rank = 1;
  for (std::size_t i = 0; i < L; ++i) f.spec.add_vertex("v" + std::to_string(i));
  for (std::size_t i = 0; i < L; ++i)
    f.spec.add_edge("e" + std::to_string(i), VertexId(static_cast<std::uint32_t>((i + 1) % L)),
                    VertexId(static_cast<std::uint32_t>(i)), 0);
  return f;
}

inline Fixture single_loop() {
  Fixture f;
  f.name = "single-loop";
  f.spec.rank = 1;
  auto v = f.spec.add_vertex("v");
  f.spec.add_edge("l", v, v, 0);
  return f;
}

/// One vertex, one loop of each colour.
inline Fixture torus2() {
  Fixture f;
  f.name = "torus2";
  f.spec.rank = 2;
  auto v = f.spec.add_vertex("v");
  auto a = f.spec.add_edge("a", v, v, 0);
  auto b = f.spec.add_edge("b", v, v, 1);
  f.spec.add_square(a, b, b, a);
  return f;
}

/// u <-e- v.
inline Fixture single_edge() {
  Fixture f;
  f.name = "single-edge";
  f.spec.rank = 1;
  auto u = f.spec.add_vertex("u");
  auto v = f.spec.add_vertex("v");
  f.spec.add_edge("e", v, u, 0);
  return f;
}

inline Fixture two_loops() {
  Fixture f;
  f.name = "two-loops";
  f.spec.rank = 1;
  auto a = f.spec.add_vertex("a");
  auto b = f.spec.add_vertex("b");
  f.spec.add_edge("la", a, a, 0);
  f.spec.add_edge("lb", b, b, 0);
  return f;
}

/// A loop at a entered by an edge from b.
inline Fixture loop_with_entry() {
  Fixture f;
  f.name = "loop-with-entry";
  f.spec.rank = 1;
  auto a = f.spec.add_vertex("a");
  auto b = f.spec.add_vertex("b");
  f.spec.add_edge("l", a, a, 0);
  f.spec.add_edge("f", b, a, 0);
  return f;
}

/// C_2 and C_3 side by side.
inline Fixture two_components() {
  Fixture f;
  f.name = "two-components";
  f.spec.rank = 1;
  for (std::size_t i = 0; i < 2; ++i) f.spec.add_vertex("a" + std::to_string(i));
  for (std::size_t i = 0; i < 3; ++i) f.spec.add_vertex("b" + std::to_string(i));
  for (std::uint32_t i = 0; i < 2; ++i)
    f.spec.add_edge("ea" + std::to_string(i), VertexId((i + 1) % 2), VertexId(i), 0);
  for (std::uint32_t i = 0; i < 3; ++i)
    f.spec.add_edge("eb" + std::to_string(i), VertexId(2 + (i + 1) % 3), VertexId(2 + i), 0);
  return f;
}

/// Two edges of different colours into v whose sources are dead in the
/// other colour.
inline Fixture not_locally_convex() {
  Fixture f;
  f.name = "not-locally-convex";
  f.spec.rank = 2;
  auto v = f.spec.add_vertex("v");
  auto a = f.spec.add_vertex("a");
  auto b = f.spec.add_vertex("b");
  f.spec.add_edge("f", a, v, 0);
  f.spec.add_edge("g", b, v, 1);
  return f;
}

/// One vertex, two loops of each colour, squares a_x b_y = b_x a_y.
inline Fixture parallel_squares() {
  Fixture f;
  f.name = "parallel-squares";
  f.spec.rank = 2;
  auto v = f.spec.add_vertex("v");
  EdgeId a[2], b[2];
  for (int i = 0; i < 2; ++i) a[i] = f.spec.add_edge("a" + std::to_string(i), v, v, 0);
  for (int i = 0; i < 2; ++i) b[i] = f.spec.add_edge("b" + std::to_string(i), v, v, 1);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) f.spec.add_square(a[x], b[y], b[x], a[y]);
  return f;
}

/// A complete but non-associative rank-3 presentation: c0.b0.a1 resolves
/// differently along the two swap routes.
inline Fixture twisted_cube() {
  Fixture f;
  f.name = "twisted-cube";
  f.spec.rank = 3;
  auto v = f.spec.add_vertex("v");
  EdgeId a[2], b[2], c[2];
  for (int i = 0; i < 2; ++i) a[i] = f.spec.add_edge("a" + std::to_string(i), v, v, 0);
  for (int i = 0; i < 2; ++i) b[i] = f.spec.add_edge("b" + std::to_string(i), v, v, 1);
  for (int i = 0; i < 2; ++i) c[i] = f.spec.add_edge("c" + std::to_string(i), v, v, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      f.spec.add_square(a[x], b[y], b[x], a[y]);
      f.spec.add_square(a[x], c[y], c[y], a[x]);
      f.spec.add_square(b[x], c[y], c[x], b[y]);
    }
  return f;
}

/// The first N columns of the two-row ladder with loops at w and x. The last
/// column gets colour-1 loops in place of the rest of the ladder; those two
/// vertices form the truncation frontier. v is the bottom-left vertex.
inline Fixture figure1(std::size_t N) {
  if (N < 2) throw PreconditionFailed("figure1 needs at least two columns");
  Fixture f;
  f.name = "figure1";
  f.spec.rank = 2;
  std::vector<VertexId> bot, top;
  for (std::size_t i = 0; i < N; ++i) bot.push_back(f.spec.add_vertex(i == 0 ? "v" : "b" + std::to_string(i)));
  for (std::size_t i = 0; i < N; ++i) top.push_back(f.spec.add_vertex("t" + std::to_string(i)));
  auto w = f.spec.add_vertex("w");
  auto x = f.spec.add_vertex("x");
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t next = i + 1 < N ? i + 1 : i;
    f.spec.add_edge("r" + std::to_string(i), bot[next], bot[i], 0);
    f.spec.add_edge("u" + std::to_string(i), top[next], top[i], 0);
  }
  f.spec.add_edge("lw", w, w, 0);
  f.spec.add_edge("lx", x, x, 0);
  for (std::size_t i = 0; i < N; ++i) {
    f.spec.add_edge("d" + std::to_string(i), top[i], bot[i], 1);
    f.spec.add_edge("p" + std::to_string(i), w, top[i], 1);
    f.spec.add_edge("q" + std::to_string(i), x, bot[i], 1);
  }
  detail::complete_squares(f.spec);
  f.truncation_frontier = {f.spec.vertices[idx(bot[N - 1])], f.spec.vertices[idx(top[N - 1])]};
  return f;
}

struct Entry {
  std::string name;
  std::string args;  // usage of the numeric arguments
  std::string summary;
};

inline const std::vector<Entry>& catalogue() {
  static const std::vector<Entry> list = {
      {"omega", "k m1 .. mk", "the grid Omega_{k,m}"},
      {"cycle", "L", "the directed cycle C_L"},
      {"torus2", "", "one vertex with a loop of each colour"},
      {"single-edge", "", "u <- v"},
      {"two-loops", "", "two disjoint loops"},
      {"figure1", "N", "N-column truncation of the two-row ladder"},
      {"single-loop", "", "one vertex, one loop"},
      {"loop-with-entry", "", "a loop entered from a dead end"},
      {"two-components", "", "C_2 and C_3 side by side"},
      {"not-locally-convex", "", "two colours meeting at a dead corner"},
      {"parallel-squares", "", "one vertex, two loops per colour, flipped squares"},
      {"twisted-cube", "", "complete but non-associative rank-3 presentation"},
  };
  return list;
}

/// Looks a fixture up by name; numeric arguments as in catalogue().
inline Fixture make(const std::string& name, const std::vector<std::uint32_t>& args = {}) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw PreconditionFailed("fixture " + name + " takes " + std::to_string(n) + " argument(s)");
  };
  if (name == "omega") {
    if (args.empty() || args[0] == 0 || args[0] > kMaxRank || args.size() != args[0] + 1u)
      throw PreconditionFailed("fixture omega takes k followed by k extents");
    Degree m(args[0]);
    for (std::size_t c = 0; c < args[0]; ++c) m[c] = args[c + 1];
    return omega(args[0], m);
  }
  if (name == "cycle") {
    need(1);
    if (args[0] == 0) throw PreconditionFailed("cycle length must be positive");
    return cycle(args[0]);
  }
  if (name == "figure1") {
    need(1);
    return figure1(args[0]);
  }
  need(0);
  if (name == "torus2") return torus2();
  if (name == "single-edge") return single_edge();
  if (name == "two-loops") return two_loops();
  if (name == "single-loop") return single_loop();
  if (name == "loop-with-entry") return loop_with_entry();
  if (name == "two-components") return two_components();
  if (name == "not-locally-convex") return not_locally_convex();
  if (name == "parallel-squares") return parallel_squares();
  if (name == "twisted-cube") return twisted_cube();
  throw UnknownName("unknown fixture '" + name + "'");
}

}  // namespace fixtures
}  // namespace kgraph
