#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/kgraph.hpp"

namespace kgtest {

struct OneGraph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (source, range)
};

/// Random 1-graph; every vertex receives at most `max_in` edges.
inline OneGraph random_one_graph(std::mt19937_64& rng, std::size_t n, std::size_t max_in) {
  OneGraph g;
  g.vertices = n;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> count(0, max_in);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t k = count(rng);
    for (std::size_t i = 0; i < k; ++i) g.edges.emplace_back(pick(rng), r);
  }
  return g;
}

/// The product of two 1-graphs, with the squares in every (range, source)
/// block matched by a random bijection. Always a locally convex 2-graph.
inline kgraph::SkeletonSpec twisted_product(std::mt19937_64& rng, const OneGraph& a, const OneGraph& b) {
  using namespace kgraph;
  SkeletonSpec s;
  s.rank = 2;
  auto vid = [&](std::size_t x, std::size_t y) { return VertexId{static_cast<std::uint32_t>(x * b.vertices + y)}; };
  for (std::size_t x = 0; x < a.vertices; ++x)
    for (std::size_t y = 0; y < b.vertices; ++y) s.add_vertex("p" + std::to_string(x) + "_" + std::to_string(y));
  std::map<std::pair<std::size_t, std::size_t>, EdgeId> h, v;  // (edge of a, vertex of b), (vertex of a, edge of b)
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    for (std::size_t y = 0; y < b.vertices; ++y)
      h[{i, y}] = s.add_edge("h" + std::to_string(i) + "_" + std::to_string(y), vid(a.edges[i].first, y),
                             vid(a.edges[i].second, y), 0);
  for (std::size_t j = 0; j < b.edges.size(); ++j)
    for (std::size_t x = 0; x < a.vertices; ++x)
      v[{x, j}] = s.add_edge("k" + std::to_string(j) + "_" + std::to_string(x), vid(x, b.edges[j].first),
                             vid(x, b.edges[j].second), 1);
  // Block: range (r1, r2), source (s1, s2); members are pairs (i, j).
  std::map<std::pair<VertexId, VertexId>, std::vector<std::pair<std::size_t, std::size_t>>> blocks;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    for (std::size_t j = 0; j < b.edges.size(); ++j)
      blocks[{vid(a.edges[i].second, b.edges[j].second), vid(a.edges[i].first, b.edges[j].first)}].emplace_back(i, j);
  for (auto& [key, members] : blocks) {
    auto perm = members;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t t = 0; t < members.size(); ++t) {
      auto [i, j] = members[t];
      auto [i2, j2] = perm[t];
      // ascending: h(i, r2) then k(j, s1); descending: k(j2, r1) then h(i2, s2)
      s.add_square(h[{i, b.edges[j].second}], v[{a.edges[i].first, j}], v[{a.edges[i2].second, j2}],
                   h[{i2, b.edges[j2].first}]);
    }
  }
  return s;
}

/// A random validated 2-graph with at most `max_vertices` vertices and
/// edges of both colours.
inline kgraph::KGraph random_two_graph(std::mt19937_64& rng, std::size_t max_vertices = 8, std::size_t max_in = 2) {
  std::uniform_int_distribution<std::size_t> side(1, 4);
  std::size_t n1, n2;
  do {
    n1 = side(rng);
    n2 = side(rng);
  } while (n1 * n2 > max_vertices);
  OneGraph a, b;
  do a = random_one_graph(rng, n1, max_in);
  while (a.edges.empty());
  do b = random_one_graph(rng, n2, max_in);
  while (b.edges.empty());
  return kgraph::validate(twisted_product(rng, a, b));
}

}  // namespace kgtest
