#pragma once

#include <string>
#include <vector>

#include "kgraph/kgraph.hpp"

namespace kgtest {

struct NamedGraph {
  std::string label;
  kgraph::Fixture fixture;
  kgraph::KGraph graph;
};

inline NamedGraph named(const std::string& label, const std::string& name, std::vector<std::uint32_t> args = {}) {
  auto f = kgraph::fixtures::make(name, args);
  auto g = f.build();
  return {label, std::move(f), std::move(g)};
}

/// Every valid, locally convex fixture.
inline const std::vector<NamedGraph>& convex_suite() {
  static const std::vector<NamedGraph> suite = [] {
    std::vector<NamedGraph> s;
    s.push_back(named("omega2_11", "omega", {2, 1, 1}));
    s.push_back(named("omega2_22", "omega", {2, 2, 2}));
    s.push_back(named("cycle1", "cycle", {1}));
    s.push_back(named("cycle2", "cycle", {2}));
    s.push_back(named("cycle3", "cycle", {3}));
    s.push_back(named("cycle5", "cycle", {5}));
    s.push_back(named("torus2", "torus2"));
    s.push_back(named("single_edge", "single-edge"));
    s.push_back(named("two_loops", "two-loops"));
    s.push_back(named("figure1_6", "figure1", {6}));
    s.push_back(named("single_loop", "single-loop"));
    s.push_back(named("loop_with_entry", "loop-with-entry"));
    s.push_back(named("two_components", "two-components"));
    s.push_back(named("parallel_squares", "parallel-squares"));
    return s;
  }();
  return suite;
}

inline kgraph::VertexId vid(std::size_t i) { return kgraph::VertexId{static_cast<std::uint32_t>(i)}; }
inline kgraph::EdgeId eid(std::size_t i) { return kgraph::EdgeId{static_cast<std::uint32_t>(i)}; }

inline kgraph::Degree deg(std::initializer_list<std::uint32_t> xs) {
  kgraph::Degree d(xs.size());
  std::size_t i = 0;
  for (auto x : xs) d[i++] = x;
  return d;
}

/// Every valid Lambda~ morphism with core of degree <= core_box and
/// overshoots <= over in each colour.
inline std::vector<kgraph::MTilde> small_tilde_morphisms(const kgraph::KGraph& g, const kgraph::Degree& core_box,
                                                         std::uint32_t over) {
  using namespace kgraph;
  std::vector<MTilde> out;
  const Degree top = Degree::filled(g.rank(), over);
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    for_each_path_in_box(g, vid(v), core_box, [&](const Path& core) {
      for_each_degree_le(top, [&](const Degree& a) {
        for_each_degree_le(top, [&](const Degree& b) {
          MTilde t{core, a, b};
          if (is_valid(g, t)) out.push_back(std::move(t));
        });
      });
    });
  return out;
}

}  // namespace kgtest
