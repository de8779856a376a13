#include <gtest/gtest.h>

#include <random>
#include <set>

#include "kgraph/kgraph.hpp"
#include "support/fixture_suite.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"

using namespace kgraph;
using kgtest::deg;
using kgtest::vid;

namespace {

BoundaryFragment only_fragment(const KGraph& g, const std::string& v, std::uint32_t B) {
  auto f = fragments_from(g, g.vertex(v), B);
  if (f.size() != 1) throw std::runtime_error("expected a single fragment");
  return f.front();
}

}  // namespace

// ---------------------------------------------------------------------------
// Desourcification

TEST(Desource, SingleEdgeExamples) {
  auto g = fixtures::single_edge().build();
  auto x = only_fragment(g, "u", 3);
  auto at_v = only_fragment(g, "v", 3);
  EXPECT_TRUE(equiv_V(g, x, deg({3}), at_v, deg({2})));
  EXPECT_TRUE(equiv_V(g, x, deg({3}), x, deg({3})));
  EXPECT_FALSE(equiv_V(g, x, deg({0}), at_v, deg({0})));
  EXPECT_EQ(canon_vertex(g, x, deg({3})), (VTilde{g.vertex("v"), deg({2})}));
  EXPECT_EQ(canon_vertex(g, x, deg({1})), (VTilde{g.vertex("v"), deg({0})}));

  auto t = canon_morphism(g, x, deg({2}), deg({3}));
  EXPECT_EQ(t.core, vertex_path(g, g.vertex("v")));
  EXPECT_EQ(t.range_overshoot, deg({1}));
  EXPECT_EQ(t.source_overshoot, deg({2}));
  EXPECT_EQ(project(t), vertex_path(g, g.vertex("v")));

  auto whole = canon_morphism(g, x, deg({0}), deg({1}));
  EXPECT_EQ(whole, iota(g, edge_path(g, g.edge("e"))));
  EXPECT_THROW(canon_morphism(g, x, deg({2}), deg({1})), DegreeOutOfRange);
}

TEST(Desource, SingleEdgeComposition) {
  auto g = fixtures::single_edge().build();
  auto x = only_fragment(g, "u", 4);
  auto a = canon_morphism(g, x, deg({1}), deg({2}));
  auto b = canon_morphism(g, x, deg({2}), deg({3}));
  EXPECT_EQ(compose_tilde(g, a, b), canon_morphism(g, x, deg({1}), deg({3})));
  auto e = iota(g, edge_path(g, g.edge("e")));
  MTilde tail{vertex_path(g, g.vertex("v")), deg({0}), deg({1})};
  EXPECT_EQ(compose_tilde(g, e, tail), canon_morphism(g, x, deg({0}), deg({2})));
  EXPECT_EQ(compose_canonical(g, e, tail), compose_tilde(g, e, tail));
  EXPECT_THROW(compose_tilde(g, tail, e), NotComposable);
}

TEST(Desource, RepresentativeIdentity) {
  for (const auto& ng : kgtest::convex_suite()) {
    const auto& g = ng.graph;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      for (const auto& x : fragments_from(g, vid(v), 5))
        for_each_degree_le(Degree::filled(g.rank(), 2), [&](const Degree& m) {
          const Degree n = m + Degree::unit(g.rank(), 0);
          const Degree mx = meet_degree(x, m);
          auto y = shift(g, x, mx);
          EXPECT_TRUE(equiv_P(g, x, m, n, y, m - mx, n - mx)) << ng.label;
          EXPECT_TRUE(meet(m - mx, y.body.degree).is_zero());
          EXPECT_FALSE(equiv_P(g, x, m, n, x, m, n + Degree::unit(g.rank(), 0)));
        });
  }
}

TEST(Desource, EquivalenceRelationsOnSampledTriples) {
  std::mt19937_64 rng(17);
  for (const auto& ng : kgtest::convex_suite()) {
    const auto& g = ng.graph;
    const auto k = g.rank();
    std::vector<BoundaryFragment> pool;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      for (auto& f : fragments_from(g, vid(v), 2)) pool.push_back(std::move(f));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<std::uint32_t> coord(0, 2);
    auto rand_deg = [&] {
      Degree d(k);
      for (std::size_t c = 0; c < k; ++c) d[c] = coord(rng);
      return d;
    };
    std::size_t positives = 0;
    for (int i = 0; i < 10000; ++i) {
      struct Sample {
        BoundaryFragment x;
        Degree m, n;
      };
      auto draw = [&] {
        Degree m = rand_deg();
        Degree n = join(m, rand_deg());
        return Sample{pool[pick(rng)], m, n};
      };
      Sample a = draw(), b = draw(), c = draw();
      const bool ab = equiv_P(g, a.x, a.m, a.n, b.x, b.m, b.n);
      const bool ba = equiv_P(g, b.x, b.m, b.n, a.x, a.m, a.n);
      const bool bc = equiv_P(g, b.x, b.m, b.n, c.x, c.m, c.n);
      const bool ac = equiv_P(g, a.x, a.m, a.n, c.x, c.m, c.n);
      EXPECT_TRUE(equiv_P(g, a.x, a.m, a.n, a.x, a.m, a.n));
      EXPECT_EQ(ab, ba);
      if (ab && bc) EXPECT_TRUE(ac);
      const bool vab = equiv_V(g, a.x, a.m, b.x, b.m);
      EXPECT_EQ(vab, equiv_V(g, b.x, b.m, a.x, a.m));
      if (vab && equiv_V(g, b.x, b.m, c.x, c.m)) EXPECT_TRUE(equiv_V(g, a.x, a.m, c.x, c.m));
      positives += ab;
    }
    EXPECT_GT(positives, 0u) << ng.label;
  }
}

TEST(Desource, RealizeRoundTripAndIndependence) {
  for (const auto& ng : kgtest::convex_suite()) {
    const auto& g = ng.graph;
    for (const auto& t : kgtest::small_tilde_morphisms(g, Degree::filled(g.rank(), 1), 2)) {
      auto rep = realize(g, t, 2);
      EXPECT_EQ(canon_morphism(g, rep.x, rep.m, rep.n), t) << ng.label << " " << to_string(g, t);
      for (const auto& r : realize_all(g, t, 2)) EXPECT_EQ(canon_morphism(g, r.x, r.m, r.n), t);
      EXPECT_EQ(t.degree(), rep.n - rep.m);
    }
  }
}

TEST(Desource, CompositionIndependentOfRepresentatives) {
  for (const auto& ng : kgtest::convex_suite()) {
    const auto& g = ng.graph;
    auto all = kgtest::small_tilde_morphisms(g, Degree::filled(g.rank(), 1), 1);
    std::size_t pairs = 0;
    for (const auto& s : all)
      for (const auto& t : all) {
        if (s.source() != t.range() || pairs > 400) continue;
        ++pairs;
        const MTilde want = compose_canonical(g, s, t);
        EXPECT_EQ(compose_tilde(g, s, t), want);
        for (const auto& rs : realize_all(g, s, 1))
          for (const auto& rt : realize_all(g, t, 1)) EXPECT_EQ(compose_representatives(g, rs, rt), want);
        EXPECT_EQ(project(want), compose(g, project(s), project(t)));
      }
  }
}

TEST(Desource, IotaIsAnInjectiveFunctor) {
  for (const auto& ng : kgtest::convex_suite()) {
    const auto& g = ng.graph;
    std::set<MTilde> images;
    std::size_t count = 0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      for_each_path_in_box(g, vid(v), Degree::filled(g.rank(), 2), [&](const Path& l) {
        ++count;
        images.insert(iota(g, l));
        EXPECT_EQ(project(iota(g, l)), l);
        EXPECT_TRUE(is_valid(g, iota(g, l)));
      });
    EXPECT_EQ(images.size(), count) << ng.label;
  }
}

TEST(Desource, SingleEdgeRegion) {
  auto g = fixtures::single_edge().build();
  auto r = materialize(g, deg({3}));
  EXPECT_EQ(r.graph.num_vertices(), 5u);
  EXPECT_EQ(r.graph.num_edges(), 4u);
  std::set<VTilde> want{{g.vertex("u"), deg({0})},
                        {g.vertex("v"), deg({0})},
                        {g.vertex("v"), deg({1})},
                        {g.vertex("v"), deg({2})},
                        {g.vertex("v"), deg({3})}};
  EXPECT_EQ(std::set<VTilde>(r.vertices.begin(), r.vertices.end()), want);
  auto dot = export_dot(r.graph);
  EXPECT_NE(dot.find("\"v~1\" -> \"v\""), std::string::npos);
}

TEST(Desource, RegionOfSourceFreeGraphIsTheGraph) {
  for (auto g : {fixtures::cycle(3).build(), fixtures::torus2().build(), fixtures::parallel_squares().build()}) {
    auto r = materialize(g, Degree::filled(g.rank(), 3));
    EXPECT_EQ(r.graph.num_vertices(), g.num_vertices());
    EXPECT_EQ(r.graph.num_edges(), g.num_edges());
    EXPECT_EQ(r.graph.spec().squares.size(), g.spec().squares.size());
  }
}

TEST(Desource, Figure1RegionHasTailsOnLoopVertices) {
  auto g = fixtures::figure1(6).build();
  auto r = materialize(g, deg({3, 3}));
  EXPECT_EQ(r.graph.num_vertices(), g.num_vertices() + 6);
  for (const auto& v : r.vertices)
    if (!v.overshoot.is_zero()) {
      const auto& name = g.name(v.base);
      EXPECT_TRUE(name == "w" || name == "x") << name;
    }
}

TEST(Desource, LiftAndProjectSingleEdge) {
  auto g = fixtures::single_edge().build();
  auto x = only_fragment(g, "u", 4);
  auto y = lift_fragment(g, x, deg({0}), deg({3}));
  EXPECT_EQ(y.core, edge_path(g, g.edge("e")));
  EXPECT_EQ(y.source_overshoot, deg({2}));
  auto r = materialize(g, deg({3}));
  auto spine = to_region_path(g, r, y);
  EXPECT_EQ(spine.degree, deg({3}));
  EXPECT_EQ(r.graph.name(spine.source), "v~2");

  MTilde from_tail{vertex_path(g, g.vertex("v")), deg({2}), deg({5})};
  auto proj = project_infinite(g, from_tail);
  EXPECT_EQ(proj.p, deg({2}));
  EXPECT_TRUE(proj.path.body.is_vertex());
  EXPECT_EQ(proj.path.body.range, g.vertex("v"));
}

TEST(Desource, RegionPathsRoundTrip) {
  for (const auto& ng : kgtest::convex_suite()) {
    const auto& g = ng.graph;
    auto r = materialize(g, Degree::filled(g.rank(), 2));
    for (std::size_t v = 0; v < r.graph.num_vertices(); ++v)
      for_each_path_in_box(r.graph, vid(v), Degree::filled(g.rank(), 1), [&](const Path& p) {
        auto t = to_tilde(g, r, p);
        EXPECT_TRUE(is_valid(g, t));
        EXPECT_EQ(to_region_path(g, r, t), p) << ng.label;
      });
  }
}

// ---------------------------------------------------------------------------
// Cofinality

TEST(Cofinality, ExactVerdicts) {
  EXPECT_TRUE(is_cofinal(fixtures::cycle(3).build()).holds());
  EXPECT_TRUE(is_cofinal(fixtures::omega(2, deg({1, 1})).build()).holds());
  EXPECT_TRUE(is_cofinal(fixtures::single_edge().build()).holds());
  EXPECT_TRUE(is_cofinal(fixtures::torus2().build()).holds());
  for (auto g : {fixtures::two_loops().build(), fixtures::loop_with_entry().build(),
                 fixtures::two_components().build(), fixtures::figure1(6).build()}) {
    auto v = is_cofinal(g);
    ASSERT_TRUE(v.violated());
    EXPECT_TRUE(v.exact);
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_TRUE(replay_cofinality_witness(g, *v.witness)) << to_string(g, *v.witness);
  }
}

TEST(Cofinality, ReplayRejectsForgedWitness) {
  auto g = fixtures::two_loops().build();
  auto v = is_cofinal(g);
  ASSERT_TRUE(v.witness.has_value());
  Witness forged = *v.witness;
  forged.vertex = forged.blocks.front().range;
  EXPECT_FALSE(replay_cofinality_witness(g, forged));
}

TEST(Cofinality, BoundedNeverContradictsExactOnRandomGraphs) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 30; ++i) {
    auto g = kgtest::random_two_graph(rng, 6, 1);
    auto exact = is_cofinal(g);
    for (std::uint32_t B = 1; B <= 4; ++B) {
      auto bounded = is_cofinal_bounded(g, B);
      EXPECT_FALSE(contradicts(exact, bounded)) << print(g);
      if (bounded.violated()) EXPECT_TRUE(replay_cofinality_witness(g, *bounded.witness));
    }
  }
}

// ---------------------------------------------------------------------------
// Local periodicity

TEST(Periodicity, Landmarks) {
  auto loop = fixtures::single_loop().build();
  EXPECT_TRUE(has_lp_at(loop, loop.vertex("v"), deg({1}), deg({0}), 6).holds());
  auto c3 = fixtures::cycle(3).build();
  EXPECT_TRUE(has_lp_at(c3, c3.vertex("v0"), deg({3}), deg({0}), 6).holds());
  EXPECT_TRUE(has_lp_at(c3, c3.vertex("v0"), deg({2}), deg({0}), 6).violated());
  auto torus = fixtures::torus2().build();
  EXPECT_TRUE(has_lp_at(torus, torus.vertex("v"), deg({1, 0}), deg({0, 0}), 6).holds());
  auto omega = fixtures::omega(2, deg({1, 1})).build();
  EXPECT_TRUE(find_lp(omega, deg({3, 3}), 6).empty());
}

TEST(Periodicity, ViolationWitnessesReplay) {
  for (const auto& ng : kgtest::convex_suite()) {
    const auto& g = ng.graph;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      detail::for_each_pair_in_box(Degree::filled(g.rank(), 2), [&](const Degree& m, const Degree& n) {
        auto weak = has_lp_at(g, vid(v), m, n, 4);
        if (weak.violated()) EXPECT_TRUE(replay_lp_witness(g, *weak.witness));
        auto strong = strong_lp_check(g, vid(v), m, n, 4);
        if (strong.violated()) EXPECT_TRUE(replay_lp_witness(g, *strong.witness, true));
        if (strong.holds()) EXPECT_TRUE(weak.holds()) << ng.label;
      });
  }
}

TEST(Periodicity, StrongCandidatesFromLp) {
  auto c3 = fixtures::cycle(3).build();
  auto cands = strong_candidates_from_lp(c3, {c3.vertex("v0"), deg({3}), deg({0})});
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands.front().m, deg({3}));
  EXPECT_TRUE(strong_lp_check(c3, cands.front().vertex, cands.front().m, cands.front().n, 6).holds());
  auto loop = fixtures::single_loop().build();
  EXPECT_TRUE(strong_lp_check(loop, loop.vertex("v"), deg({1}), deg({0}), 6).holds());
}

TEST(Periodicity, Preconditions) {
  auto c3 = fixtures::cycle(3).build();
  EXPECT_THROW(has_lp_at(c3, c3.vertex("v0"), deg({1}), deg({1}), 6), PreconditionFailed);
  EXPECT_THROW(has_lp_at(c3, c3.vertex("v0"), deg({7}), deg({0}), 6), DepthTooSmall);
  EXPECT_THROW(find_lp(c3, deg({7}), 6), DepthTooSmall);
  EXPECT_THROW(find_lp(fixtures::not_locally_convex().build(), deg({1, 1}), 2), NotLocallyConvex);
}

TEST(Periodicity, FactorSingleLoop) {
  auto g = fixtures::single_loop().build();
  auto x = only_fragment(g, "v", 6);
  auto f = periodicity_factor(g, deg({1}), deg({0}), x, 6);
  EXPECT_TRUE(f.ok);
  EXPECT_EQ(f.mu, edge_path(g, g.edge("l")));
  EXPECT_TRUE(f.nu.is_vertex());
  EXPECT_TRUE(f.alpha.is_vertex());
  EXPECT_EQ(f.checked, 1u);
  auto c3 = fixtures::cycle(3).build();
  auto y = only_fragment(c3, "v0", 6);
  EXPECT_THROW(periodicity_factor(c3, deg({2}), deg({0}), y, 6), PreconditionFailed);
}

TEST(Periodicity, SimplicityVerdicts) {
  auto omega = simplicity_verdict(fixtures::omega(2, deg({1, 1})).build(), deg({3, 3}), 6);
  EXPECT_TRUE(omega.simple);
  auto c3 = simplicity_verdict(fixtures::cycle(3).build(), deg({3}), 6);
  EXPECT_FALSE(c3.simple);
  EXPECT_TRUE(c3.cofinal.holds());
  EXPECT_TRUE(c3.no_local_periodicity.violated());
  auto two = simplicity_verdict(fixtures::two_loops().build(), deg({3}), 6);
  EXPECT_FALSE(two.simple);
  EXPECT_TRUE(two.cofinal.violated());
}

TEST(Transfer, SingleEdgeTailVertex) {
  auto g = fixtures::single_edge().build();
  auto r = materialize(g, deg({8}));
  auto t = transfer_lp(g, r, r.vertex_index.at({g.vertex("v"), deg({1})}), deg({1}), deg({0}), 6);
  EXPECT_TRUE(t.agree);
  EXPECT_TRUE(t.base.violated());
  EXPECT_THROW(transfer_lp(g, r, r.vertex_index.at({g.vertex("v"), deg({3})}), deg({1}), deg({0}), 6),
               PreconditionFailed);
}

TEST(Transfer, ProjectionBridgeOnRegionFragments) {
  for (const auto& ng : kgtest::convex_suite()) {
    const auto& g = ng.graph;
    const std::uint32_t B = 3;
    auto r = materialize(g, Degree::filled(g.rank(), 2 + B));
    for (std::size_t v = 0; v < r.graph.num_vertices(); ++v) {
      if (!r.has_room(vid(v), B)) continue;
      for (const auto& y : fragments_from(r.graph, vid(v), B))
        detail::for_each_pair_in_box(Degree::filled(g.rank(), 1), [&](const Degree& m, const Degree& n) {
          auto b = projection_bridge(g, r, y, m, n);
          EXPECT_EQ(b.shifts_equal, b.degree_condition && b.projected_shifts_equal) << ng.label;
        });
    }
  }
}

// ---------------------------------------------------------------------------
// Ideals

TEST(Ideals, LatticeMatchesPowerSetOracle) {
  for (const auto& ng : kgtest::convex_suite()) {
    const auto& g = ng.graph;
    if (g.num_vertices() > 12) continue;
    std::set<VertexSet> want;
    for (auto mask : kgtest::oracle_sat_hered_masks(g)) want.insert(VertexSet::from_mask(g.num_vertices(), mask));
    auto got = enumerate_sat_hered(g);
    EXPECT_EQ(std::set<VertexSet>(got.begin(), got.end()), want) << ng.label;
  }
}

TEST(Ideals, SaturationIsAClosureOperator) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto g = kgtest::random_two_graph(rng);
    const auto n = g.num_vertices();
    for (int j = 0; j < 20; ++j) {
      auto S = VertexSet::from_mask(n, rng() & ((1u << n) - 1));
      auto T = S.unite(VertexSet::from_mask(n, rng() & ((1u << n) - 1)));
      auto cS = saturate_hereditary(g, S);
      EXPECT_TRUE(S.subset_of(cS));
      EXPECT_EQ(saturate_hereditary(g, cS), cS);
      EXPECT_TRUE(cS.subset_of(saturate_hereditary(g, T)));
      EXPECT_TRUE(is_saturated_hereditary(g, cS));
    }
  }
}

TEST(Ideals, QuotientsRevalidate) {
  for (const auto& ng : kgtest::convex_suite()) {
    const auto& g = ng.graph;
    for (const auto& H : enumerate_sat_hered(g)) {
      if (H.is_full()) continue;
      auto q = quotient(g, H);
      EXPECT_EQ(q.num_vertices(), g.num_vertices() - H.size());
      EXPECT_TRUE(q.locally_convex());
    }
  }
}

TEST(Ideals, QuotientRejectsNonSaturatedHereditary) {
  auto g = fixtures::loop_with_entry().build();
  VertexSet H(g.num_vertices());
  H.insert(g.vertex("a"));
  EXPECT_FALSE(is_hereditary(g, H).ok);
  EXPECT_THROW(quotient(g, H), NotSaturatedHereditary);
  VertexSet S(g.num_vertices());
  S.insert(g.vertex("b"));
  EXPECT_TRUE(is_hereditary(g, S).ok);
}

TEST(Ideals, GaugeCriterion) {
  auto c3 = gauge_invariance_criterion(fixtures::cycle(3).build(), deg({3}), 6);
  EXPECT_FALSE(c3.all_gauge_invariant);
  ASSERT_TRUE(c3.first_failure.has_value());
  EXPECT_TRUE(c3.entries[*c3.first_failure].H.empty());
  auto omega = gauge_invariance_criterion(fixtures::omega(2, deg({1, 1})).build(), deg({2, 2}), 6);
  EXPECT_TRUE(omega.all_gauge_invariant);
  EXPECT_TRUE(omega.cofinal.holds());
}
