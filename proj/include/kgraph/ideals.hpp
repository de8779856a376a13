#pragma once

// Hereditary and saturated vertex sets, their lattice, quotient graphs
// Lambda \ Lambda H and the gauge-invariance criterion.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/analysis.hpp"
#include "kgraph/graph.hpp"

namespace kgraph {

/// A subset of the vertices of a fixed graph, as a membership vector.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : in_(n, 0) {}
  static VertexSet all(std::size_t n) {
    VertexSet s(n);
    std::fill(s.in_.begin(), s.in_.end(), 1);
    return s;
  }
  static VertexSet from_mask(std::size_t n, std::uint64_t mask) {
    VertexSet s(n);
    for (std::size_t i = 0; i < n; ++i) s.in_[i] = (mask >> i) & 1u;
    return s;
  }

  std::size_t universe() const { return in_.size(); }
  bool contains(VertexId v) const { return in_[idx(v)] != 0; }
  void insert(VertexId v) { in_[idx(v)] = 1; }
  std::size_t size() const { return static_cast<std::size_t>(std::count(in_.begin(), in_.end(), 1)); }
  bool empty() const { return size() == 0; }
  bool is_full() const { return size() == universe(); }

  std::vector<VertexId> members() const {
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < in_.size(); ++i)
      if (in_[i]) out.push_back(VertexId(static_cast<std::uint32_t>(i)));
    return out;
  }
  bool subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < in_.size(); ++i)
      if (in_[i] && !o.in_[i]) return false;
    return true;
  }
  VertexSet unite(const VertexSet& o) const {
    VertexSet r = *this;
    for (std::size_t i = 0; i < in_.size(); ++i) r.in_[i] = in_[i] | o.in_[i];
    return r;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<char> in_;
};

inline std::string to_string(const KGraph& g, const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto v : s.members()) {
    if (!first) out += ",";
    out += g.name(v);
    first = false;
  }
  return out + "}";
}

struct HereditaryCheck {
  bool ok = true;
  std::optional<EdgeId> witness;  // r(e) in H, s(e) not in H
};

inline HereditaryCheck is_hereditary(const KGraph& g, const VertexSet& H) {
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    EdgeId e{static_cast<std::uint32_t>(i)};
    if (H.contains(g.range(e)) && !H.contains(g.source(e))) return {false, e};
  }
  return {};
}

struct SaturationCheck {
  bool ok = true;
  std::optional<std::pair<VertexId, std::size_t>> witness;  // (v, colour)
};

namespace detail {
/// {s(lambda) : lambda in v Lambda^{<=e_c}} is inside H.
inline bool forced_into(const KGraph& g, const VertexSet& H, VertexId v, std::size_t c) {
  auto in = g.edges_into(v, c);
  if (in.empty()) return H.contains(v);
  for (auto e : in)
    if (!H.contains(g.source(e))) return false;
  return true;
}
}  // namespace detail

inline SaturationCheck is_saturated(const KGraph& g, const VertexSet& H) {
  for (std::size_t vi = 0; vi < g.num_vertices(); ++vi) {
    VertexId v{static_cast<std::uint32_t>(vi)};
    if (H.contains(v)) continue;
    for (std::size_t c = 0; c < g.rank(); ++c)
      if (detail::forced_into(g, H, v, c)) return {false, std::make_pair(v, c)};
  }
  return {};
}

inline bool is_saturated_hereditary(const KGraph& g, const VertexSet& H) {
  return is_hereditary(g, H).ok && is_saturated(g, H).ok;
}

/// The smallest saturated hereditary set containing S.
inline VertexSet saturate_hereditary(const KGraph& g, VertexSet S) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      EdgeId e{static_cast<std::uint32_t>(i)};
      if (S.contains(g.range(e)) && !S.contains(g.source(e))) {
        S.insert(g.source(e));
        changed = true;
      }
    }
    if (changed) continue;
    if (auto sat = is_saturated(g, S); !sat.ok) {
      S.insert(sat.witness->first);
      changed = true;
    }
  }
  return S;
}

inline constexpr std::size_t kExhaustiveLatticeVertices = 20;
inline constexpr std::size_t kMaxLatticeSize = 1u << 16;

/// Every saturated hereditary set, ordered by size and then by membership.
/// Up to 20 vertices the power set is filtered; beyond that the lattice is
/// generated by joins of the closures of single vertices.
inline std::vector<VertexSet> enumerate_sat_hered(const KGraph& g) {
  const std::size_t n = g.num_vertices();
  std::set<VertexSet> found;
  if (n <= kExhaustiveLatticeVertices) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      auto H = VertexSet::from_mask(n, mask);
      if (is_saturated_hereditary(g, H)) found.insert(std::move(H));
    }
  } else {
    std::vector<VertexSet> principal;
    for (std::size_t v = 0; v < n; ++v) {
      VertexSet s(n);
      s.insert(VertexId(static_cast<std::uint32_t>(v)));
      principal.push_back(saturate_hereditary(g, std::move(s)));
    }
    found.insert(saturate_hereditary(g, VertexSet(n)));
    std::vector<VertexSet> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
      std::vector<VertexSet> next;
      for (const auto& H : frontier)
        for (const auto& P : principal) {
          if (P.subset_of(H)) continue;
          auto J = saturate_hereditary(g, H.unite(P));
          if (found.insert(J).second) {
            if (found.size() > kMaxLatticeSize)
              throw TooLarge("more than " + std::to_string(kMaxLatticeSize) +
                             " saturated hereditary sets");
            next.push_back(std::move(J));
          }
        }
      frontier = std::move(next);
    }
  }
  std::vector<VertexSet> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

/// Lambda \ Lambda H: the morphisms whose source avoids H, presented and
/// revalidated as a k-graph.
inline KGraph quotient(const KGraph& g, const VertexSet& H) {
  if (auto h = is_hereditary(g, H); !h.ok)
    throw NotSaturatedHereditary(to_string(g, H) + " is not hereditary: edge " + g.name(*h.witness));
  if (auto s = is_saturated(g, H); !s.ok)
    throw NotSaturatedHereditary(to_string(g, H) + " is not saturated at " +
                                 g.name(s.witness->first) + " in colour " +
                                 std::to_string(s.witness->second + 1));
  SkeletonSpec spec;
  spec.rank = g.rank();
  std::vector<std::optional<VertexId>> vmap(g.num_vertices());
  std::vector<std::optional<EdgeId>> emap(g.num_edges());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    VertexId vv{static_cast<std::uint32_t>(v)};
    if (!H.contains(vv)) vmap[v] = spec.add_vertex(g.name(vv));
  }
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    EdgeId e{static_cast<std::uint32_t>(i)};
    if (H.contains(g.source(e))) continue;
    emap[i] = spec.add_edge(g.name(e), *vmap[idx(g.source(e))], *vmap[idx(g.range(e))], g.color(e));
  }
  for (const auto& sq : g.spec().squares) {
    auto a = emap[idx(sq.left_outer)], b = emap[idx(sq.left_inner)];
    auto c = emap[idx(sq.right_outer)], d = emap[idx(sq.right_inner)];
    if (a && b && c && d) spec.add_square(*a, *b, *c, *d);
  }
  KGraph q = validate(std::move(spec));
  if (g.locally_convex() && !q.locally_convex())
    throw InvariantBreach("quotient by " + to_string(g, H) + " is not locally convex");
  return q;
}

struct GaugeEntry {
  VertexSet H;
  KGraph quotient;
  std::vector<LpCandidate> lp;  // vertex ids refer to `quotient`
};

struct GaugeReport {
  Verdict cofinal;  // of the whole graph
  std::vector<GaugeEntry> entries;
  Degree box;
  std::uint32_t depth = 0;
  bool all_gauge_invariant = true;
  std::optional<std::size_t> first_failure;  // index into entries
};

/// Runs find_lp on every proper quotient Lambda \ Lambda H.
inline GaugeReport gauge_invariance_criterion(const KGraph& g, const Degree& M, std::uint32_t B) {
  detail::require_convex(g);
  GaugeReport r;
  r.box = M;
  r.depth = B;
  r.cofinal = is_cofinal(g);
  for (auto& H : enumerate_sat_hered(g)) {
    if (H.is_full()) continue;
    KGraph q = quotient(g, H);
    auto lp = find_lp(q, M, B);
    if (!lp.empty() && r.all_gauge_invariant) {
      r.all_gauge_invariant = false;
      r.first_failure = r.entries.size();
    }
    r.entries.push_back({std::move(H), std::move(q), std::move(lp)});
  }
  return r;
}

}  // namespace kgraph
