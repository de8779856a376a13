#pragma once

// Cofinality, local periodicity and simplicity verdicts.
//
// Cofinality is decided exactly. Local periodicity is evaluated on
// boundary fragments of a fixed depth B and is three-valued: Violated
// verdicts carry a fragment on which the relations provably fail; Holds
// only ever means "holds on every fragment of depth B".

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/boundary.hpp"
#include "kgraph/degree.hpp"
#include "kgraph/desource.hpp"
#include "kgraph/enumerate.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/path.hpp"

namespace kgraph {

enum class Status { Holds, Violated, UnknownAtDepth };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Violated: return "Violated";
    case Status::UnknownAtDepth: return "UnknownAtDepth";
  }
  return "?";
}

struct Witness {
  std::optional<VertexId> vertex;
  std::vector<Degree> degrees;
  /// Cofinality: a chain of blocks in Lambda^{<=1}. blocks[cycle_start..]
  /// repeat forever; when cycle_start == blocks.size() the chain ends at a
  /// vertex with no edges at all.
  std::vector<Path> blocks;
  std::size_t cycle_start = 0;
  std::optional<BoundaryFragment> fragment;
  std::string note;
};

struct Verdict {
  Status status = Status::UnknownAtDepth;
  bool exact = false;
  std::uint32_t depth = 0;
  std::optional<Witness> witness;

  bool holds() const { return status == Status::Holds; }
  bool violated() const { return status == Status::Violated; }
};

inline std::string to_string(const KGraph& g, const Witness& w) {
  std::string s;
  auto add = [&](const std::string& part) {
    if (!s.empty()) s += "; ";
    s += part;
  };
  if (w.vertex) add("vertex " + g.name(*w.vertex));
  if (!w.degrees.empty()) {
    std::string d = "degrees";
    for (const auto& x : w.degrees) d += " " + x.to_string();
    add(d);
  }
  if (!w.blocks.empty() || w.cycle_start > 0) {
    std::string b = "blocks";
    for (std::size_t i = 0; i < w.blocks.size(); ++i) {
      if (i == w.cycle_start) b += " (";
      b += " " + to_string(g, w.blocks[i]);
    }
    b += w.cycle_start < w.blocks.size() ? " )*" : " |end";
    add(b);
  }
  if (w.fragment) add("fragment " + to_string(g, *w.fragment));
  if (!w.note.empty()) add(w.note);
  return s;
}

// ---------------------------------------------------------------------------
// Cofinality

namespace detail {

/// R_v = {w : v Lambda w != empty}.
inline std::vector<char> reaching_set(const KGraph& g, VertexId v) {
  std::vector<char> r(g.num_vertices(), 0);
  for (std::size_t w = 0; w < g.num_vertices(); ++w)
    r[w] = g.reaches(VertexId(static_cast<std::uint32_t>(w)), v) ? 1 : 0;
  return r;
}

struct Block {
  Path path;
  std::vector<VertexId> visited;
};

inline std::vector<std::vector<Block>> all_blocks(const KGraph& g) {
  std::vector<std::vector<Block>> out(g.num_vertices());
  const Degree one = Degree::filled(g.rank(), 1);
  for (std::size_t w = 0; w < g.num_vertices(); ++w) {
    for (auto& p : paths_le(g, VertexId(static_cast<std::uint32_t>(w)), one)) {
      auto seen = visited_vertices(g, p);
      out[w].push_back({std::move(p), {seen.begin(), seen.end()}});
    }
  }
  return out;
}

/// Diagonal blocks x(j1 ^ d, (j+1)1 ^ d) of a fragment body, j < B.
inline std::vector<Path> diagonal_blocks(const KGraph& g, const BoundaryFragment& f, std::uint32_t B) {
  std::vector<Path> out;
  for (std::uint32_t j = 0; j < B; ++j) {
    Degree lo = meet(Degree::filled(g.rank(), j), f.body.degree);
    Degree hi = meet(Degree::filled(g.rank(), j + 1), f.body.degree);
    out.push_back(segment(g, f.body, lo, hi));
  }
  return out;
}

}  // namespace detail

/// Exact cofinality: for each v, the greatest S inside the complement of R_v
/// in which every vertex starts a Lambda^{<=1} block staying in S.
inline Verdict is_cofinal(const KGraph& g) {
  detail::require_convex(g);
  const auto blocks = detail::all_blocks(g);
  const std::size_t nv = g.num_vertices();
  for (std::size_t vi = 0; vi < nv; ++vi) {
    VertexId v{static_cast<std::uint32_t>(vi)};
    auto reach = detail::reaching_set(g, v);
    std::vector<char> in_s(nv);
    for (std::size_t w = 0; w < nv; ++w) in_s[w] = !reach[w];
    auto block_ok = [&](const detail::Block& b) {
      for (auto u : b.visited)
        if (!in_s[idx(u)]) return false;
      return true;
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t w = 0; w < nv; ++w) {
        if (!in_s[w]) continue;
        bool keep = false;
        for (const auto& b : blocks[w])
          if (block_ok(b)) {
            keep = true;
            break;
          }
        if (!keep) {
          in_s[w] = 0;
          changed = true;
        }
      }
    }
    std::size_t start = 0;
    while (start < nv && !in_s[start]) ++start;
    if (start == nv) continue;

    Witness wit;
    wit.vertex = v;
    std::vector<std::size_t> position(nv, SIZE_MAX);
    std::size_t at = start;
    while (position[at] == SIZE_MAX) {
      position[at] = wit.blocks.size();
      const detail::Block* chosen = nullptr;
      for (const auto& b : blocks[at])
        if (block_ok(b)) {
          chosen = &b;
          break;
        }
      if (chosen->path.is_vertex()) {
        if (wit.blocks.empty()) wit.blocks.push_back(chosen->path);
        wit.cycle_start = wit.blocks.size();
        break;
      }
      wit.blocks.push_back(chosen->path);
      at = idx(chosen->path.source);
      wit.cycle_start = position[at];
    }
    wit.note = "boundary path avoiding every vertex that reaches " + g.name(v);
    return {Status::Violated, true, 0, std::move(wit)};
  }
  return {Status::Holds, true, 0, std::nullopt};
}

/// Checks a cofinality witness against the definition: the blocks lie in
/// Lambda^{<=1}, compose, close up (or stop at a vertex with no edges) and
/// never meet R_v.
inline bool replay_cofinality_witness(const KGraph& g, const Witness& w) {
  if (!w.vertex) return false;
  const auto reach = detail::reaching_set(g, *w.vertex);
  const Degree one = Degree::filled(g.rank(), 1);
  if (w.blocks.empty()) return false;
  for (std::size_t i = 0; i < w.blocks.size(); ++i) {
    const auto& b = w.blocks[i];
    if (!in_le(g, b, one)) return false;
    if (i + 1 < w.blocks.size() && b.source != w.blocks[i + 1].range) return false;
    for (auto u : visited_vertices(g, b))
      if (reach[idx(u)]) return false;
  }
  const auto end = w.blocks.back().source;
  if (w.cycle_start == w.blocks.size()) return g.alive_mask(end) == 0;
  return w.cycle_start < w.blocks.size() && w.blocks[w.cycle_start].range == end;
}

/// Cofinality on depth-B fragments. A fragment avoiding R_v certifies a
/// violation when it is a complete boundary path or when its diagonal
/// vertices x(j1 ^ d) repeat (the blocks between the repeats loop forever).
/// `start` restricts the vertices fragments are drawn from; with a filter a
/// Holds verdict is no longer exact.
inline Verdict is_cofinal_bounded(const KGraph& g, std::uint32_t B,
                                  const std::function<bool(VertexId)>& start = {}) {
  detail::require_convex(g);
  const std::size_t nv = g.num_vertices();
  std::vector<std::vector<BoundaryFragment>> frags(nv);
  std::vector<std::vector<std::vector<VertexId>>> diag(nv);
  for (std::size_t u = 0; u < nv; ++u) {
    VertexId uu{static_cast<std::uint32_t>(u)};
    if (start && !start(uu)) continue;
    frags[u] = fragments_from(g, uu, B);
    for (const auto& f : frags[u]) {
      std::vector<VertexId> d;
      for (std::uint32_t j = 0; j <= B; ++j)
        d.push_back(vertex_at(g, f.body, meet(Degree::filled(g.rank(), j), f.body.degree)));
      diag[u].push_back(std::move(d));
    }
  }
  bool unknown = false;
  for (std::size_t vi = 0; vi < nv; ++vi) {
    VertexId v{static_cast<std::uint32_t>(vi)};
    const auto reach = detail::reaching_set(g, v);
    for (std::size_t u = 0; u < nv; ++u) {
      for (std::size_t fi = 0; fi < frags[u].size(); ++fi) {
        const auto& d = diag[u][fi];
        bool meets = false;
        for (auto x : d) meets = meets || reach[idx(x)];
        if (meets) continue;
        const auto& f = frags[u][fi];
        auto blocks = detail::diagonal_blocks(g, f, B);
        std::optional<Witness> wit;
        if (f.complete()) {
          Witness w;
          w.vertex = v;
          for (auto& b : blocks)
            if (!b.is_vertex()) w.blocks.push_back(std::move(b));
          if (w.blocks.empty()) w.blocks.push_back(vertex_path(g, f.body.range));
          w.cycle_start = w.blocks.size();
          wit = std::move(w);
        } else {
          for (std::uint32_t j = 1; j <= B && !wit; ++j)
            for (std::uint32_t i = 0; i < j && !wit; ++i)
              if (d[i] == d[j]) {
                Witness w;
                w.vertex = v;
                w.blocks.assign(blocks.begin(), blocks.begin() + j);
                w.cycle_start = i;
                wit = std::move(w);
              }
        }
        if (!wit) {
          unknown = true;
          continue;
        }
        wit->fragment = f;
        wit->note = "fragment avoids every vertex that reaches " + g.name(v);
        return {Status::Violated, true, B, std::move(wit)};
      }
    }
  }
  if (unknown) return {Status::UnknownAtDepth, false, B, std::nullopt};
  return {Status::Holds, !start, B, std::nullopt};
}

// ---------------------------------------------------------------------------
// Local periodicity

struct LpCandidate {
  VertexId vertex{};
  Degree m;
  Degree n;

  friend bool operator==(const LpCandidate&, const LpCandidate&) = default;
  friend auto operator<=>(const LpCandidate&, const LpCandidate&) = default;
};

using FragmentFilter = std::function<bool(const BoundaryFragment&)>;

namespace detail {

inline void require_depth(const Degree& m, const Degree& n, std::uint32_t B) {
  if (m == n) throw PreconditionFailed("periodicity pair needs m != n");
  if (join(m, n).max_coord() > B)
    throw DepthTooSmall("depth " + std::to_string(B) + " below max coordinate of " +
                        join(m, n).to_string());
}

/// The relations at one fragment; returns the failure reason, if any.
/// Shifted tails are compared on the box B1 - (m v n), which every
/// fragment of depth B determines.
inline std::optional<std::string> lp_failure(const KGraph& g, const BoundaryFragment& x,
                                             const Degree& m, const Degree& n) {
  const Degree mx = meet_degree(x, m);
  const Degree nx = meet_degree(x, n);
  if (m - mx != n - nx)
    return "m - m^d(x) = " + (m - mx).to_string() + " but n - n^d(x) = " + (n - nx).to_string();
  const Degree box = x.depth - join(m, n);
  if (!fragment_eq(g, shift(g, x, mx), shift(g, x, nx), box))
    return "sigma^" + mx.to_string() + "(x) != sigma^" + nx.to_string() + "(x)";
  return std::nullopt;
}

inline std::optional<std::string> strong_failure(const KGraph& g, const BoundaryFragment& x,
                                                 const Degree& p, const Degree& q) {
  const Degree top = join(p, q);
  for (std::size_t c = 0; c < g.rank(); ++c)
    if (!x.alive(c) && x.body.degree[c] < top[c])
      return "d(x) = " + x.body.degree.to_string() + " does not dominate " + top.to_string();
  return lp_failure(g, x, p, q);
}

inline Verdict fragment_verdict(const KGraph& g, VertexId v, const Degree& m, const Degree& n,
                                std::uint32_t B, const std::vector<BoundaryFragment>& frags,
                                const FragmentFilter& filter, bool strong) {
  for (const auto& x : frags) {
    if (filter && !filter(x)) continue;
    auto why = strong ? strong_failure(g, x, m, n) : lp_failure(g, x, m, n);
    if (why) {
      Witness w;
      w.vertex = v;
      w.degrees = {m, n};
      w.fragment = x;
      w.note = *why;
      return {Status::Violated, true, B, std::move(w)};
    }
  }
  return {Status::Holds, false, B, std::nullopt};
}

template <typename F>
void for_each_pair_in_box(const Degree& M, F&& f) {
  std::vector<Degree> box;
  for_each_degree_le(M, [&](const Degree& d) { box.push_back(d); });
  for (const auto& m : box)
    for (const auto& n : box)
      if (n < m) f(m, n);
}

}  // namespace detail

/// Local periodicity m, n at v on every depth-B fragment (optionally only
/// those accepted by `filter`).
inline Verdict has_lp_at(const KGraph& g, VertexId v, const Degree& m, const Degree& n,
                         std::uint32_t B, const FragmentFilter& filter = {}) {
  detail::require_depth(m, n, B);
  return detail::fragment_verdict(g, v, m, n, B, fragments_from(g, v, B), filter, false);
}

/// For every x in w Lambda^{<=inf}: p, q <= d(x) and sigma^p(x) = sigma^q(x),
/// on depth-B fragments.
inline Verdict strong_lp_check(const KGraph& g, VertexId w, const Degree& p, const Degree& q,
                               std::uint32_t B, const FragmentFilter& filter = {}) {
  detail::require_depth(p, q, B);
  return detail::fragment_verdict(g, w, p, q, B, fragments_from(g, w, B), filter, true);
}

/// Re-evaluates the relations on the witness fragment.
inline bool replay_lp_witness(const KGraph& g, const Witness& w, bool strong = false) {
  if (!w.vertex || !w.fragment || w.degrees.size() != 2) return false;
  const auto& x = *w.fragment;
  if (x.body.range != *w.vertex || !in_le(g, x.body, x.depth)) return false;
  if (x.frontier != g.alive_mask(x.body.source)) return false;
  auto why = strong ? detail::strong_failure(g, x, w.degrees[0], w.degrees[1])
                    : detail::lp_failure(g, x, w.degrees[0], w.degrees[1]);
  return why.has_value();
}

namespace detail {

inline std::vector<LpCandidate> search_box(const KGraph& g, const Degree& M, std::uint32_t B,
                                           const FragmentFilter& filter, bool strong) {
  detail::require_convex(g);
  if (M.max_coord() > B)
    throw DepthTooSmall("depth " + std::to_string(B) + " below search box " + M.to_string());
  std::vector<LpCandidate> out;
  for (std::size_t vi = 0; vi < g.num_vertices(); ++vi) {
    VertexId v{static_cast<std::uint32_t>(vi)};
    const auto frags = fragments_from(g, v, B);
    for_each_pair_in_box(M, [&](const Degree& m, const Degree& n) {
      if (fragment_verdict(g, v, m, n, B, frags, filter, strong).holds()) out.push_back({v, m, n});
    });
  }
  return out;
}

}  // namespace detail

/// Every (v, m, n) with n <lex m <= M surviving has_lp_at at depth B.
inline std::vector<LpCandidate> find_lp(const KGraph& g, const Degree& M, std::uint32_t B,
                                        const FragmentFilter& filter = {}) {
  return detail::search_box(g, M, B, filter, false);
}

/// Every (w, p, q) with q <lex p <= M surviving strong_lp_check at depth B.
inline std::vector<LpCandidate> find_strong_lp(const KGraph& g, const Degree& M, std::uint32_t B,
                                               const FragmentFilter& filter = {}) {
  return detail::search_box(g, M, B, filter, true);
}

/// From an LP pair (m, n) at v: (s(lambda), m - m^n, n - m^n) for lambda in
/// v Lambda^{<= m^n}.
inline std::vector<LpCandidate> strong_candidates_from_lp(const KGraph& g, const LpCandidate& c) {
  const Degree mn = meet(c.m, c.n);
  std::set<LpCandidate> out;
  for (const auto& lambda : paths_le(g, c.vertex, mn)) out.insert({lambda.source, c.m - mn, c.n - mn});
  return {out.begin(), out.end()};
}

struct SimplicityReport {
  Verdict cofinal;                  // exact
  Verdict no_local_periodicity;     // depth-qualified
  std::vector<LpCandidate> lp_candidates;
  Degree box;
  std::uint32_t depth = 0;
  bool simple = false;
};

inline Witness lp_witness(const LpCandidate& c) {
  Witness w;
  w.vertex = c.vertex;
  w.degrees = {c.m, c.n};
  w.note = "local periodicity survives every fragment of the search depth";
  return w;
}

inline SimplicityReport simplicity_verdict(const KGraph& g, const Degree& M, std::uint32_t B) {
  SimplicityReport r;
  r.box = M;
  r.depth = B;
  r.cofinal = is_cofinal(g);
  r.lp_candidates = find_lp(g, M, B);
  if (r.lp_candidates.empty()) {
    r.no_local_periodicity = {Status::Holds, false, B, std::nullopt};
  } else {
    r.no_local_periodicity = {Status::Violated, false, B, lp_witness(r.lp_candidates.front())};
  }
  r.simple = r.cofinal.holds() && r.lp_candidates.empty();
  return r;
}

// ---------------------------------------------------------------------------
// Periodicity factorisation

struct PeriodicityFactor {
  Path mu, alpha, nu;
  std::size_t checked = 0;
  bool ok = true;
};

/// mu = x(0, m^d(x)), alpha = x(m^d(x), (m v n)^d(x)), nu = x(0, n^d(x)),
/// checked against mu alpha y = nu alpha y for every depth-B fragment y from
/// s(alpha).
inline PeriodicityFactor periodicity_factor(const KGraph& g, const Degree& m, const Degree& n,
                                            const BoundaryFragment& x, std::uint32_t B) {
  if (auto why = detail::lp_failure(g, x, m, n))
    throw PreconditionFailed("relations fail on x: " + *why);
  const Degree zero = Degree::zero(g.rank());
  const Degree mx = meet_degree(x, m), nx = meet_degree(x, n), jx = meet_degree(x, join(m, n));
  PeriodicityFactor r{segment(g, x.body, zero, mx), segment(g, x.body, mx, jx),
                      segment(g, x.body, zero, nx)};
  if (r.mu.degree == r.nu.degree) {
    r.ok = false;
    return r;
  }
  if (r.nu.source != r.alpha.range) {
    r.ok = false;
    return r;
  }
  const Path left = compose(g, r.mu, r.alpha);
  const Path right = compose(g, r.nu, r.alpha);
  for (const auto& y : fragments_from(g, r.alpha.source, B)) {
    auto a = prepend(g, left, y);
    auto b = prepend(g, right, y);
    ++r.checked;
    const std::uint32_t cap = std::max(a.depth.max_coord(), b.depth.max_coord());
    if (!fragment_eq(g, a, b, common_determined_depth(a, b, cap))) r.ok = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Transfer between Lambda and Lambda~

struct CofinalTransfer {
  Verdict base;    // exact, on Lambda
  Verdict region;  // bounded, on the materialised region
  std::size_t region_vertices = 0;
  bool contradiction = false;
};

inline bool contradicts(const Verdict& a, const Verdict& b) {
  return (a.holds() && b.violated()) || (a.violated() && b.holds());
}

/// Exact cofinality of Lambda against bounded cofinality of the region of
/// Lambda~ with overshoots up to M + B1, fragments drawn from vertices with
/// overshoot <= M.
inline CofinalTransfer transfer_cofinal(const KGraph& g, const Degree& M, std::uint32_t B) {
  CofinalTransfer t;
  t.base = is_cofinal(g);
  const Region r = materialize(g, M + Degree::filled(g.rank(), B));
  t.region_vertices = r.graph.num_vertices();
  t.region = is_cofinal_bounded(r.graph, B, [&](VertexId v) { return r.has_room(v, B); });
  t.contradiction = contradicts(t.base, t.region);
  return t;
}

struct LpTransfer {
  Verdict region;  // at v~ in Lambda~
  Verdict base;    // at pi(v~) in Lambda
  bool agree = false;
};

/// has_lp_at on the region at v~ against has_lp_at on Lambda at pi(v~).
inline LpTransfer transfer_lp(const KGraph& g, const Region& r, VertexId v_tilde, const Degree& m,
                              const Degree& n, std::uint32_t B) {
  if (!r.has_room(v_tilde, B))
    throw PreconditionFailed("vertex " + r.graph.name(v_tilde) + " too close to the region boundary");
  LpTransfer t;
  t.region = has_lp_at(r.graph, v_tilde, m, n, B);
  t.base = has_lp_at(g, r.vertices[idx(v_tilde)].base, m, n, B);
  t.agree = t.region.status == t.base.status;
  return t;
}

/// The projection side of the transfer for a single region fragment y:
/// sigma^m(y) = sigma^n(y) on the box B1 - (m v n) iff (a) and (b) hold for
/// pi(y).
struct ProjectionBridge {
  bool shifts_equal = false;  // sigma^m(y) = sigma^n(y) on the box
  bool degree_condition = false;
  bool projected_shifts_equal = false;
};

inline ProjectionBridge projection_bridge(const KGraph& g, const Region& r, const BoundaryFragment& y,
                                          const Degree& m, const Degree& n) {
  ProjectionBridge b;
  const Degree box = y.depth - join(m, n);
  const MTilde ym = to_tilde(g, r, segment(r.graph, y.body, m, m + box));
  const MTilde yn = to_tilde(g, r, segment(r.graph, y.body, n, n + box));
  b.shifts_equal = ym == yn;
  const MTilde whole = to_tilde(g, r, y.body);
  const auto proj = project_infinite(g, whole);
  const Degree mx = meet_degree(proj.path, m), nx = meet_degree(proj.path, n);
  b.degree_condition = m - mx == n - nx;
  b.projected_shifts_equal = fragment_eq(g, shift(g, proj.path, mx), shift(g, proj.path, nx), box);
  return b;
}

}  // namespace kgraph
