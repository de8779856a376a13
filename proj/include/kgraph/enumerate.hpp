#pragma once

// Enumeration of v Lambda^n, v Lambda^{<=n}, minimal common extensions and
// exhaustive sets.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "kgraph/degree.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/path.hpp"

namespace kgraph {

/// Upper bound on morphisms produced by one enumeration. Defaults to 10^5;
/// KG_MAX_MORPHISMS overrides.
inline std::size_t morphism_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("KG_MAX_MORPHISMS")) {
      char* end = nullptr;
      auto v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{100000};
  }();
  return cap;
}

namespace detail {

/// Depth-first walk over normal-form words. For each colour c in turn the
/// walker may append between lo[c] and hi[c] edges of that colour.
template <typename F>
class NormalFormWalker {
 public:
  NormalFormWalker(const KGraph& g, const Degree& lo, const Degree& hi, F& visit)
      : g_(g), lo_(lo), hi_(hi), visit_(visit) {}

  void run(VertexId v) {
    cur_ = vertex_path(g_, v);
    step(0, 0);
  }

 private:
  void step(std::size_t colour, std::uint32_t used) {
    if (colour == g_.rank()) {
      if (++count_ > morphism_cap())
        throw TooLarge("enumeration exceeded " + std::to_string(morphism_cap()) +
                       " morphisms (set KG_MAX_MORPHISMS to raise)");
      visit_(static_cast<const Path&>(cur_));
      return;
    }
    if (used >= lo_[colour]) step(colour + 1, 0);
    if (used >= hi_[colour]) return;
    const VertexId at = cur_.source;
    for (EdgeId e : g_.edges_into(at, colour)) {
      cur_.edges.push_back(e);
      cur_.source = g_.source(e);
      ++cur_.degree[colour];
      step(colour, used + 1);
      --cur_.degree[colour];
      cur_.source = at;
      cur_.edges.pop_back();
    }
  }

  const KGraph& g_;
  Degree lo_, hi_;
  F& visit_;
  Path cur_;
  std::size_t count_ = 0;
};

}  // namespace detail

/// Streams v Lambda^n in lexicographic edge order.
template <typename F>
void for_each_path_from(const KGraph& g, VertexId v, const Degree& n, F&& visit) {
  detail::NormalFormWalker<F> w(g, n, n, visit);
  w.run(v);
}

/// Streams every lambda in v Lambda with d(lambda) <= n.
template <typename F>
void for_each_path_in_box(const KGraph& g, VertexId v, const Degree& n, F&& visit) {
  detail::NormalFormWalker<F> w(g, Degree::zero(g.rank()), n, visit);
  w.run(v);
}

inline std::vector<Path> paths_from(const KGraph& g, VertexId v, const Degree& n) {
  std::vector<Path> out;
  for_each_path_from(g, v, n, [&](const Path& p) { out.push_back(p); });
  return out;
}

/// True iff lambda lies in Lambda^{<=n}: d(lambda) <= n and s(lambda) has no
/// colour-i edge whenever d(lambda) + e_i <= n.
inline bool in_le(const KGraph& g, const Path& lambda, const Degree& n) {
  if (!leq(lambda.degree, n)) return false;
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (lambda.degree[i] < n[i] && g.alive(lambda.source, i)) return false;
  return true;
}

/// v Lambda^{<=n}.
inline std::vector<Path> paths_le(const KGraph& g, VertexId v, const Degree& n) {
  std::vector<Path> out;
  for_each_path_in_box(g, v, n, [&](const Path& p) {
    if (in_le(g, p, n)) out.push_back(p);
  });
  if (out.empty() && g.locally_convex())
    throw InvariantBreach("v Lambda^{<=n} empty at " + g.name(v) + " in a locally convex graph");
  return out;
}

/// MCE(mu, nu): the lambda of degree d(mu) v d(nu) extending both.
inline std::vector<Path> mce(const KGraph& g, const Path& mu, const Path& nu) {
  if (mu.range != nu.range)
    throw RangeMismatch("mce of paths with ranges " + g.name(mu.range) + " and " +
                        g.name(nu.range));
  const Degree top = join(mu.degree, nu.degree);
  std::vector<Path> out;
  for_each_path_from(g, mu.source, top - mu.degree, [&](const Path& tail) {
    Path lambda = compose(g, mu, tail);
    if (segment(g, lambda, Degree::zero(g.rank()), nu.degree) == nu) out.push_back(lambda);
  });
  return out;
}

/// Exhaustiveness of E at v, quantifying only over lambda with d(lambda)
/// at most `bound` (default: the join of the degrees in E). The default
/// cutoff is cross-checked against larger bounds in the test suite.
inline bool is_exhaustive(const KGraph& g, VertexId v, const std::vector<Path>& E,
                          std::optional<Degree> bound = std::nullopt) {
  Degree top = Degree::zero(g.rank());
  for (const auto& mu : E) {
    if (mu.range != v) throw NotAtVertex("element of E does not have range " + g.name(v));
    top = join(top, mu.degree);
  }
  if (bound) top = *bound;
  bool ok = true;
  for_each_path_in_box(g, v, top, [&](const Path& lambda) {
    if (!ok) return;
    for (const auto& mu : E)
      if (!mce(g, lambda, mu).empty()) return;
    ok = false;
  });
  return ok;
}

struct ConvexityCheck {
  bool convex = true;
  std::optional<ConvexityViolation> witness;
};

inline ConvexityCheck is_locally_convex(const KGraph& g) {
  return {g.locally_convex(), g.convexity_witness()};
}

}  // namespace kgraph
