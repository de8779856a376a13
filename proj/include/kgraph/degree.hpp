#pragma once

// Degrees: elements of N^k with the coordinatewise lattice operations.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <string>

#include "kgraph/errors.hpp"

namespace kgraph {

inline constexpr std::size_t kMaxRank = 8;

/// An element of N^k, 1 <= k <= kMaxRank.
///
/// The default three-way comparison is lexicographic (rank first) and exists
/// so degrees can key ordered containers. The partial order of N^k is `leq`.
class Degree {
 public:
  using value_type = std::uint32_t;

  Degree() = default;
  explicit Degree(std::size_t rank) : rank_(check_rank(rank)) {}
  Degree(std::initializer_list<value_type> coords)
      : rank_(check_rank(coords.size())) {
    std::copy(coords.begin(), coords.end(), coords_.begin());
  }

  static Degree zero(std::size_t rank) { return Degree(rank); }
  static Degree unit(std::size_t rank, std::size_t i) {
    Degree d(rank);
    d.at(i) = 1;
    return d;
  }
  static Degree filled(std::size_t rank, value_type value) {
    Degree d(rank);
    std::fill_n(d.coords_.begin(), rank, value);
    return d;
  }

  std::size_t rank() const { return rank_; }
  value_type operator[](std::size_t i) const { return coords_[i]; }
  value_type& operator[](std::size_t i) { return coords_[i]; }
  value_type at(std::size_t i) const {
    if (i >= rank_) throw DegreeOutOfRange("coordinate index out of range");
    return coords_[i];
  }
  value_type& at(std::size_t i) {
    if (i >= rank_) throw DegreeOutOfRange("coordinate index out of range");
    return coords_[i];
  }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.begin() + rank_,
                       [](value_type c) { return c == 0; });
  }
  value_type max_coord() const {
    return rank_ == 0 ? 0 : *std::max_element(coords_.begin(), coords_.begin() + rank_);
  }
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < rank_; ++i) t += coords_[i];
    return t;
  }

  Degree& operator+=(const Degree& o) {
    same_rank(o);
    for (std::size_t i = 0; i < rank_; ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  /// Checked: throws DegreeOutOfRange instead of clamping.
  Degree& operator-=(const Degree& o) {
    same_rank(o);
    for (std::size_t i = 0; i < rank_; ++i) {
      if (o.coords_[i] > coords_[i])
        throw DegreeOutOfRange("degree subtraction underflow: " + to_string() +
                               " - " + o.to_string());
    }
    for (std::size_t i = 0; i < rank_; ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  friend Degree operator+(Degree a, const Degree& b) { return a += b; }
  friend Degree operator-(Degree a, const Degree& b) { return a -= b; }

  /// Coordinatewise minimum.
  friend Degree meet(const Degree& a, const Degree& b) {
    a.same_rank(b);
    Degree r(a.rank_);
    for (std::size_t i = 0; i < a.rank_; ++i)
      r.coords_[i] = std::min(a.coords_[i], b.coords_[i]);
    return r;
  }
  /// Coordinatewise maximum.
  friend Degree join(const Degree& a, const Degree& b) {
    a.same_rank(b);
    Degree r(a.rank_);
    for (std::size_t i = 0; i < a.rank_; ++i)
      r.coords_[i] = std::max(a.coords_[i], b.coords_[i]);
    return r;
  }
  /// The partial order of N^k.
  friend bool leq(const Degree& a, const Degree& b) {
    a.same_rank(b);
    for (std::size_t i = 0; i < a.rank_; ++i)
      if (a.coords_[i] > b.coords_[i]) return false;
    return true;
  }

  friend bool operator==(const Degree&, const Degree&) = default;
  friend auto operator<=>(const Degree&, const Degree&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < rank_; ++i) {
      if (i) s += ',';
      s += std::to_string(coords_[i]);
    }
    return s + ")";
  }

  std::size_t hash() const {
    std::size_t h = rank_;
    for (std::size_t i = 0; i < rank_; ++i) h = h * 1000003u ^ coords_[i];
    return h;
  }

 private:
  static std::size_t check_rank(std::size_t rank) {
    if (rank == 0 || rank > kMaxRank)
      throw DegreeOutOfRange("rank must be in 1.." + std::to_string(kMaxRank));
    return rank;
  }
  void same_rank(const Degree& o) const {
    if (o.rank_ != rank_) throw DegreeOutOfRange("rank mismatch between degrees");
  }

  std::size_t rank_ = 0;
  std::array<value_type, kMaxRank> coords_{};
};

/// Every degree in the box [0, bound], in lexicographic order.
template <typename F>
void for_each_degree_le(const Degree& bound, F&& f) {
  Degree d = Degree::zero(bound.rank());
  while (true) {
    f(static_cast<const Degree&>(d));
    std::size_t i = bound.rank();
    while (i > 0) {
      --i;
      if (d[i] < bound[i]) {
        ++d[i];
        break;
      }
      d[i] = 0;
      if (i == 0) return;
    }
  }
}

/// A degree whose coordinates may be unbounded; the degree of a boundary path.
class ExtDegree {
 public:
  static constexpr std::uint32_t kUnbounded = std::numeric_limits<std::uint32_t>::max();

  ExtDegree() = default;
  explicit ExtDegree(const Degree& finite) : d_(finite) {}
  static ExtDegree unbounded(std::size_t rank) {
    return ExtDegree(Degree::filled(rank, kUnbounded));
  }

  std::size_t rank() const { return d_.rank(); }
  bool is_unbounded(std::size_t i) const { return d_[i] == kUnbounded; }
  std::uint32_t operator[](std::size_t i) const { return d_[i]; }
  void set(std::size_t i, std::uint32_t v) { d_[i] = v; }
  void set_unbounded(std::size_t i) { d_[i] = kUnbounded; }

  friend Degree meet(const ExtDegree& a, const Degree& b) { return meet(a.d_, b); }
  friend Degree meet(const Degree& b, const ExtDegree& a) { return meet(a.d_, b); }
  friend bool operator==(const ExtDegree&, const ExtDegree&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < rank(); ++i) {
      if (i) s += ',';
      s += is_unbounded(i) ? std::string("inf") : std::to_string(d_[i]);
    }
    return s + ")";
  }

 private:
  Degree d_;
};

}  // namespace kgraph

template <>
struct std::hash<kgraph::Degree> {
  std::size_t operator()(const kgraph::Degree& d) const noexcept { return d.hash(); }
};
