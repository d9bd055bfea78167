#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hodge/error.hpp"
#include "hodge/matrix.hpp"
#include "hodge/rational.hpp"

namespace hodge {

struct RrefResult {
  RatMatrix reduced;               // same shape as the input
  std::vector<std::size_t> pivots; // increasing
  std::size_t rank() const noexcept { return pivots.size(); }
};

/// Gauss–Jordan elimination over ℚ. The result keeps the input's shape;
/// zero rows sit at the bottom.
inline RrefResult rref(RatMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    std::size_t pr = lead;
    while (pr < m.rows() && m(pr, col) == 0) ++pr;
    if (pr == m.rows()) continue;
    m.swap_rows(pr, lead);
    const Rational inv = 1 / m(lead, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(lead, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(lead, j);
    }
    pivots.push_back(col);
    ++lead;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).rank(); }

/// A linear subspace of ℚ^n stored as the rref of any spanning set with
/// zero rows removed. Equal subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;

  /// Zero subspace of ℚ^n.
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  /// Row span of `rows` (rows need not be independent).
  static Subspace span(const RatMatrix& rows) {
    auto [r, piv] = rref(rows);
    Subspace s(rows.cols());
    s.basis_ = r.row_block(0, piv.size());
    s.pivots_ = std::move(piv);
    return s;
  }

  static Subspace full(std::size_t n) { return span(RatMatrix::identity(n)); }

  /// Span of the standard basis vectors listed in `coords`.
  static Subspace coordinate(std::size_t n, const std::vector<std::size_t>& coords) {
    RatMatrix m(coords.size(), n);
    for (std::size_t i = 0; i < coords.size(); ++i) m(i, coords[i]) = 1;
    return span(m);
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  bool is_zero() const noexcept { return dim() == 0; }
  bool is_full() const noexcept { return dim() == ambient_; }
  const RatMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Reduces `v` against the basis; the result vanishes on every pivot column
  /// and is zero iff `v` lies in the subspace.
  std::vector<Rational> reduce(std::vector<Rational> v) const {
    check_vector(v.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const Rational f = v[pivots_[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < ambient_; ++j) v[j] -= f * basis_(i, j);
    }
    return v;
  }

  bool contains(const std::vector<Rational>& v) const {
    auto r = reduce(v);
    for (const auto& x : r)
      if (x != 0) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    check_ambient(other, "contains");
    for (std::size_t i = 0; i < other.dim(); ++i) {
      auto row = other.basis_.row(i);
      if (!contains(std::vector<Rational>(row.begin(), row.end()))) return false;
    }
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  void check_ambient(const Subspace& other, const char* op) const {
    if (other.ambient_ != ambient_)
      throw DimensionError(std::string(op) + ": ambient dimensions differ (" + std::to_string(ambient_) +
                           " vs " + std::to_string(other.ambient_) + ")");
  }

 private:
  void check_vector(std::size_t n) const {
    if (n != ambient_)
      throw DimensionError("vector of length " + std::to_string(n) + " in ambient dimension " +
                           std::to_string(ambient_));
  }

  std::size_t ambient_ = 0;
  RatMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Null space {x : Mx = 0} as a subspace of ℚ^{M.cols}.
inline Subspace kernel_basis(const RatMatrix& m) {
  auto [r, piv] = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  RatMatrix k(n - piv.size(), n);
  std::size_t row = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    k(row, free) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) k(row, piv[i]) = -r(i, free);
    ++row;
  }
  return Subspace::span(k);
}

inline Subspace subspace_sum(const Subspace& u, const Subspace& w) {
  u.check_ambient(w, "subspace_sum");
  return Subspace::span(u.basis().vstack(w.basis()));
}

/// Intersection via the kernel of [Uᵀ | Wᵀ]: (x, y) in the kernel gives
/// xᵀU = −yᵀW, a common vector.
inline Subspace subspace_intersect(const Subspace& u, const Subspace& w) {
  u.check_ambient(w, "subspace_intersect");
  const std::size_t n = u.ambient_dim();
  if (u.is_zero() || w.is_zero()) return Subspace(n);
  const std::size_t a = u.dim();
  const std::size_t b = w.dim();
  RatMatrix stacked(n, a + b);
  place_block(stacked, u.basis().transpose(), 0, 0);
  place_block(stacked, w.basis().transpose(), 0, a);
  const Subspace k = kernel_basis(stacked);
  std::vector<std::size_t> first(a);
  for (std::size_t i = 0; i < a; ++i) first[i] = i;
  return Subspace::span(k.basis().select_cols(first) * u.basis());
}

inline bool is_complementary(const Subspace& u, const Subspace& w) {
  u.check_ambient(w, "is_complementary");
  if (u.dim() + w.dim() != u.ambient_dim()) return false;
  return subspace_intersect(u, w).is_zero();
}

/// Image {Mx : x ∈ S} of a subspace of ℚ^{M.cols}.
inline Subspace image(const RatMatrix& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim())
    throw DimensionError("image: map " + m.shape() + " on ambient " + std::to_string(s.ambient_dim()));
  return Subspace::span(s.basis() * m.transpose());
}

inline Subspace column_space(const RatMatrix& m) { return Subspace::span(m.transpose()); }

/// Annihilator {α : α·v = 0 for all v ∈ S}, as a subspace of the same ℚ^n.
inline Subspace annihilator(const Subspace& s) {
  if (s.is_zero()) return Subspace::full(s.ambient_dim());
  return kernel_basis(s.basis());
}

/// Preimage {x : Mx ∈ W}.
inline Subspace preimage(const RatMatrix& m, const Subspace& w) {
  if (m.rows() != w.ambient_dim())
    throw DimensionError("preimage: map " + m.shape() + " into ambient " + std::to_string(w.ambient_dim()));
  const Subspace ann = annihilator(w);
  if (ann.is_zero()) return Subspace::full(m.cols());
  return kernel_basis(ann.basis() * m);
}

/// Canonical complement of `sub` inside `whole` (sub ⊆ whole): the basis of
/// `whole` reduced modulo `sub`, then row-reduced.
inline Subspace complement_in(const Subspace& whole, const Subspace& sub) {
  whole.check_ambient(sub, "complement_in");
  RatMatrix rows(whole.dim(), whole.ambient_dim());
  for (std::size_t i = 0; i < whole.dim(); ++i) {
    auto r = whole.basis().row(i);
    auto red = sub.reduce(std::vector<Rational>(r.begin(), r.end()));
    for (std::size_t j = 0; j < red.size(); ++j) rows(i, j) = red[j];
  }
  return Subspace::span(rows);
}

/// Coordinates of vectors with respect to a fixed basis (rows of `basis`,
/// assumed independent). Solves xᵀB = v by one elimination on [Bᵀ | I].
class CoordinateSystem {
 public:
  explicit CoordinateSystem(RatMatrix basis) : basis_(std::move(basis)) {
    const std::size_t k = basis_.rows();
    const std::size_t n = basis_.cols();
    // rref of [Bᵀ | I_n]: the left block becomes [I_k; 0], and the right
    // block's first k rows are a left inverse of Bᵀ.
    RatMatrix aug(n, k + n);
    place_block(aug, basis_.transpose(), 0, 0);
    place_block(aug, RatMatrix::identity(n), 0, k);
    auto [r, piv] = rref(std::move(aug));
    std::size_t basis_rank = 0;
    while (basis_rank < piv.size() && piv[basis_rank] < k) ++basis_rank;
    if (basis_rank != k) throw DimensionError("CoordinateSystem: basis rows are dependent");
    left_inverse_ = RatMatrix(k, n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) left_inverse_(i, j) = r(i, k + j);
  }

  std::size_t size() const noexcept { return basis_.rows(); }

  /// Coordinates of each row of `vectors` (rows must lie in the span).
  RatMatrix coordinates(const RatMatrix& vectors) const { return vectors * left_inverse_.transpose(); }

 private:
  RatMatrix basis_;
  RatMatrix left_inverse_;
};

}  // namespace hodge
