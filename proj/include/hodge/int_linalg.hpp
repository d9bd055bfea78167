#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodge/error.hpp"
#include "hodge/matrix.hpp"
#include "hodge/rational.hpp"

namespace hodge {

/// U·A·V = D with U, V unimodular and D diagonal in Smith form.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::vector<Integer> diagonal;  // min(rows, cols) entries, d₁ | d₂ | …, zeros last

  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& d : diagonal)
      if (d != 0) ++r;
    return r;
  }
};

/// Finitely generated abelian group ℤ^free_rank ⊕ ⊕ ℤ/tᵢ, tᵢ ≥ 2, t₁ | t₂ | ….
struct FinAbGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;

  std::string to_string() const {
    std::string s;
    auto add = [&s](const std::string& term) { s += (s.empty() ? "" : " + ") + term; };
    if (free_rank == 1) add("Z");
    else if (free_rank > 1) add("Z^" + std::to_string(free_rank));
    for (const auto& t : torsion) add("Z/" + t.get_str());
    return s.empty() ? "0" : s;
  }
};

namespace detail {

inline void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
inline void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

// Position of the nonzero entry of minimal absolute value in the trailing
// block starting at (t, t).
inline std::optional<std::pair<std::size_t, std::size_t>> min_abs_entry(const IntMatrix& d, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Integer a = abs(d(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace detail

/// Smith normal form by min-absolute-value pivoting. Row operations are
/// mirrored into U, column operations into V.
inline SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  auto swap_rows = [&](std::size_t i, std::size_t j) { d.swap_rows(i, j), u.swap_rows(i, j); };
  auto swap_cols = [&](std::size_t i, std::size_t j) { d.swap_cols(i, j), v.swap_cols(i, j); };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    auto pos = detail::min_abs_entry(d, t);
    if (!pos) break;
    swap_rows(t, pos->first);
    swap_cols(t, pos->second);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        detail::add_row_multiple(d, i, t, -q);
        detail::add_row_multiple(u, i, t, -q);
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        detail::add_col_multiple(d, j, t, -q);
        detail::add_col_multiple(v, j, t, -q);
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder is now smaller than the pivot; bring the new minimum up.
        auto p = detail::min_abs_entry(d, t);
        swap_rows(t, p->first);
        swap_cols(t, p->second);
        continue;
      }
      // Row and column t are clear. Enforce d(t,t) | every trailing entry.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            detail::add_row_multiple(d, t, i, 1);
            detail::add_row_multiple(u, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m; ++j) u(t, j) = -u(t, j);
    }
  }

  SmithForm s{std::move(u), std::move(d), std::move(v), {}};
  s.diagonal.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) s.diagonal.push_back(s.D(i, i));
  return s;
}

/// Structure of ℤ^rows / im(A).
inline FinAbGroup cokernel_structure(const IntMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  FinAbGroup g;
  g.free_rank = a.rows() - s.rank();
  for (const auto& d : s.diagonal)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

/// Exact inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("unimodular_inverse: matrix is " + m.shape());
  const std::size_t n = m.rows();
  // Gauss–Jordan over ℚ on [M | I]; the inverse of a unimodular matrix is integral.
  RatMatrix aug(n, 2 * n);
  place_block(aug, to_rational(m), 0, 0);
  place_block(aug, RatMatrix::identity(n), 0, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && aug(p, c) == 0) ++p;
    if (p == n) throw ValidationError("unimodular_inverse: matrix is singular");
    aug.swap_rows(p, c);
    const Rational inv = 1 / aug(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) aug(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || aug(i, c) == 0) continue;
      const Rational f = aug(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(c, j);
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& q = aug(i, n + j);
      if (q.get_den() != 1) throw ValidationError("unimodular_inverse: matrix is not unimodular");
      inv(i, j) = q.get_num();
    }
  return inv;
}

/// Determinant by Bareiss fraction-free elimination.
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant: matrix is " + m.shape());
  const std::size_t n = m.rows();
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return n == 0 ? Integer(1) : sign * m(n - 1, n - 1);
}

}  // namespace hodge
