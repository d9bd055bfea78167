#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodge/error.hpp"
#include "hodge/exact_linalg.hpp"
#include "hodge/int_linalg.hpp"
#include "hodge/matrix.hpp"

namespace hodge {

namespace detail {

/// Shared storage for a finite graded object with one differential per
/// degree. `Cohomological` selects d: Cⁿ → Cⁿ⁺¹ (shape dims(n+1) × dims(n))
/// versus d: Cₙ → Cₙ₋₁ (shape dims(n−1) × dims(n)).
template <typename T, bool Cohomological>
class GradedComplex {
 public:
  using MatrixType = Matrix<T>;
  static constexpr int step = Cohomological ? 1 : -1;

  GradedComplex() = default;

  /// `dims[k]` is the rank in degree min_deg + k. Missing differentials are zero.
  GradedComplex(int min_deg, std::vector<std::size_t> dims, std::map<int, MatrixType> differentials = {})
      : min_deg_(min_deg), dims_(std::move(dims)), diffs_(std::move(differentials)) {
    for (const auto& [n, m] : diffs_) {
      if (m.rows() != dim(n + step) || m.cols() != dim(n))
        throw DimensionError("differential in degree " + std::to_string(n) + " has shape " + m.shape() +
                             ", expected " + std::to_string(dim(n + step)) + "x" + std::to_string(dim(n)));
    }
  }

  int min_deg() const noexcept { return min_deg_; }
  int max_deg() const noexcept { return min_deg_ + static_cast<int>(dims_.size()) - 1; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

  std::size_t dim(int n) const {
    if (n < min_deg_ || n > max_deg()) return 0;
    return dims_[static_cast<std::size_t>(n - min_deg_)];
  }

  /// The differential leaving degree n; a zero matrix where none was given.
  MatrixType differential(int n) const {
    auto it = diffs_.find(n);
    if (it != diffs_.end()) return it->second;
    return MatrixType(dim(n + step), dim(n));
  }

  const std::map<int, MatrixType>& differentials() const noexcept { return diffs_; }

  /// True iff every composite of consecutive differentials vanishes.
  bool composites_vanish() const { return first_nonzero_composite() == std::nullopt; }

  /// Degree n with d(n+step)∘d(n) ≠ 0, if any.
  std::optional<int> first_nonzero_composite() const {
    for (int n = min_deg_ - 1; n <= max_deg() + 1; ++n) {
      if (!(differential(n + step) * differential(n)).is_zero()) return n;
    }
    return std::nullopt;
  }

  friend bool operator==(const GradedComplex& a, const GradedComplex& b) {
    if (a.dims_.size() != b.dims_.size()) return false;
    if (a.dims_.empty()) return true;
    if (a.min_deg_ != b.min_deg_ || a.dims_ != b.dims_) return false;
    for (int n = a.min_deg_; n <= a.max_deg(); ++n)
      if (!(a.differential(n) == b.differential(n))) return false;
    return true;
  }

 private:
  int min_deg_ = 0;
  std::vector<std::size_t> dims_;
  std::map<int, MatrixType> diffs_;
};

}  // namespace detail

/// Finite cochain complex of ℚ-vector spaces, dⁿ: Cⁿ → Cⁿ⁺¹.
using CochainComplex = detail::GradedComplex<Rational, true>;
/// Finite chain complex of free ℤ-modules, dₙ: Cₙ → Cₙ₋₁.
using IntChainComplex = detail::GradedComplex<Integer, false>;

inline bool validate_complex(const CochainComplex& c) { return c.composites_vanish(); }
inline bool validate_complex(const IntChainComplex& c) { return c.composites_vanish(); }

struct CohomologyGroup {
  std::size_t dim = 0;
  /// Subspace of ker dⁿ whose vectors represent a basis of Hⁿ.
  Subspace representatives;
};

inline CohomologyGroup cohomology(const CochainComplex& c, int n) {
  const std::size_t len = c.dim(n);
  if (len == 0) return {0, Subspace(0)};
  const Subspace cycles = kernel_basis(c.differential(n));
  const Subspace boundaries = column_space(c.differential(n - 1));
  Subspace reps = complement_in(cycles, boundaries);
  return {reps.dim(), std::move(reps)};
}

/// Kronecker product A ⊗ B, row (i, k) ↦ i·B.rows + k.
template <typename T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s) k(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
    }
  return k;
}

/// Total tensor complex with d(x⊗y) = dx⊗y + (−1)^i x⊗dy for x ∈ Cⁱ.
/// Summands of degree n are ordered by increasing i; within a summand the
/// basis is (a, b) ↦ a·dim Dʲ + b.
inline CochainComplex tensor_product(const CochainComplex& c, const CochainComplex& d) {
  if (c.dims().empty() || d.dims().empty()) return CochainComplex(0, {});
  const int lo = c.min_deg() + d.min_deg();
  const int hi = c.max_deg() + d.max_deg();

  // offset[n][i] = position of the Cⁱ⊗Dⁿ⁻ⁱ block inside (C⊗D)ⁿ
  std::map<int, std::map<int, std::size_t>> offset;
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) {
    std::size_t total = 0;
    for (int i = c.min_deg(); i <= c.max_deg(); ++i) {
      offset[n][i] = total;
      total += c.dim(i) * d.dim(n - i);
    }
    dims.push_back(total);
  }

  std::map<int, RatMatrix> diffs;
  for (int n = lo; n < hi; ++n) {
    RatMatrix m(dims[static_cast<std::size_t>(n + 1 - lo)], dims[static_cast<std::size_t>(n - lo)]);
    for (int i = c.min_deg(); i <= c.max_deg(); ++i) {
      const int j = n - i;
      if (c.dim(i) == 0 || d.dim(j) == 0) continue;
      const std::size_t col0 = offset[n][i];
      if (c.dim(i + 1) > 0)
        place_block(m, kronecker(c.differential(i), RatMatrix::identity(d.dim(j))), offset[n + 1][i + 1], col0);
      if (d.dim(j + 1) > 0) {
        RatMatrix part = kronecker(RatMatrix::identity(c.dim(i)), d.differential(j));
        place_block(m, (i % 2 == 0) ? part : -part, offset[n + 1][i], col0);
      }
    }
    diffs.emplace(n, std::move(m));
  }
  return CochainComplex(lo, std::move(dims), std::move(diffs));
}

struct DegreeCheck {
  int degree = 0;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  bool pass() const noexcept { return lhs == rhs; }
};

struct KunnethReport {
  std::vector<DegreeCheck> degrees;
  bool passed() const {
    for (const auto& d : degrees)
      if (!d.pass()) return false;
    return true;
  }
};

/// Compares dim Hⁿ(C⊗D) with Σ_{i+j=n} dim Hⁱ(C)·dim Hʲ(D) in every degree.
inline KunnethReport kunneth_check(const CochainComplex& c, const CochainComplex& d) {
  KunnethReport report;
  if (c.dims().empty() || d.dims().empty()) return report;
  const CochainComplex t = tensor_product(c, d);
  std::map<int, std::size_t> hc, hd;
  for (int i = c.min_deg(); i <= c.max_deg(); ++i) hc[i] = cohomology(c, i).dim;
  for (int j = d.min_deg(); j <= d.max_deg(); ++j) hd[j] = cohomology(d, j).dim;
  for (int n = t.min_deg(); n <= t.max_deg(); ++n) {
    std::size_t rhs = 0;
    for (const auto& [i, hi] : hc) {
      auto it = hd.find(n - i);
      if (it != hd.end()) rhs += hi * it->second;
    }
    report.degrees.push_back({n, cohomology(t, n).dim, rhs});
  }
  return report;
}

/// Degreewise dual: (C*)ᵏ = (C⁻ᵏ)*, with δᵏ the transpose of d^{−k−1}.
inline CochainComplex hom_dual(const CochainComplex& c) {
  if (c.dims().empty()) return c;
  std::vector<std::size_t> dims(c.dims().rbegin(), c.dims().rend());
  std::map<int, RatMatrix> diffs;
  for (const auto& [n, m] : c.differentials()) diffs.emplace(-n - 1, m.transpose());
  return CochainComplex(-c.max_deg(), std::move(dims), std::move(diffs));
}

/// Hₙ = ker dₙ / im dₙ₊₁. The kernel basis comes from the Smith form of dₙ
/// (trailing columns of V); dₙ₊₁ is rewritten in that basis and its cokernel
/// computed.
inline FinAbGroup homology_int(const IntChainComplex& c, int n) {
  const std::size_t len = c.dim(n);
  if (len == 0) return {};
  const SmithForm s = smith_normal_form(c.differential(n));
  const std::size_t r = s.rank();
  const std::size_t k = len - r;
  if (k == 0) return {};
  const IntMatrix coords = unimodular_inverse(s.V) * c.differential(n + 1);
  IntMatrix restricted(k, coords.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < coords.cols(); ++j) restricted(i, j) = coords(r + i, j);
  return cokernel_structure(restricted);
}

/// Rank of an integer matrix reduced modulo a prime p.
inline std::size_t rank_mod_prime(const IntMatrix& a, std::uint64_t p) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::uint64_t> m(rows * cols);
  const Integer mp(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Integer v = a(i, j) % mp;
      if (v < 0) v += mp;
      m[i * cols + j] = v.get_ui();
    }
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return m[i * cols + j]; };
  auto pow_mod = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (b %= p; e; e >>= 1, b = b * b % p)
      if (e & 1) r = r * b % p;
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && at(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(rank, j));
    const std::uint64_t inv = pow_mod(at(rank, col), p - 2);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (at(i, col) == 0) continue;
      const std::uint64_t f = at(i, col) * inv % p;
      for (std::size_t j = col; j < cols; ++j) at(i, j) = (at(i, j) + (p - f) * at(rank, j)) % p;
    }
    ++rank;
  }
  return rank;
}

inline bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t q = 2; q * q <= m; ++q)
    if (m % q == 0) return false;
  return true;
}

/// Number of cyclic summands of G ⊗ ℤ/m (its ℤ/m-dimension when m is prime).
inline std::size_t tensor_mod_dim(const FinAbGroup& g, std::uint64_t m) {
  const Integer mm(static_cast<unsigned long>(m));
  std::size_t n = g.free_rank;
  for (const auto& t : g.torsion)
    if (gcd(t, mm) > 1) ++n;
  return n;
}

/// Number of cyclic summands of Tor(G, ℤ/m).
inline std::size_t tor_mod_dim(const FinAbGroup& g, std::uint64_t m) {
  const Integer mm(static_cast<unsigned long>(m));
  std::size_t n = 0;
  for (const auto& t : g.torsion)
    if (gcd(t, mm) > 1) ++n;
  return n;
}

struct UctDegree {
  int degree = 0;
  std::optional<std::size_t> mod_homology;  // dim Hₙ(C⊗ℤ/m) by field elimination; prime m only
  std::size_t tensor_term = 0;              // dim Hₙ(C) ⊗ ℤ/m
  std::size_t tor_term = 0;                 // dim Tor(Hₙ₋₁(C), ℤ/m)
  bool pass() const { return !mod_homology || *mod_homology == tensor_term + tor_term; }
};

struct UctReport {
  std::uint64_t modulus = 0;
  bool cross_checked = false;
  std::vector<UctDegree> degrees;
  bool passed() const {
    for (const auto& d : degrees)
      if (!d.pass()) return false;
    return true;
  }
};

/// Universal-coefficient dimension identity
///   dim Hₙ(C⊗ℤ/m) = dim Hₙ(C)⊗ℤ/m + dim Tor(Hₙ₋₁(C), ℤ/m).
/// The right side comes from invariant factors; the left side from mod-m
/// elimination, available only for prime m.
inline UctReport uct_check(const IntChainComplex& c, std::uint64_t m) {
  if (m < 2) throw ValidationError("uct: modulus must be >= 2, got " + std::to_string(m));
  if (m > (1ull << 31)) throw ValidationError("uct: modulus " + std::to_string(m) + " too large");
  UctReport report{m, is_prime(m), {}};
  if (c.dims().empty()) return report;
  for (int n = c.min_deg(); n <= c.max_deg(); ++n) {
    UctDegree row;
    row.degree = n;
    row.tensor_term = tensor_mod_dim(homology_int(c, n), m);
    row.tor_term = tor_mod_dim(homology_int(c, n - 1), m);
    if (report.cross_checked)
      row.mod_homology = c.dim(n) - rank_mod_prime(c.differential(n), m) - rank_mod_prime(c.differential(n + 1), m);
    report.degrees.push_back(row);
  }
  return report;
}

}  // namespace hodge
