#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "hodge/error.hpp"
#include "hodge/spectral.hpp"

// Dimension calculus for the covering spectral sequence of a quotient of a
// product of two Drinfeld symmetric spaces of dimensions d and d′. The
// generalized Steinberg representations V_I are indexed by subsets
// I ⊆ {1, …, d}; the constituent of Hˢ_dR in degree s is V_{{1,…,d−s}}.

namespace hodge::steinberg {

/// Subset I ⊆ {1, …, d}, element k stored as bit k−1.
class SteinbergLabel {
 public:
  static constexpr int max_dimension = 64;

  SteinbergLabel(int d, std::uint64_t mask) : d_(d), mask_(mask) {
    if (d < 1 || d > max_dimension) throw ValidationError("label dimension " + std::to_string(d) + " out of range");
    if (d < 64 && (mask >> d) != 0) throw ValidationError("label has elements outside [1, " + std::to_string(d) + "]");
  }
  SteinbergLabel(int d, std::initializer_list<int> elems) : SteinbergLabel(d, 0) {
    for (int e : elems) {
      if (e < 1 || e > d) throw ValidationError("label element " + std::to_string(e) + " outside [1, " + std::to_string(d) + "]");
      mask_ |= std::uint64_t{1} << (e - 1);
    }
  }

  /// V_∅, the Steinberg representation.
  static SteinbergLabel steinberg(int d) { return {d, std::uint64_t{0}}; }
  /// V_{{1..d}}, the trivial representation.
  static SteinbergLabel trivial(int d) { return {d, d == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d) - 1}; }
  /// Label of the cohomology constituent in degree s: {1, …, d−s}.
  static SteinbergLabel for_degree(int d, int s) {
    if (s < 0 || s > d) throw ValidationError("degree " + std::to_string(s) + " outside [0, " + std::to_string(d) + "]");
    return {d, d - s == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (d - s)) - 1};
  }

  int d() const noexcept { return d_; }
  std::uint64_t mask() const noexcept { return mask_; }
  int size() const noexcept { return std::popcount(mask_); }
  friend bool operator==(const SteinbergLabel&, const SteinbergLabel&) = default;

 private:
  int d_;
  std::uint64_t mask_;
};

/// |I₁ ∪ I₂| − |I₁ ∩ I₂|.
inline int delta(const SteinbergLabel& a, const SteinbergLabel& b) {
  if (a.d() != b.d())
    throw DimensionError("delta: labels over different d (" + std::to_string(a.d()) + " vs " + std::to_string(b.d()) + ")");
  return std::popcount(a.mask() ^ b.mask());
}

/// dim Ext^i(V_{I1} ⊗ V′_{J1}, V_{I2} ⊗ V′_{J2}): 1 in degree Δ(I1,I2)+Δ(J1,J2), else 0.
inline int ext_dim(const SteinbergLabel& i1, const SteinbergLabel& j1, const SteinbergLabel& i2,
                   const SteinbergLabel& j2, int degree) {
  if (j1.d() != j2.d())
    throw DimensionError("ext_dim: J labels over different d′ (" + std::to_string(j1.d()) + " vs " +
                         std::to_string(j2.d()) + ")");
  return degree == delta(i1, i2) + delta(j1, j2) ? 1 : 0;
}

/// Multiplicities of V_∅⊗𝟙, 𝟙⊗V′_∅ and V_∅⊗V′_∅ in the induced
/// representation. The trivial constituent always has multiplicity one.
struct InducedSpectrum {
  std::size_t m10 = 0;
  std::size_t m01 = 0;
  std::size_t m11 = 0;
  static constexpr std::size_t m00 = 1;

  friend bool operator==(const InducedSpectrum&, const InducedSpectrum&) = default;
};

inline void check_dims(int d, int dp) {
  if (d < 1 || dp < 1) throw ValidationError("d and d' must be >= 1 (got " + std::to_string(d) + ", " + std::to_string(dp) + ")");
  if (d > SteinbergLabel::max_dimension || dp > SteinbergLabel::max_dimension)
    throw ValidationError("d and d' must be <= " + std::to_string(SteinbergLabel::max_dimension));
}

/// dim E₂^{r,s} = Σ_{i+j=s} Σ_X mult(X) · dim Ext^r(Hⁱ ⊗ H′ʲ, X) over the four
/// unitary constituents X of the induced representation.
inline std::size_t e2_dim(int d, int dp, const InducedSpectrum& m, int r, int s) {
  check_dims(d, dp);
  if (r < 0 || s < 0 || s > d + dp) return 0;
  const SteinbergLabel triv = SteinbergLabel::trivial(d), st = SteinbergLabel::steinberg(d);
  const SteinbergLabel triv_p = SteinbergLabel::trivial(dp), st_p = SteinbergLabel::steinberg(dp);
  std::size_t total = 0;
  for (int i = std::max(0, s - dp); i <= std::min(d, s); ++i) {
    const int j = s - i;
    const SteinbergLabel vi = SteinbergLabel::for_degree(d, i);
    const SteinbergLabel vj = SteinbergLabel::for_degree(dp, j);
    total += InducedSpectrum::m00 * ext_dim(vi, vj, triv, triv_p, r);
    total += m.m10 * ext_dim(vi, vj, st, triv_p, r);
    total += m.m01 * ext_dim(vi, vj, triv, st_p, r);
    total += m.m11 * ext_dim(vi, vj, st, st_p, r);
  }
  return total;
}

/// E₂ dimensions for 0 ≤ r, s ≤ d + d′.
struct E2Table {
  int d = 0;
  int dp = 0;
  InducedSpectrum spectrum;
  Grid<std::size_t> grid;

  std::size_t extent() const noexcept { return std::size_t(d + dp); }
  std::size_t at(long r, long s) const { return grid.contains(r, s) ? grid(std::size_t(r), std::size_t(s)) : 0; }
};

inline E2Table e2_table(int d, int dp, const InducedSpectrum& m) {
  check_dims(d, dp);
  const std::size_t top = std::size_t(d + dp);
  E2Table t{d, dp, m, Grid<std::size_t>(top, top, 0)};
  for (std::size_t r = 0; r <= top; ++r)
    for (std::size_t s = 0; s <= top; ++s) t.grid(r, s) = e2_dim(d, dp, m, int(r), int(s));
  return t;
}

/// Betti numbers b_n = Σ_{r+s=n} dim E₂^{r,s}, n = 0 … 2(d+d′).
inline std::vector<std::size_t> betti_numbers(const E2Table& t) {
  const std::size_t top = 2 * t.extent();
  std::vector<std::size_t> b(top + 1, 0);
  for (std::size_t r = 0; r <= t.extent(); ++r)
    for (std::size_t s = 0; s <= t.extent(); ++s) b[r + s] += t.grid(r, s);
  return b;
}

inline std::size_t betti(int d, int dp, const InducedSpectrum& m, int n) {
  if (n < 0 || n > 2 * (d + dp)) {
    check_dims(d, dp);
    return 0;
  }
  std::size_t b = 0;
  for (int r = 0; r <= n; ++r) b += e2_dim(d, dp, m, r, n - r);
  return b;
}

/// dim F_Γ^i Hⁿ = Σ_{r ≥ i, r+s=n} dim E₂^{r,s} for i = 0 … n+1.
inline std::vector<std::size_t> covering_filtration_dims(const E2Table& t, int n) {
  if (n < 0 || std::size_t(n) > 2 * t.extent())
    throw DimensionError("filtration degree " + std::to_string(n) + " outside [0, " + std::to_string(2 * t.extent()) + "]");
  std::vector<std::size_t> f(std::size_t(n) + 2, 0);
  for (int i = n; i >= 0; --i) f[std::size_t(i)] = f[std::size_t(i) + 1] + t.at(i, n - i);
  return f;
}

inline std::vector<std::size_t> covering_filtration_dims(int d, int dp, const InducedSpectrum& m, int n) {
  return covering_filtration_dims(e2_table(d, dp, m), n);
}

/// Betti numbers together with the covering filtration of every degree.
struct BettiProfile {
  std::vector<std::size_t> b;
  std::vector<std::vector<std::size_t>> filtration;  // filtration[n][i] = dim F_Γ^i Hⁿ
};

inline BettiProfile betti_profile(int d, int dp, const InducedSpectrum& m) {
  const E2Table t = e2_table(d, dp, m);
  BettiProfile p{betti_numbers(t), {}};
  for (std::size_t n = 0; n < p.b.size(); ++n) p.filtration.push_back(covering_filtration_dims(t, int(n)));
  return p;
}

// ---------------------------------------------------------------------------
// Reference case tables (even d ≤ d′ only), kept for comparison.

inline void check_stated_case(int d, int dp) {
  check_dims(d, dp);
  if (d % 2 != 0 || dp % 2 != 0 || d > dp)
    throw ValidationError("no reference table for d=" + std::to_string(d) + ", d'=" + std::to_string(dp) +
                          " (the reference table covers only even d <= d')");
}

/// The case-analysis E₂ table as stated for even d ≤ d′.
inline std::size_t stated_e2_dim(int d, int dp, const InducedSpectrum& m, int r, int s) {
  check_stated_case(d, dp);
  const int mid = (d + dp) / 2;
  const int n = r + s;
  const bool even = n % 2 == 0;
  if (r == s && r < d / 2) return 1;
  if (r == s && d / 2 <= r && r < dp / 2) return m.m10 + 1;
  if (r == s && r != mid && r >= dp / 2) return m.m10 + m.m01 + 1;
  if (n == d + dp && r != mid) return m.m11 + m.m10 + m.m01;
  if (r == s && r == mid) return m.m11 + m.m10 + m.m01 + 1;
  if (even && d <= n && n < dp && r != s && n != d + dp) return m.m10;
  if (even && n >= dp && r != s && n != d + dp) return m.m10 + m.m01;
  return 0;
}

/// The closed-form Betti numbers as stated for even d ≤ d′.
inline std::size_t stated_betti(int d, int dp, const InducedSpectrum& m, int n) {
  check_stated_case(d, dp);
  const std::size_t sum1 = m.m10 + m.m01;
  const std::size_t all = m.m11 + m.m10 + m.m01;
  const bool even = n % 2 == 0;
  if (n < 0) return 0;
  if (n == d + dp) return std::size_t(d + dp + 1) * all + 1;
  if (!even) return 0;
  if (n < d) return 1;
  if (n < dp) return std::size_t(n + 1) * m.m10 + 1;
  if (n < d + dp) return std::size_t(n + 1) * sum1 + 1;
  if (n <= 2 * (d + dp)) return std::size_t(2 * d + 2 * dp + 1 - n) * sum1 + 1;
  return 0;
}

struct CellDiff {
  int r = 0;
  int s = 0;
  std::size_t computed = 0;
  std::size_t stated = 0;
  long diff() const noexcept { return long(computed) - long(stated); }
  friend bool operator==(const CellDiff&, const CellDiff&) = default;
};

/// Computed and stated grids side by side, with every disagreeing cell.
/// Betti entries reuse CellDiff with r = n and s = −1.
struct StatedTableDiff {
  E2Table computed;
  Grid<std::size_t> stated;
  std::vector<std::size_t> betti_computed;
  std::vector<std::size_t> betti_stated;
  std::vector<CellDiff> cell_diffs;   // cells where the grids disagree
  std::vector<CellDiff> betti_diffs;  // r holds n

  bool agrees_at(std::size_t r, std::size_t s) const { return computed.grid(r, s) == stated(r, s); }
};

inline StatedTableDiff stated_table_diff(int d, int dp, const InducedSpectrum& m) {
  check_stated_case(d, dp);
  StatedTableDiff out{e2_table(d, dp, m), {}, {}, {}, {}, {}};
  const std::size_t top = out.computed.extent();
  out.stated = Grid<std::size_t>(top, top, 0);
  for (std::size_t r = 0; r <= top; ++r)
    for (std::size_t s = 0; s <= top; ++s) {
      out.stated(r, s) = stated_e2_dim(d, dp, m, int(r), int(s));
      if (out.stated(r, s) != out.computed.grid(r, s))
        out.cell_diffs.push_back({int(r), int(s), out.computed.grid(r, s), out.stated(r, s)});
    }
  out.betti_computed = betti_numbers(out.computed);
  for (std::size_t n = 0; n < out.betti_computed.size(); ++n) {
    out.betti_stated.push_back(stated_betti(d, dp, m, int(n)));
    if (out.betti_stated.back() != out.betti_computed[n])
      out.betti_diffs.push_back({int(n), -1, out.betti_computed[n], out.betti_stated.back()});
  }
  return out;
}

}  // namespace hodge::steinberg
