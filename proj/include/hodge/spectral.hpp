#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hodge/complexes.hpp"
#include "hodge/error.hpp"
#include "hodge/exact_linalg.hpp"

namespace hodge {

/// Dense (p, q) grid, 0 ≤ p ≤ max_p, 0 ≤ q ≤ max_q.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t max_p, std::size_t max_q, T init = T{})
      : max_p_(max_p), max_q_(max_q), cells_((max_p + 1) * (max_q + 1), init) {}

  std::size_t max_p() const noexcept { return max_p_; }
  std::size_t max_q() const noexcept { return max_q_; }

  bool contains(long p, long q) const noexcept {
    return p >= 0 && q >= 0 && static_cast<std::size_t>(p) <= max_p_ && static_cast<std::size_t>(q) <= max_q_;
  }
  T& operator()(std::size_t p, std::size_t q) { return cells_[p * (max_q_ + 1) + q]; }
  const T& operator()(std::size_t p, std::size_t q) const { return cells_[p * (max_q_ + 1) + q]; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t max_p_ = 0;
  std::size_t max_q_ = 0;
  std::vector<T> cells_;
};

/// First-quadrant double complex. horiz(r,s): K^{r,s} → K^{r+1,s},
/// vert(r,s): K^{r,s} → K^{r,s+1}; squares are expected to commute.
class DoubleComplex {
 public:
  using Cell = std::pair<std::size_t, std::size_t>;

  DoubleComplex() = default;

  DoubleComplex(std::size_t max_r, std::size_t max_c, Grid<std::size_t> dims, std::map<Cell, RatMatrix> horiz = {},
                std::map<Cell, RatMatrix> vert = {})
      : max_r_(max_r), max_c_(max_c), dims_(std::move(dims)), horiz_(std::move(horiz)), vert_(std::move(vert)) {
    if (dims_.max_p() != max_r_ || dims_.max_q() != max_c_)
      throw DimensionError("double complex: dims grid does not match max_r/max_c");
    for (const auto& [cell, m] : horiz_) check_shape("horiz", cell, m, dim(cell.first + 1, cell.second));
    for (const auto& [cell, m] : vert_) check_shape("vert", cell, m, dim(cell.first, cell.second + 1));
  }

  std::size_t max_r() const noexcept { return max_r_; }
  std::size_t max_c() const noexcept { return max_c_; }
  const Grid<std::size_t>& dims() const noexcept { return dims_; }
  const std::map<Cell, RatMatrix>& horiz_maps() const noexcept { return horiz_; }
  const std::map<Cell, RatMatrix>& vert_maps() const noexcept { return vert_; }

  std::size_t dim(std::size_t r, std::size_t s) const { return dims_.contains(long(r), long(s)) ? dims_(r, s) : 0; }

  RatMatrix horiz(std::size_t r, std::size_t s) const {
    auto it = horiz_.find({r, s});
    return it != horiz_.end() ? it->second : RatMatrix(dim(r + 1, s), dim(r, s));
  }
  RatMatrix vert(std::size_t r, std::size_t s) const {
    auto it = vert_.find({r, s});
    return it != vert_.end() ? it->second : RatMatrix(dim(r, s + 1), dim(r, s));
  }

  /// Description of the first violated invariant, naming the offending cell.
  std::optional<std::string> violation() const {
    for (std::size_t r = 0; r <= max_r_; ++r)
      for (std::size_t s = 0; s <= max_c_; ++s) {
        const std::string at = "(" + std::to_string(r) + "," + std::to_string(s) + ")";
        if (!(horiz(r + 1, s) * horiz(r, s)).is_zero()) return "horiz∘horiz != 0 at " + at;
        if (!(vert(r, s + 1) * vert(r, s)).is_zero()) return "vert∘vert != 0 at " + at;
        if (!(vert(r + 1, s) * horiz(r, s) == horiz(r, s + 1) * vert(r, s)))
          return "square does not commute at " + at;
      }
    return std::nullopt;
  }

  void validate() const {
    if (auto v = violation()) throw ValidationError("double complex: " + *v);
  }

  friend bool operator==(const DoubleComplex& a, const DoubleComplex& b) {
    if (a.max_r_ != b.max_r_ || a.max_c_ != b.max_c_ || !(a.dims_ == b.dims_)) return false;
    for (std::size_t r = 0; r <= a.max_r_; ++r)
      for (std::size_t s = 0; s <= a.max_c_; ++s)
        if (!(a.horiz(r, s) == b.horiz(r, s)) || !(a.vert(r, s) == b.vert(r, s))) return false;
    return true;
  }

 private:
  void check_shape(const char* what, const Cell& cell, const RatMatrix& m, std::size_t rows_expected) const {
    const auto [r, s] = cell;
    if (r > max_r_ || s > max_c_ || m.rows() != rows_expected || m.cols() != dim(r, s))
      throw DimensionError(std::string(what) + " map at (" + std::to_string(r) + "," + std::to_string(s) +
                           ") has shape " + m.shape() + ", expected " + std::to_string(rows_expected) + "x" +
                           std::to_string(dim(r, s)));
  }

  std::size_t max_r_ = 0;
  std::size_t max_c_ = 0;
  Grid<std::size_t> dims_;
  std::map<Cell, RatMatrix> horiz_;
  std::map<Cell, RatMatrix> vert_;
};

enum class Axis { column, row };

inline const char* to_string(Axis a) { return a == Axis::column ? "col" : "row"; }

/// Coordinates of Tⁿ = ⊕_{r+s=n} K^{r,s}: summands by increasing r.
struct TotalLayout {
  std::vector<std::map<std::size_t, std::size_t>> offset;  // offset[n][r]
  std::vector<std::size_t> dims;
};

inline TotalLayout total_layout(const DoubleComplex& k) {
  TotalLayout lay;
  const std::size_t top = k.max_r() + k.max_c();
  lay.offset.resize(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    std::size_t total = 0;
    for (std::size_t r = 0; r <= std::min(n, k.max_r()); ++r) {
      lay.offset[n][r] = total;
      total += k.dim(r, n - r);
    }
    lay.dims.push_back(total);
  }
  return lay;
}

/// Tot(K) with D = horiz + (−1)^r vert on K^{r,s}.
inline CochainComplex total_complex(const DoubleComplex& k) {
  k.validate();
  const TotalLayout lay = total_layout(k);
  const std::size_t top = lay.dims.size() - 1;
  std::map<int, RatMatrix> diffs;
  for (std::size_t n = 0; n < top; ++n) {
    RatMatrix d(lay.dims[n + 1], lay.dims[n]);
    for (const auto& [r, col0] : lay.offset[n]) {
      const std::size_t s = n - r;
      if (k.dim(r, s) == 0) continue;
      if (r + 1 <= k.max_r() && k.dim(r + 1, s) > 0) place_block(d, k.horiz(r, s), lay.offset[n + 1].at(r + 1), col0);
      if (k.dim(r, s + 1) > 0) {
        const RatMatrix v = k.vert(r, s);
        place_block(d, r % 2 == 0 ? v : -v, lay.offset[n + 1].at(r), col0);
      }
    }
    diffs.emplace(static_cast<int>(n), std::move(d));
  }
  return CochainComplex(0, lay.dims, std::move(diffs));
}

struct PageCell {
  std::size_t dim = 0;
  Subspace representatives;  // inside T^{p+q}
};

/// Pages E_1 … E_R of one of the two spectral sequences of a double complex.
/// Cells are indexed in filtration coordinates: for the column axis
/// (p, q) = (r, s); for the row axis (p, q) = (s, r).
struct SpectralPages {
  Axis filtration_axis = Axis::column;
  std::vector<Grid<PageCell>> pages;       // pages[k] is E_{k+1}
  std::vector<Grid<std::size_t>> d_ranks;  // d_ranks[k](p,q): rank of d_{k+1} leaving (p,q)
  Grid<std::size_t> limit;                 // E_∞ dimensions
  std::size_t stable_page = 1;

  std::size_t last_page() const noexcept { return pages.size(); }
  const Grid<PageCell>& page(std::size_t r) const { return pages.at(r - 1); }
  std::size_t dim(std::size_t r, long p, long q) const {
    const auto& g = page(r);
    return g.contains(p, q) ? g(std::size_t(p), std::size_t(q)).dim : 0;
  }
  std::size_t rank_out(std::size_t r, long p, long q) const {
    const auto& g = d_ranks.at(r - 1);
    return g.contains(p, q) ? g(std::size_t(p), std::size_t(q)) : 0;
  }
  /// Rank of d_r arriving at (p,q), i.e. leaving (p−r, q+r−1).
  std::size_t rank_in(std::size_t r, long p, long q) const {
    return rank_out(r, p - long(r), q + long(r) - 1);
  }
};

/// Descending filtration F⁰ ⊇ … ⊇ F^{n+1} of Hⁿ(Tot), in the coordinates
/// fixed by `SpectralEngine::cohomology_basis`.
struct FiltrationChain {
  int n = 0;
  std::vector<Subspace> spaces;  // spaces[p] = F^p, p = 0 … n+1

  std::size_t ambient_dim() const { return spaces.empty() ? 0 : spaces.front().ambient_dim(); }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& s : spaces) d.push_back(s.dim());
    return d;
  }
};

/// Filtered total complex with memoized approximation subspaces
///   Z_r^p(n) = {x ∈ F^p Tⁿ : Dx ∈ F^{p+r} Tⁿ⁺¹}.
class SpectralEngine {
 public:
  static constexpr long infinity = -1;

  SpectralEngine(const DoubleComplex& k, Axis axis)
      : axis_(axis), tot_(total_complex(k)), layout_(total_layout(k)), max_r_(k.max_r()), max_c_(k.max_c()) {
    level_.resize(layout_.dims.size());
    for (std::size_t n = 0; n < layout_.dims.size(); ++n)
      for (const auto& [r, off] : layout_.offset[n])
        for (std::size_t i = 0; i < k.dim(r, n - r); ++i) level_[n].push_back(axis == Axis::column ? r : n - r);
  }

  const CochainComplex& total() const noexcept { return tot_; }
  Axis axis() const noexcept { return axis_; }
  std::size_t top_degree() const noexcept { return layout_.dims.size() - 1; }
  std::size_t max_p() const noexcept { return axis_ == Axis::column ? max_r_ : max_c_; }
  std::size_t max_q() const noexcept { return axis_ == Axis::column ? max_c_ : max_r_; }
  /// Pages beyond this index are all equal to E_∞.
  std::size_t stabilization_bound() const noexcept { return max_r_ + max_c_ + 2; }

  std::size_t total_dim(long n) const { return n < 0 || n > long(top_degree()) ? 0 : layout_.dims[n]; }

  /// F^p Tⁿ: coordinates whose filtration level is ≥ p.
  Subspace filtration(long p, long n) const {
    const std::size_t len = total_dim(n);
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < len; ++i)
      if (long(level_[n][i]) >= p) coords.push_back(i);
    return Subspace::coordinate(len, coords);
  }

  /// Z_r^p(n); r = infinity gives the cycles in F^p.
  const Subspace& approx(long r, long p, long n) {
    const auto key = std::make_tuple(r, p, n);
    if (auto it = z_cache_.find(key); it != z_cache_.end()) return it->second;
    const Subspace fp = filtration(p, n);
    const RatMatrix d = differential(n);
    const Subspace target = r == infinity ? Subspace(total_dim(n + 1)) : filtration(p + r, n + 1);
    Subspace z = subspace_intersect(fp, preimage(d, target));
    return z_cache_.emplace(key, std::move(z)).first->second;
  }

  /// Denominator of E_r^{p,q}: Z_{r−1}^{p+1} + D Z_{r−1}^{p−r+1}.
  Subspace boundary(long r, long p, long n) {
    const Subspace& lower = approx(r - 1, p + 1, n);
    if (n == 0) return lower;
    const Subspace& source = approx(r - 1, p - r + 1, n - 1);
    return subspace_sum(lower, image(differential(n - 1), source));
  }

  PageCell page_cell(long r, long p, long q) {
    const long n = p + q;
    const Subspace& z = approx(r, p, n);
    const Subspace b = boundary(r, p, n);
    Subspace reps = complement_in(z, b);
    return {reps.dim(), std::move(reps)};
  }

  /// Rank of d_r: E_r^{p,q} → E_r^{p+r,q−r+1}.
  std::size_t d_rank(long r, long p, long q) {
    const long n = p + q;
    const long tp = p + r;
    const long tq = q - r + 1;
    if (tq < 0 || tp > long(max_p()) || n + 1 > long(top_degree())) return 0;
    const Subspace& z = approx(r, p, n);
    if (z.is_zero()) return 0;
    const Subspace den = boundary(r, tp, n + 1);
    return subspace_sum(den, image(differential(n), z)).dim() - den.dim();
  }

  /// E_∞^{p,q} computed from cycles and boundaries directly, not from pages.
  std::size_t limit_dim(long p, long q) {
    const long n = p + q;
    const Subspace& z = approx(infinity, p, n);
    const Subspace& z_next = approx(infinity, p + 1, n);
    const Subspace bounds = n == 0 ? Subspace(total_dim(0))
                                   : subspace_intersect(column_space(differential(n - 1)), filtration(p, n));
    return z.dim() - subspace_sum(z_next, bounds).dim();
  }

  /// Basis of ker Dⁿ as [boundaries; canonical complement]; the trailing
  /// block gives the coordinates used for Hⁿ.
  struct CohomologyBasis {
    std::size_t boundary_dim = 0;
    std::size_t cohomology_dim = 0;
    std::optional<CoordinateSystem> coords;
  };

  const CohomologyBasis& cohomology_basis(long n) {
    if (auto it = h_cache_.find(n); it != h_cache_.end()) return it->second;
    const Subspace cycles = kernel_basis(differential(n));
    const Subspace bounds = n == 0 ? Subspace(total_dim(0)) : column_space(differential(n - 1));
    const Subspace comp = complement_in(cycles, bounds);
    CohomologyBasis cb;
    cb.boundary_dim = bounds.dim();
    cb.cohomology_dim = comp.dim();
    cb.coords.emplace(bounds.basis().vstack(comp.basis()));
    return h_cache_.emplace(n, std::move(cb)).first->second;
  }

  /// Image of a subspace of cycles in Hⁿ coordinates.
  Subspace to_cohomology(const Subspace& cycles, long n) {
    const CohomologyBasis& cb = cohomology_basis(n);
    const std::size_t h = cb.cohomology_dim;
    if (cycles.is_zero() || h == 0) return Subspace(h);
    const RatMatrix c = cb.coords->coordinates(cycles.basis());
    RatMatrix tail(c.rows(), h);
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < h; ++j) tail(i, j) = c(i, cb.boundary_dim + j);
    return Subspace::span(tail);
  }

  RatMatrix differential(long n) const {
    if (n < 0) return RatMatrix(total_dim(0), 0);
    return tot_.differential(static_cast<int>(n));
  }

 private:
  Axis axis_;
  CochainComplex tot_;
  TotalLayout layout_;
  std::size_t max_r_;
  std::size_t max_c_;
  std::vector<std::vector<std::size_t>> level_;
  std::map<std::tuple<long, long, long>, Subspace> z_cache_;
  std::map<long, CohomologyBasis> h_cache_;
};

inline SpectralPages spectral_pages(const DoubleComplex& k, Axis axis) {
  SpectralEngine eng(k, axis);
  SpectralPages sp;
  sp.filtration_axis = axis;
  const std::size_t pmax = eng.max_p();
  const std::size_t qmax = eng.max_q();
  const std::size_t last = eng.stabilization_bound();
  for (std::size_t r = 1; r <= last; ++r) {
    Grid<PageCell> page(pmax, qmax);
    Grid<std::size_t> ranks(pmax, qmax, 0);
    for (std::size_t p = 0; p <= pmax; ++p)
      for (std::size_t q = 0; q <= qmax; ++q) {
        page(p, q) = eng.page_cell(long(r), long(p), long(q));
        ranks(p, q) = eng.d_rank(long(r), long(p), long(q));
      }
    sp.pages.push_back(std::move(page));
    sp.d_ranks.push_back(std::move(ranks));
  }
  sp.limit = Grid<std::size_t>(pmax, qmax, 0);
  for (std::size_t p = 0; p <= pmax; ++p)
    for (std::size_t q = 0; q <= qmax; ++q) sp.limit(p, q) = eng.limit_dim(long(p), long(q));

  sp.stable_page = 1;
  for (std::size_t r = 1; r <= last; ++r) {
    const auto& g = sp.d_ranks[r - 1];
    for (std::size_t p = 0; p <= pmax; ++p)
      for (std::size_t q = 0; q <= qmax; ++q)
        if (g(p, q) != 0) sp.stable_page = r + 1;
  }
  return sp;
}

/// True iff every differential d_{r'} with r' ≥ r vanishes.
inline bool degenerates_at(const SpectralPages& sp, std::size_t r) {
  if (r == 0) throw DimensionError("degenerates_at: pages are indexed from 1");
  return sp.stable_page <= r;
}

/// F^p Hⁿ = (Z_∞^p + im D) / im D for p = 0 … n+1.
inline FiltrationChain filtration_on_total(SpectralEngine& eng, int n) {
  if (n < 0 || std::size_t(n) > eng.top_degree())
    throw DimensionError("filtration_on_total: degree " + std::to_string(n) + " outside [0, " +
                         std::to_string(eng.top_degree()) + "]");
  FiltrationChain fc;
  fc.n = n;
  for (long p = 0; p <= n + 1; ++p) fc.spaces.push_back(eng.to_cohomology(eng.approx(SpectralEngine::infinity, p, n), n));
  return fc;
}

inline FiltrationChain filtration_on_total(const DoubleComplex& k, Axis axis, int n) {
  SpectralEngine eng(k, axis);
  return filtration_on_total(eng, n);
}

namespace detail {
inline void check_pair(const FiltrationChain& f, const FiltrationChain& g, const char* op) {
  if (f.n != g.n)
    throw DimensionError(std::string(op) + ": degrees differ (" + std::to_string(f.n) + " vs " + std::to_string(g.n) + ")");
  if (f.spaces.size() != std::size_t(f.n) + 2 || g.spaces.size() != std::size_t(g.n) + 2)
    throw DimensionError(std::string(op) + ": filtration must have n+2 steps");
  if (f.ambient_dim() != g.ambient_dim())
    throw DimensionError(std::string(op) + ": ambient dimensions differ");
}
}  // namespace detail

/// Hⁿ = F^p ⊕ G^{n+1−p} for every 0 ≤ p ≤ n+1.
inline bool opposite_check(const FiltrationChain& f, const FiltrationChain& g) {
  detail::check_pair(f, g, "opposite_check");
  const std::size_t top = std::size_t(f.n) + 1;
  for (std::size_t p = 0; p <= top; ++p)
    if (!is_complementary(f.spaces[p], g.spaces[top - p])) return false;
  return true;
}

/// Hypotheses of the oppositeness criterion: Hⁿ = F^p + G^{n+1−p} for all p,
/// and both filtrations satisfy dim X^p + dim X^{n+1−p} = dim Hⁿ.
inline bool dimension_criterion(const FiltrationChain& f, const FiltrationChain& g) {
  detail::check_pair(f, g, "dimension_criterion");
  const std::size_t top = std::size_t(f.n) + 1;
  const std::size_t h = f.ambient_dim();
  for (std::size_t p = 0; p <= top; ++p) {
    if (!subspace_sum(f.spaces[p], g.spaces[top - p]).is_full()) return false;
    if (f.spaces[p].dim() + f.spaces[top - p].dim() != h) return false;
    if (g.spaces[p].dim() + g.spaces[top - p].dim() != h) return false;
  }
  return true;
}

}  // namespace hodge
