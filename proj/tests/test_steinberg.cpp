#include <gtest/gtest.h>

#include "hodge/steinberg.hpp"

namespace hodge::steinberg {
namespace {

// Four-indicator sum over Künneth pairs, written directly from the degree
// shifts of each constituent.
std::size_t four_indicator(int d, int dp, const InducedSpectrum& m, int r, int s) {
  std::size_t total = 0;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= dp; ++j) {
      if (i + j != s) continue;
      total += (r == i + j) ? 1 : 0;
      total += (r == (d - i) + j) ? m.m10 : 0;
      total += (r == i + (dp - j)) ? m.m01 : 0;
      total += (r == (d - i) + (dp - j)) ? m.m11 : 0;
    }
  return total;
}

std::vector<InducedSpectrum> spectra(std::size_t max_m) {
  std::vector<InducedSpectrum> out;
  for (std::size_t a = 0; a <= max_m; ++a)
    for (std::size_t b = 0; b <= max_m; ++b)
      for (std::size_t c = 0; c <= max_m; ++c) out.push_back({a, b, c});
  return out;
}

TEST(Label, Construction) {
  EXPECT_EQ(SteinbergLabel(3, {1, 3}).mask(), 0b101u);
  EXPECT_EQ(SteinbergLabel::trivial(3).mask(), 0b111u);
  EXPECT_EQ(SteinbergLabel::steinberg(3).mask(), 0u);
  EXPECT_EQ(SteinbergLabel::for_degree(4, 1), SteinbergLabel(4, {1, 2, 3}));
  EXPECT_EQ(SteinbergLabel::for_degree(4, 4), SteinbergLabel::steinberg(4));
  EXPECT_EQ(SteinbergLabel::for_degree(4, 0), SteinbergLabel::trivial(4));
  EXPECT_THROW(SteinbergLabel(2, {3}), ValidationError);
  EXPECT_THROW(SteinbergLabel(2, std::uint64_t{4}), ValidationError);
  EXPECT_THROW(SteinbergLabel(0, std::uint64_t{0}), ValidationError);
  EXPECT_THROW(SteinbergLabel::for_degree(2, 3), ValidationError);
}

TEST(Delta, Examples) {
  const SteinbergLabel i(3, {1, 2});
  EXPECT_EQ(delta(i, i), 0);
  EXPECT_EQ(delta(SteinbergLabel::steinberg(2), SteinbergLabel(2, {1, 2})), 2);
  EXPECT_EQ(delta(SteinbergLabel(3, {1, 3}), SteinbergLabel(3, {2, 3})), 2);
  EXPECT_THROW(delta(SteinbergLabel(2, {1}), SteinbergLabel(3, {1})), DimensionError);
}

TEST(Ext, Examples) {
  const SteinbergLabel i(3, {2}), j(2, {1});
  EXPECT_EQ(ext_dim(i, j, i, j, 0), 1);
  EXPECT_EQ(ext_dim(SteinbergLabel::trivial(3), j, SteinbergLabel::steinberg(3), j, 3), 1);
  EXPECT_EQ(ext_dim(SteinbergLabel::trivial(3), j, SteinbergLabel::steinberg(3), j, 2), 0);
  EXPECT_EQ(ext_dim(SteinbergLabel::trivial(3), j, SteinbergLabel::steinberg(3), j, 4), 0);
  EXPECT_THROW(ext_dim(i, j, i, SteinbergLabel(3, {1}), 0), DimensionError);
}

TEST(Ext, SupportedInOneDegreeExhaustive) {
  std::size_t tuples = 0;
  for (int d = 1; d <= 3; ++d)
    for (int dp = 1; dp <= 3; ++dp) {
      const std::uint64_t nd = std::uint64_t{1} << d, ndp = std::uint64_t{1} << dp;
      for (std::uint64_t i1 = 0; i1 < nd; ++i1)
        for (std::uint64_t i2 = 0; i2 < nd; ++i2)
          for (std::uint64_t j1 = 0; j1 < ndp; ++j1)
            for (std::uint64_t j2 = 0; j2 < ndp; ++j2) {
              const SteinbergLabel a(d, i1), b(dp, j1), c(d, i2), e(dp, j2);
              int nonzero = 0, value = 0;
              for (int deg = 0; deg <= 2 * (d + dp) + 1; ++deg) {
                const int v = ext_dim(a, b, c, e, deg);
                if (v != 0) {
                  ++nonzero;
                  value = v;
                }
              }
              ASSERT_EQ(nonzero, 1);
              ASSERT_EQ(value, 1);
              ++tuples;
            }
    }
  EXPECT_GE(tuples, 4096u);
}

TEST(E2, Examples) {
  for (const auto& m : spectra(2)) {
    EXPECT_EQ(e2_dim(2, 2, m, 0, 0), 1u);
    EXPECT_EQ(e2_dim(2, 2, m, 0, 4), m.m11);
    EXPECT_EQ(e2_dim(2, 2, m, 2, 2), 3 + m.m10 + m.m01 + 3 * m.m11);
    EXPECT_EQ(e2_dim(2, 2, m, 4, 4), 1u);
  }
  EXPECT_EQ(e2_dim(2, 2, {}, -1, 0), 0u);
  EXPECT_THROW(e2_dim(0, 2, {}, 0, 0), ValidationError);
}

TEST(E2, TableForCurves) {
  const E2Table t = e2_table(1, 1, {});
  for (std::size_t r = 0; r <= 2; ++r)
    for (std::size_t s = 0; s <= 2; ++s) {
      const std::size_t expected = (r == s) ? (r == 1 ? 2 : 1) : 0;
      EXPECT_EQ(t.grid(r, s), expected) << r << "," << s;
    }
}

TEST(E2, OddCellsVanishForEvenDims) {
  for (int d = 2; d <= 4; d += 2)
    for (int dp = 2; dp <= 6; dp += 2) {
      const E2Table t = e2_table(d, dp, {});
      for (std::size_t r = 0; r <= t.extent(); ++r)
        for (std::size_t s = 0; s <= t.extent(); ++s)
          if ((r + s) % 2 == 1 && r != s) {
            EXPECT_EQ(t.grid(r, s), 0u);
          }
    }
}

TEST(E2, MatchesFourIndicatorSumExhaustive) {
  for (int d = 1; d <= 5; ++d)
    for (int dp = 1; dp <= 5; ++dp)
      for (const auto& m : spectra(3))
        for (int r = -1; r <= d + dp + 2; ++r)
          for (int s = -1; s <= d + dp + 2; ++s) ASSERT_EQ(e2_dim(d, dp, m, r, s), four_indicator(d, dp, m, r, s));
}

TEST(E2, StructureExhaustive) {
  for (int d = 1; d <= 5; ++d)
    for (int dp = 1; dp <= 5; ++dp)
      for (const auto& m : spectra(3)) {
        const E2Table t = e2_table(d, dp, m);
        const long top = long(t.extent());
        for (long r = 0; r <= top + 1; ++r)
          for (long s = 0; s <= top + 1; ++s) {
            ASSERT_EQ(t.at(r, s), t.at(s, r));
            if (r > top || s > top) {
              ASSERT_EQ(e2_dim(d, dp, m, int(r), int(s)), 0u);
            }
          }
        const auto b = betti_numbers(t);
        ASSERT_EQ(b.size(), std::size_t(2 * top + 1));
        EXPECT_EQ(b.front(), 1u);
        EXPECT_EQ(b.back(), 1u);
        long chi = 0;
        for (std::size_t n = 0; n < b.size(); ++n) {
          ASSERT_EQ(b[n], b[b.size() - 1 - n]);
          ASSERT_EQ(b[n], betti(d, dp, m, int(n)));
          chi += (n % 2 == 0 ? 1 : -1) * long(b[n]);
          const auto f = covering_filtration_dims(t, int(n));
          ASSERT_EQ(f.front(), b[n]);
          ASSERT_EQ(f.back(), 0u);
          for (std::size_t i = 0; i + 1 < f.size(); ++i) {
            ASSERT_GE(f[i], f[i + 1]);
            ASSERT_EQ(f[i] + f[n + 1 - i], b[n]);
          }
        }
        const long sign_d = d % 2 == 0 ? 1 : -1, sign_dp = dp % 2 == 0 ? 1 : -1;
        EXPECT_EQ(chi, long(d + 1) * long(dp + 1) *
                           (1 + sign_d * long(m.m10) + sign_dp * long(m.m01) + sign_d * sign_dp * long(m.m11)));
      }
}

TEST(Betti, Examples) {
  EXPECT_EQ(betti_numbers(e2_table(1, 1, {})), (std::vector<std::size_t>{1, 0, 2, 0, 1}));
  EXPECT_EQ(betti(3, 2, {1, 2, 3}, 0), 1u);
  EXPECT_EQ(betti(3, 2, {1, 2, 3}, 10), 1u);
  EXPECT_EQ(betti(3, 2, {1, 2, 3}, 11), 0u);
  EXPECT_EQ(betti(3, 2, {1, 2, 3}, -1), 0u);
}

TEST(Filtration, Examples) {
  EXPECT_EQ(covering_filtration_dims(2, 3, {1, 1, 1}, 0), (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(covering_filtration_dims(1, 1, {}, 2), (std::vector<std::size_t>{2, 2, 0, 0}));
  EXPECT_THROW(covering_filtration_dims(1, 1, {}, 5), DimensionError);
  const BettiProfile p = betti_profile(1, 1, {});
  ASSERT_EQ(p.filtration.size(), 5u);
  EXPECT_EQ(p.filtration[4], (std::vector<std::size_t>{1, 1, 1, 0, 0, 0}));
}

TEST(Stated, RejectsUnstatedCases) {
  EXPECT_THROW(stated_table_diff(1, 2, {}), ValidationError);
  EXPECT_THROW(stated_table_diff(2, 3, {}), ValidationError);
  EXPECT_THROW(stated_table_diff(4, 2, {}), ValidationError);
  EXPECT_NO_THROW(stated_table_diff(2, 4, {}));
}

TEST(Stated, DiffForEqualDimensions) {
  const InducedSpectrum m{1, 2, 3};
  const StatedTableDiff diff = stated_table_diff(2, 2, m);
  EXPECT_TRUE(diff.agrees_at(0, 0));
  // the top corner matches only when m10 = m01 = 0
  EXPECT_EQ(diff.stated(4, 4), 1 + m.m10 + m.m01);
  EXPECT_FALSE(diff.agrees_at(4, 4));
  EXPECT_TRUE(stated_table_diff(2, 2, {0, 0, 3}).agrees_at(4, 4));
  EXPECT_EQ(diff.stated(0, 0), 1u);
  EXPECT_EQ(diff.stated(2, 2), 1 + m.m10 + m.m01 + m.m11);
  EXPECT_EQ(diff.computed.grid(2, 2), 3 + m.m10 + m.m01 + 3 * m.m11);
  EXPECT_FALSE(diff.agrees_at(2, 2));
  const auto it = std::find_if(diff.cell_diffs.begin(), diff.cell_diffs.end(),
                               [](const CellDiff& c) { return c.r == 2 && c.s == 2; });
  ASSERT_NE(it, diff.cell_diffs.end());
  EXPECT_EQ(it->diff(), 2 + 2 * long(m.m11));
  EXPECT_EQ(stated_table_diff(2, 2, m).cell_diffs, diff.cell_diffs);
}

TEST(Stated, BettiDiffWithEmptySpectrum) {
  const StatedTableDiff diff = stated_table_diff(2, 2, {});
  EXPECT_EQ(diff.betti_computed[2], 2u);
  EXPECT_EQ(diff.betti_stated[2], 1u);
  EXPECT_EQ(diff.betti_stated[0], 1u);
  EXPECT_FALSE(diff.betti_diffs.empty());
  EXPECT_EQ(stated_betti(2, 2, {1, 1, 1}, 4), 5u * 3 + 1);
}

}  // namespace
}  // namespace hodge::steinberg
