#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "vvckit/dispatch.hpp"
#include "vvckit/interp.hpp"

namespace vvckit {
namespace {

bool planes_equal(const Plane& a, const Plane& b) {
  if (a.width() != b.width() || a.height() != b.height()) return false;
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      if (a.at(x, y) != b.at(x, y)) return false;
  return true;
}

TEST(LumaTable, MatchesPublishedRows) {
  const LumaFilterTable& t = luma_table_default();
  for (int p = 0; p < 16; ++p)
    for (int i = 0; i < 8; ++i) EXPECT_EQ(t.row(p)[i], oracle::kLumaRows[p][i]) << "row " << p << " tap " << i;
  for (int i = 0; i < 8; ++i) EXPECT_EQ(t.alt_half_pel()[i], oracle::kLumaHalfPelAlt[i]);
  EXPECT_EQ(t.row(4), (LumaRow{-1, 4, -10, 58, 17, -5, 1, 0}));
  EXPECT_EQ(t.row(8, true), (LumaRow{0, 3, 9, 20, 20, 9, 3, 0}));
  EXPECT_EQ(t.row(15), (LumaRow{0, 1, -2, 4, 63, -3, 1, 0}));
}

TEST(LumaTable, StructuralInvariants) {
  const LumaFilterTable& t = luma_table_default();
  for (int p = 0; p < 16; ++p) {
    int sum = 0, abs_sum = 0;
    for (int16_t c : t.row(p)) {
      sum += c;
      abs_sum += std::abs(c);
    }
    EXPECT_EQ(sum, 64);
    // Depth-10 intermediates fit 16 bits.
    EXPECT_LT(1023 * abs_sum >> 2, 32768);
  }
  for (int p = 1; p < 16; ++p)
    for (int i = 0; i < 8; ++i) EXPECT_EQ(t.row(p)[i], t.row(16 - p)[7 - i]);
  for (int p = 1; p <= 4; ++p) EXPECT_EQ(t.row(p)[7], 0);
  for (int p = 12; p <= 15; ++p) EXPECT_EQ(t.row(p)[0], 0);
  EXPECT_EQ(t.alt_half_pel()[0], 0);
  EXPECT_EQ(t.alt_half_pel()[7], 0);
}

TEST(LumaTable, ValidationRejectsBrokenTables) {
  auto rows = luma_table_default().rows();
  const auto alt = luma_table_default().alt_half_pel();
  auto bad = rows;
  bad[3][3] += 1;
  EXPECT_THROW(LumaFilterTable(bad, alt), ContractViolation);  // sum
  bad = rows;
  bad[2][2] += 1;
  bad[2][3] -= 1;
  EXPECT_THROW(LumaFilterTable(bad, alt), ContractViolation);  // symmetry
  auto bad_alt = alt;
  bad_alt[0] = 1;
  bad_alt[3] -= 1;
  EXPECT_THROW(LumaFilterTable(rows, bad_alt), ContractViolation);
}

TEST(EffectiveTaps, FromTheTable) {
  EXPECT_EQ(effective_taps(4, false), 7);
  EXPECT_EQ(effective_taps(8, false), 8);
  EXPECT_EQ(effective_taps(8, true), 6);
  // Positions 1 and 15 also have f0 = 0 (or f7 = 0) on the other side.
  EXPECT_EQ(effective_taps(1, false), 6);
  EXPECT_EQ(effective_taps(15, false), 6);
  for (int p : {2, 3, 4, 12, 13, 14}) EXPECT_EQ(effective_taps(p, false), 7) << p;
  for (int p = 5; p <= 11; ++p) EXPECT_EQ(effective_taps(p, false), 8) << p;
  EXPECT_EQ(effective_taps(0, false), 1);
}

TEST(SelectKernel, SymmetricSharingAndTapPaths) {
  const InterpSelection a = select_interp_kernel({1, 0, false}, kDepth8);
  const InterpSelection b = select_interp_kernel({15, 0, false}, kDepth8);
  EXPECT_EQ(a.id, b.id);
  EXPECT_NE(a.reverse_h, b.reverse_h);
  EXPECT_TRUE(select_interp_kernel({0, 0, false}, kDepth8).id.is_copy());
  EXPECT_NE(select_interp_kernel({3, 0, false}, kDepth8).id, select_interp_kernel({3, 0, false}, kDepth10).id);
  EXPECT_NE(select_interp_kernel({3, 0, false}, kDepth8).id.key(),
            select_interp_kernel({3, 0, false}, kDepth10).id.key());
  for (int p : {1, 2, 3, 4, 12, 13, 14, 15}) {
    EXPECT_EQ(select_interp_kernel({p, 0, false}, kDepth8).id.h.path, TapPath::kTap7) << p;
    EXPECT_EQ(select_interp_kernel({0, p, false}, kDepth8).id.v.path, TapPath::kTap7) << p;
  }
  for (int p = 5; p <= 11; ++p) EXPECT_EQ(select_interp_kernel({p, 0, false}, kDepth8).id.h.path, TapPath::kTap8);
  EXPECT_EQ(select_interp_kernel({8, 8, true}, kDepth8).id.h.path, TapPath::kTap6);
  // hpel_alt only matters at the half-pel position.
  EXPECT_EQ(select_interp_kernel({3, 8, true}, kDepth8).id.h, select_interp_kernel({3, 8, false}, kDepth8).id.h);

  std::set<uint32_t> keys;
  for (int alt = 0; alt < 2; ++alt)
    for (int fy = 0; fy < 16; ++fy)
      for (int fx = 0; fx < 16; ++fx) keys.insert(select_interp_kernel({fx, fy, alt != 0}, kDepth8).id.key());
  EXPECT_EQ(keys.size(), 98u);  // 10 axis classes squared minus the two mixed half-pel pairs
}

TEST(InterpLuma, OneDimensionalHalfPel) {
  Plane src = plane_new(16, 1, kDepth8);
  // Samples 0..7 under the position-8 taps (window -3..+4 around x = 3).
  for (int x = 0; x < 16; ++x) src.at(x, 0) = static_cast<uint16_t>(x);
  const Plane out = interp_luma(src, {3, 0, 1, 1}, {8, 0, false});
  int acc = 0;
  for (int i = 0; i < 8; ++i) acc += oracle::kLumaRows[8][i] * i;
  EXPECT_EQ(acc, 224);
  EXPECT_EQ(out.at(0, 0), (224 + 32) >> 6);
  EXPECT_EQ(out.at(0, 0), 4);
}

TEST(InterpBilinear, HalfPosition) {
  Plane src = plane_new(2, 1, kDepth8);
  src.at(0, 0) = 0;
  src.at(1, 0) = 64;
  EXPECT_EQ(interp_bilinear(src, {0, 0, 1, 1}, {8, 0, false}).at(0, 0), 32);
}

class InterpAllTiers : public ::testing::TestWithParam<int> {};

TEST_P(InterpAllTiers, ConstantPlanesArePreserved) {
  const BitDepth d(GetParam());
  for (VariantTier tier : detect_capabilities()) {
    const KernelTable k = build_registry(tier);
    for (int value : {0, 100, d.max_sample()}) {
      Plane src = plane_new(40, 30, d);
      std::fill(src.data().begin(), src.data().end(), static_cast<uint16_t>(value));
      for (int alt = 0; alt < 2; ++alt)
        for (int fy = 0; fy < 16; ++fy)
          for (int fx = 0; fx < 16; ++fx) {
            const Plane o = interp_luma(src, {0, 5, 17, 9}, {fx, fy, alt != 0}, luma_table_default(), k);
            for (int y = 0; y < o.height(); ++y)
              for (int x = 0; x < o.width(); ++x) ASSERT_EQ(o.at(x, y), value);
            const Plane b = interp_bilinear(src, {3, 20, 11, 10}, {fx, fy, false}, k);
            ASSERT_EQ(b.at(10, 9), value);
          }
      for (int fy = 0; fy < 32; ++fy)
        for (int fx = 0; fx < 32; ++fx) {
          const Plane o = interp_chroma(src, {39 - 8, 0, 8, 8}, {fx, fy, false}, chroma_table_default(), k);
          for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x) ASSERT_EQ(o.at(x, y), value);
        }
    }
  }
}

TEST_P(InterpAllTiers, SpecializedPathsMatchNaiveFullTap) {
  const BitDepth d(GetParam());
  SplitMix64 g(GetParam());
  Plane src = plane_new(48, 40, d);
  for (VariantTier tier : detect_capabilities()) {
    const KernelTable k = build_registry(tier);
    for (int trial = 0; trial < 400; ++trial) {
      fill_random(src, g.next());
      const int w = g.uniform(1, 24), h = g.uniform(1, 12);
      const BlockRect b{g.uniform(0, 48 - w), g.uniform(0, 40 - h), w, h};
      const int fx = g.uniform(0, 15), fy = g.uniform(0, 15);
      const bool alt = g.chance(50);
      ASSERT_TRUE(planes_equal(interp_luma(src, b, {fx, fy, alt}, luma_table_default(), k),
                               oracle::luma(src, b, fx, fy, alt)))
          << tier_name(tier) << " fx=" << fx << " fy=" << fy << " alt=" << alt;
      const int cx = g.uniform(0, 31), cy = g.uniform(0, 31);
      ASSERT_TRUE(planes_equal(interp_chroma(src, b, {cx, cy, false}, chroma_table_default(), k),
                               oracle::chroma(src, b, cx, cy, chroma_table_default().rows())));
      ASSERT_TRUE(planes_equal(interp_bilinear(src, b, {fx, fy, false}, k), oracle::bilinear(src, b, fx, fy)));
    }
  }
}

TEST_P(InterpAllTiers, OutputsStayInRangeOnExtremeInput) {
  const BitDepth d(GetParam());
  Plane src = plane_new(32, 32, d);
  // Checkerboard of 0 / max maximizes overshoot.
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) src.at(x, y) = ((x + y) & 1) ? d.max_sample() : 0;
  for (int fy = 0; fy < 16; ++fy)
    for (int fx = 0; fx < 16; ++fx) {
      const Plane o = interp_luma(src, {4, 4, 16, 16}, {fx, fy, false});
      ASSERT_TRUE(planes_equal(o, oracle::luma(src, {4, 4, 16, 16}, fx, fy, false)));
      for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) ASSERT_LE(o.at(x, y), d.max_sample());
    }
}

INSTANTIATE_TEST_SUITE_P(Depths, InterpAllTiers, ::testing::Values(8, 10));

TEST(InterpLuma, CopyAndBounds) {
  Plane src = plane_new(20, 20, kDepth10);
  fill_random(src, 5);
  const Plane o = interp_luma(src, {3, 4, 9, 7}, {0, 0, false});
  ASSERT_TRUE(planes_equal(o, src.crop({3, 4, 9, 7})));
  EXPECT_THROW(interp_luma(src, {15, 0, 9, 7}, {1, 1, false}), ContractViolation);
  EXPECT_THROW(interp_luma(src, {0, 0, 4, 4}, {16, 0, false}), ContractViolation);
  EXPECT_THROW(interp_chroma(src, {0, 0, 4, 4}, {32, 0, false}), ContractViolation);
}

TEST(ChromaTable, ImpulseRecoversCoefficients) {
  const ChromaFilterTable& t = chroma_table_default();
  Plane src = plane_new(16, 1, kDepth8);
  src.at(8, 0) = 64;
  for (int p = 1; p < 32; ++p) {
    // Output at x sees src[x - 1 + i] * c[i]; the impulse at 8 picks c[8 - x + 1].
    const Plane o = interp_chroma(src, {6, 0, 4, 1}, {p, 0, false});
    for (int x = 6; x < 10; ++x) {
      const int c = t.row(p)[8 - x + 1];
      EXPECT_EQ(o.at(x - 6, 0), std::clamp((64 * c + 32) >> 6, 0, 255)) << "p=" << p << " x=" << x;
    }
  }
}

TEST(ChromaTable, InvariantsAndParsing) {
  const ChromaFilterTable& t = chroma_table_default();
  EXPECT_EQ(t.row(0), (ChromaRow{0, 64, 0, 0}));
  for (int p = 0; p < 32; ++p) EXPECT_EQ(t.row(p)[0] + t.row(p)[1] + t.row(p)[2] + t.row(p)[3], 64);
  for (int p = 1; p < 32; ++p)
    for (int i = 0; i < 4; ++i) EXPECT_EQ(t.row(p)[i], t.row(32 - p)[3 - i]);

  std::stringstream ss;
  for (const auto& r : t.rows()) ss << r[0] << ' ' << r[1] << ' ' << r[2] << ' ' << r[3] << '\n';
  EXPECT_EQ(ChromaFilterTable::parse(ss).rows(), t.rows());

  std::stringstream short_table("0 64 0 0\n");
  EXPECT_THROW(ChromaFilterTable::parse(short_table), FormatError);
  std::stringstream garbage;
  for (int i = 0; i < 32; ++i) garbage << "1 2 x 4\n";
  EXPECT_THROW(ChromaFilterTable::parse(garbage), FormatError);
  std::stringstream asym;
  for (int i = 0; i < 32; ++i) asym << (i == 0 ? "0 64 0 0" : "0 60 4 0") << '\n';
  EXPECT_THROW(ChromaFilterTable::parse(asym), ContractViolation);
  EXPECT_THROW(ChromaFilterTable::load("/nonexistent/chroma.txt"), IoError);
}

}  // namespace
}  // namespace vvckit
