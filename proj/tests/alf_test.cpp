#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "vvckit/alf.hpp"
#include "vvckit/dispatch.hpp"

namespace vvckit {
namespace {

bool same_samples(const Plane& a, const Plane& b) {
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      if (a.at(x, y) != b.at(x, y)) return false;
  return true;
}

AlfLumaFilter random_luma(SplitMix64& g) {
  AlfLumaFilter f;
  for (int i = 0; i < kAlfLumaTaps; ++i) {
    f.coeff[i] = static_cast<int16_t>(g.uniform(-127, 127));
    f.clip_idx[i] = static_cast<uint8_t>(g.uniform(0, 3));
  }
  return f;
}

AlfChromaFilter random_chroma(SplitMix64& g) {
  AlfChromaFilter f;
  for (int i = 0; i < kAlfChromaTaps; ++i) {
    f.coeff[i] = static_cast<int16_t>(g.uniform(-127, 127));
    f.clip_idx[i] = static_cast<uint8_t>(g.uniform(0, 3));
  }
  return f;
}

TEST(AlfLayout, DiamondIndicesMatchOracle) {
  int luma_positions = 0, chroma_positions = 0;
  for (int dy = -3; dy <= 3; ++dy)
    for (int dx = -3; dx <= 3; ++dx) {
      EXPECT_EQ(alf_diamond_index(AlfComponent::kLuma, dx, dy), oracle::kLumaDiamond[dy + 3][dx + 3]);
      luma_positions += alf_diamond_index(AlfComponent::kLuma, dx, dy) >= 0;
    }
  for (int dy = -2; dy <= 2; ++dy)
    for (int dx = -2; dx <= 2; ++dx) {
      EXPECT_EQ(alf_diamond_index(AlfComponent::kChroma, dx, dy), oracle::kChromaDiamond[dy + 2][dx + 2]);
      chroma_positions += alf_diamond_index(AlfComponent::kChroma, dx, dy) >= 0;
    }
  EXPECT_EQ(luma_positions, 25);
  EXPECT_EQ(chroma_positions, 13);
  EXPECT_EQ(alf_diamond_index(AlfComponent::kLuma, 3, 3), -1);
}

TEST(AlfClipTable, GeometricLadder) {
  EXPECT_EQ(alf_default_clip_table(kDepth8), (AlfClipTable{128, 32, 8, 2}));
  EXPECT_EQ(alf_default_clip_table(kDepth10), (AlfClipTable{512, 128, 32, 8}));
}

TEST(AlfTranspose, PermutationsFromLayout) {
  EXPECT_EQ(alf_transpose_permutation_luma(0), (std::array<int, 12>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}));
  // Axis swap: (0,-3) -> (-3,0), which carries index 9.
  EXPECT_EQ(alf_transpose_permutation_luma(1)[0], 9);
  SplitMix64 g(4);
  for (int rep = 0; rep < 50; ++rep) {
    const AlfLumaFilter f = random_luma(g);
    EXPECT_EQ(alf_transpose_filter(f, 0), f);
    for (int t = 1; t < 4; ++t) {
      // Each of the three maps is an involution.
      EXPECT_EQ(alf_transpose_filter(alf_transpose_filter(f, t), t), f) << t;
    }
    const AlfChromaFilter c = random_chroma(g);
    for (int t = 0; t < 4; ++t) EXPECT_EQ(alf_transpose_filter(alf_transpose_filter(c, t), t), c);
  }
  for (int t = 0; t < 4; ++t) {
    auto p = alf_transpose_permutation_luma(t);
    std::sort(p.begin(), p.end());
    for (int i = 0; i < 12; ++i) EXPECT_EQ(p[i], i);
  }
}

TEST(AlfTranspose, MatchesCoordinateMapOracle) {
  // Applying the transposed filter equals evaluating the original filter on
  // the geometrically mapped neighborhood.
  auto map = [](int t, int dx, int dy) -> std::pair<int, int> {
    switch (t) {
      case 1: return {dy, dx};
      case 2: return {dx, -dy};
      case 3: return {dy, -dx};
      default: return {dx, dy};
    }
  };
  SplitMix64 g(9);
  const AlfLumaFilter f = random_luma(g);
  for (int t = 0; t < 4; ++t) {
    const AlfLumaFilter tf = alf_transpose_filter(f, t);
    for (int dy = -3; dy <= 3; ++dy)
      for (int dx = -3; dx <= 3; ++dx) {
        const int i = alf_diamond_index(AlfComponent::kLuma, dx, dy);
        if (i < 0 || i == 12) continue;
        const auto [mx, my] = map(t, dx, dy);
        const int j = alf_diamond_index(AlfComponent::kLuma, mx, my);
        EXPECT_EQ(tf.coeff[i], f.coeff[j]);
        EXPECT_EQ(tf.clip_idx[i], f.clip_idx[j]);
      }
  }
}

class AlfDepth : public ::testing::TestWithParam<int> {};

TEST_P(AlfDepth, BlockFilterMatchesNaiveDiamond) {
  const BitDepth d(GetParam());
  const AlfClipTable clips = alf_default_clip_table(d);
  SplitMix64 g(GetParam() * 11);
  Plane src = plane_new(24, 20, d);
  for (VariantTier tier : detect_capabilities()) {
    const KernelTable k = build_registry(tier);
    for (int trial = 0; trial < 300; ++trial) {
      fill_random(src, g.next());
      const BlockRect b{4 * g.uniform(0, 5), 4 * g.uniform(0, 4), 4, 4};
      const AlfLumaFilter f = random_luma(g);
      Plane got = src, want = src;
      alf_filter_block_luma(src, got, b, f, clips, k);
      oracle::alf_block(src, want, b, f.coeff, f.clip_idx, clips);
      ASSERT_TRUE(same_samples(got, want)) << tier_name(tier) << " trial " << trial;

      const AlfChromaFilter c = random_chroma(g);
      got = src;
      want = src;
      alf_filter_block_chroma(src, got, b, c, clips, k);
      oracle::alf_block(src, want, b, c.coeff, c.clip_idx, clips);
      ASSERT_TRUE(same_samples(got, want)) << tier_name(tier) << " chroma trial " << trial;
    }
  }
}

TEST_P(AlfDepth, TrivialFilters) {
  const BitDepth d(GetParam());
  Plane src = plane_new(16, 16, d);
  fill_random(src, 1);
  Plane dst = plane_new(16, 16, d);
  alf_filter_block_luma(src, dst, {4, 4, 4, 4}, AlfLumaFilter{}, alf_default_clip_table(d));
  ASSERT_TRUE(same_samples(dst.crop({4, 4, 4, 4}), src.crop({4, 4, 4, 4})));

  Plane flat = plane_new(16, 16, d);
  std::fill(flat.data().begin(), flat.data().end(), 77);
  SplitMix64 g(2);
  Plane out = plane_new(16, 16, d);
  alf_filter_block_luma(flat, out, {8, 8, 4, 4}, random_luma(g), alf_default_clip_table(d));
  alf_filter_block_chroma(flat, out, {0, 0, 4, 4}, random_chroma(g), alf_default_clip_table(d));
  EXPECT_EQ(out.at(9, 9), 77);
  EXPECT_EQ(out.at(3, 3), 77);

  EXPECT_THROW(alf_filter_block_luma(src, dst, {0, 0, 8, 4}, AlfLumaFilter{}, alf_default_clip_table(d)),
               ContractViolation);
  Plane other = plane_new(8, 16, d);
  EXPECT_THROW(alf_filter_block_luma(src, other, {0, 0, 4, 4}, AlfLumaFilter{}, alf_default_clip_table(d)),
               ContractViolation);
}

TEST_P(AlfDepth, FilteringIsLocal) {
  const BitDepth d(GetParam());
  SplitMix64 g(3);
  Plane src = plane_new(20, 20, d);
  fill_random(src, 8);
  const AlfLumaFilter f = random_luma(g);
  const AlfChromaFilter c = random_chroma(g);
  const BlockRect b{8, 8, 4, 4};
  Plane base = src, base_c = src;
  alf_filter_block_luma(src, base, b, f, alf_default_clip_table(d));
  alf_filter_block_chroma(src, base_c, b, c, alf_default_clip_table(d));
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x) {
      const int dist = std::max({b.x - x, x - (b.x + 3), b.y - y, y - (b.y + 3), 0});
      if (dist <= 2) continue;
      Plane m = src;
      m.at(x, y) ^= 0x3F;
      Plane o = m;
      alf_filter_block_chroma(m, o, b, c, alf_default_clip_table(d));
      ASSERT_TRUE(same_samples(o.crop(b), base_c.crop(b)));
      if (dist <= 3) continue;
      o = m;
      alf_filter_block_luma(m, o, b, f, alf_default_clip_table(d));
      ASSERT_TRUE(same_samples(o.crop(b), base.crop(b)));
    }
}

TEST_P(AlfDepth, ClassifierMatchesBruteForce) {
  const BitDepth d(GetParam());
  SplitMix64 g(GetParam());
  Plane p = plane_new(32, 32, d);
  for (VariantTier tier : detect_capabilities()) {
    const KernelTable k = build_registry(tier);
    for (int trial = 0; trial < 300; ++trial) {
      // Low-amplitude noise on a ramp reaches every activity level.
      const int amp = 1 << g.uniform(0, d.value());
      const int sx = g.uniform(0, 3), sy = g.uniform(0, 3);
      for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x)
          p.at(x, y) = static_cast<uint16_t>(
              std::clamp(static_cast<int>(g.next() % amp) + ((x * sx + y * sy) & 63), 0, d.max_sample()));
      const BlockRect b{4 * g.uniform(0, 7), 4 * g.uniform(0, 7), 4, 4};
      ASSERT_EQ(alf_classify_4x4(p, b, k), oracle::alf_classify(p, b, kAlfActivityShift)) << tier_name(tier);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Depths, AlfDepth, ::testing::Values(8, 10));

TEST(AlfClassify, ConstantAndDirectionalInputs) {
  Plane flat = plane_new(16, 16, kDepth8);
  std::fill(flat.data().begin(), flat.data().end(), 90);
  EXPECT_EQ(alf_classify_4x4(flat, {4, 4, 4, 4}), (AlfClassification{0, 0}));

  Plane stripes = plane_new(16, 16, kDepth8);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) stripes.at(x, y) = (x & 1) ? 200 : 20;
  const AlfClassification s = alf_classify_4x4(stripes, {4, 4, 4, 4});
  EXPECT_TRUE(s.class_idx / 5 == 1 || s.class_idx / 5 == 2) << s.class_idx;
  EXPECT_EQ(s.transpose_idx & 1, 1);

  Plane diag = plane_new(16, 16, kDepth8);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) diag.at(x, y) = ((x + y) % 4 < 2) ? 180 : 30;
  const AlfClassification dg = alf_classify_4x4(diag, {4, 4, 4, 4});
  EXPECT_TRUE(dg.class_idx / 5 == 3 || dg.class_idx / 5 == 4) << dg.class_idx;

  EXPECT_THROW(alf_classify_4x4(flat, {0, 0, 4, 8}), ContractViolation);
  EXPECT_THROW(alf_classify_4x4(flat, {14, 0, 4, 4}), ContractViolation);
}

TEST(AlfClassify, SumsDecisionRules) {
  EXPECT_EQ(alf_class_from_sums(0, 0, 0, 0, 8), (AlfClassification{0, 0}));
  // Strong horizontal-vs-vertical dominance with balanced diagonals.
  EXPECT_EQ(alf_class_from_sums(10, 100, 50, 50, 8).class_idx / 5, 2);
  EXPECT_EQ(alf_class_from_sums(30, 100, 50, 50, 8).class_idx / 5, 1);
  EXPECT_EQ(alf_class_from_sums(50, 50, 10, 100, 8).class_idx / 5, 4);
  EXPECT_EQ(alf_class_from_sums(50, 50, 30, 100, 8).class_idx / 5, 3);
  // 4.5 threshold is exact: 9 * min == 2 * max is not "strong".
  EXPECT_EQ(alf_class_from_sums(20, 90, 50, 50, 8).class_idx / 5, 1);
  EXPECT_EQ(alf_class_from_sums(20, 91, 50, 50, 8).class_idx / 5, 2);
  // Ratio ties go to the diagonal branch.
  EXPECT_EQ(alf_class_from_sums(10, 30, 10, 30, 8).class_idx / 5, 3);
  EXPECT_EQ(alf_class_from_sums(0, 5, 0, 0, 8).class_idx / 5, 2);
  EXPECT_EQ(alf_class_from_sums(10, 20, 0, 0, 8).transpose_idx, 1);
  EXPECT_EQ(alf_class_from_sums(20, 10, 1, 2, 8).transpose_idx, 2);
}

TEST(AlfClassify, AllClassesAndTransposesReachable) {
  std::set<int> classes, transposes;
  SplitMix64 g(77);
  Plane p = plane_new(64, 64, kDepth8);
  for (int trial = 0; trial < 4000 && (classes.size() < 25 || transposes.size() < 4); ++trial) {
    // Two stripe components along one axis pair with independent amplitudes,
    // plus a little noise; the amplitude ratio steers direction strength.
    const int scale = g.uniform(0, 7);
    const int a1 = g.uniform(0, 255) >> scale, a2 = g.uniform(0, 255) >> scale;
    const bool diag = g.chance(50);
    const int period = g.uniform(2, 6);
    const int noise = g.uniform(1, 8);
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x) {
        const int u = diag ? x + y : x, w = diag ? x - y + 64 : y;
        const int v = (u % period < period / 2 ? a1 : 0) + (w % period < period / 2 ? a2 : 0) +
                      static_cast<int>(g.next() % static_cast<uint64_t>(noise));
        p.at(x, y) = static_cast<uint16_t>(std::clamp(v, 0, 255));
      }
    for (int by = 8; by < 56; by += 12)
      for (int bx = 8; bx < 56; bx += 12) {
        const AlfClassification c = alf_classify_4x4(p, {bx, by, 4, 4});
        ASSERT_GE(c.class_idx, 0);
        ASSERT_LT(c.class_idx, 25);
        classes.insert(c.class_idx);
        transposes.insert(c.transpose_idx);
      }
  }
  EXPECT_EQ(classes.size(), 25u);
  EXPECT_EQ(transposes.size(), 4u);
}

TEST(AlfFilterSet, TextRoundTripAndValidation) {
  const AlfFilterSet set = AlfFilterSet::random(5, 3);
  std::stringstream ss;
  set.write(ss);
  const AlfFilterSet back = AlfFilterSet::parse(ss);
  EXPECT_EQ(back.luma, set.luma);
  EXPECT_EQ(back.chroma, set.chroma);

  std::stringstream too_few("# header\n1 2 3 4 5 6 7 8 9 10 11 12 ; 0 0 0 0 0 0 0 0 0 0 0 0\n");
  EXPECT_THROW(AlfFilterSet::parse(too_few), FormatError);

  AlfFilterSet bad = set;
  bad.luma[3].coeff[2] = 128;
  EXPECT_THROW(bad.validate(), ContractViolation);
  bad = set;
  bad.clip_table[0] = {8, 32, 2, 1};
  EXPECT_THROW(bad.validate(), ContractViolation);
  bad = set;
  bad.chroma.clear();
  EXPECT_THROW(bad.validate(), ContractViolation);
}

TEST(AlfPlane, DisabledZeroAndScalarComposition) {
  for (BitDepth d : {kDepth8, kDepth10}) {
    Plane src = plane_new(128, 128, d);
    fill_random(src, 12);
    const AlfFilterSet set = AlfFilterSet::random(3, 2);
    Plane dst = plane_new(128, 128, d);

    const std::vector<uint8_t> off(1, 0), on(1, 1);
    alf_filter_plane(src, dst, set, AlfComponent::kLuma, off);
    EXPECT_TRUE(same_samples(dst, src));

    alf_filter_plane(src, dst, AlfFilterSet{}, AlfComponent::kLuma, on);
    EXPECT_TRUE(same_samples(dst, src));

    // Per-block scalar composition with the brute-force classifier.
    Plane want = src;
    for (int by = 0; by < 128; by += 4)
      for (int bx = 0; bx < 128; bx += 4) {
        const BlockRect b{bx, by, 4, 4};
        const AlfClassification c = oracle::alf_classify(src, b, kAlfActivityShift);
        const AlfLumaFilter f = alf_transpose_filter(set.luma[c.class_idx], c.transpose_idx);
        oracle::alf_block(src, want, b, f.coeff, f.clip_idx, set.clips(d));
      }
    for (VariantTier tier : detect_capabilities()) {
      Plane got = plane_new(128, 128, d);
      alf_filter_plane(src, got, set, AlfComponent::kLuma, on, 128, build_registry(tier));
      EXPECT_TRUE(same_samples(got, want)) << tier_name(tier);
    }
  }
}

TEST(AlfPlane, PartialCtusAndChromaFilterSelection) {
  Plane src = plane_new(70, 37, kDepth8);
  fill_random(src, 4);
  const AlfFilterSet set = AlfFilterSet::random(6, 3);
  // 32-sample CTUs: 3 x 2 grid; enable a checkerboard.
  const std::vector<uint8_t> enable = {1, 0, 1, 0, 1, 0};
  Plane ref = plane_new(70, 37, kDepth8);
  alf_filter_plane(src, ref, set, AlfComponent::kChroma, enable, 32);
  Plane want = src;
  for (int cy = 0; cy < 2; ++cy)
    for (int cx = 0; cx < 3; ++cx) {
      const int idx = cy * 3 + cx;
      if (!enable[idx]) continue;
      const AlfChromaFilter& f = set.chroma[idx % set.chroma.size()];
      for (int by = cy * 32; by < std::min(37, cy * 32 + 32); by += 4)
        for (int bx = cx * 32; bx < std::min(70, cx * 32 + 32); bx += 4) {
          Plane tmp = src;
          // Partial edge blocks: filter a 4x4 on an extended plane, keep the visible part.
          Plane ext = plane_new(72, 40, kDepth8);
          for (int y = 0; y < 40; ++y)
            for (int x = 0; x < 72; ++x) ext.at(x, y) = src.read_clamped(x, y);
          Plane out = ext;
          oracle::alf_block(ext, out, {bx, by, 4, 4}, f.coeff, f.clip_idx, set.clips(kDepth8));
          for (int y = by; y < std::min(by + 4, 37); ++y)
            for (int x = bx; x < std::min(bx + 4, 70); ++x) want.at(x, y) = out.at(x, y);
        }
    }
  EXPECT_TRUE(same_samples(ref, want));
  EXPECT_THROW(alf_filter_plane(src, ref, set, AlfComponent::kChroma, std::vector<uint8_t>(5, 1), 32),
               ContractViolation);
}

}  // namespace
}  // namespace vvckit
