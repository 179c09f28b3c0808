#pragma once

// Vector ALF. Filtering packs kLanes / 4 horizontally adjacent 4x4 blocks into
// one register row (two blocks per 128-bit register, four per 256-bit), each
// lane group carrying its own block's transposed coefficients and clips.
// Classification computes per-column gradient sums over the 8 window rows in
// vector form and finishes the 8-column window sums per block in scalar.

#include <array>

#include "simd/simd_traits.hpp"
#include "vvckit/alf.hpp"

namespace vvckit {
namespace {

// 32-bit lane layout after unpacklo16/unpackhi16: 128-bit -> lo = block 0,
// hi = block 1; 256-bit (in-lane) -> lo = blocks 0|2, hi = blocks 1|3.
template <class V>
inline void block_pair_coeffs(const AlfBlockFilter* f, int pair, typename V::reg& lo, typename V::reg& hi) {
  auto word = [&](int b) {
    return static_cast<int>((static_cast<uint32_t>(static_cast<uint16_t>(f[b].coeff[2 * pair + 1])) << 16) |
                            static_cast<uint16_t>(f[b].coeff[2 * pair]));
  };
  if constexpr (V::kLanes == 8) {
    lo = _mm_set1_epi32(word(0));
    hi = _mm_set1_epi32(word(1));
  }
#if defined(__AVX2__)
  else {
    lo = _mm256_setr_epi32(word(0), word(0), word(0), word(0), word(2), word(2), word(2), word(2));
    hi = _mm256_setr_epi32(word(1), word(1), word(1), word(1), word(3), word(3), word(3), word(3));
  }
#endif
}

template <class V>
inline typename V::reg block_clips(const AlfBlockFilter* f, int tap) {
  alignas(32) int16_t lanes[V::kLanes];
  for (int l = 0; l < V::kLanes; ++l) lanes[l] = f[l / 4].clip[tap];
  return V::load(lanes);
}

template <class V, std::size_t N>
int alf_filter_blocks(const std::array<DiamondOffset, N>& offsets, const uint16_t* src, std::ptrdiff_t ss,
                      uint16_t* dst, std::ptrdiff_t ds, int b0, int num_blocks, const AlfBlockFilter* filters,
                      int depth) {
  constexpr int kBlocks = V::kLanes / 4;
  constexpr int kPairs = static_cast<int>(N) / 2;
  const auto max_val = V::set1_16((1 << depth) - 1);
  const auto round = V::set1_32(64);
  int b = b0;
  for (; b + kBlocks <= num_blocks; b += kBlocks) {
    const AlfBlockFilter* f = filters + b;
    typename V::reg c_lo[kPairs], c_hi[kPairs], clip_pos[N], clip_neg[N];
    for (int p = 0; p < kPairs; ++p) block_pair_coeffs<V>(f, p, c_lo[p], c_hi[p]);
    for (std::size_t i = 0; i < N; ++i) {
      clip_pos[i] = block_clips<V>(f, static_cast<int>(i));
      clip_neg[i] = V::sub16(V::zero(), clip_pos[i]);
    }
    for (int y = 0; y < 4; ++y) {
      const uint16_t* s = src + y * ss + 4 * b;
      const auto cur = V::load(s);
      auto lo = round;
      auto hi = round;
      for (int p = 0; p < kPairs; ++p) {
        typename V::reg sum[2];
        for (int t = 0; t < 2; ++t) {
          const int i = 2 * p + t;
          const std::ptrdiff_t off = offsets[i].dy * ss + offsets[i].dx;
          const auto a = V::min16(V::max16(V::sub16(V::load(s + off), cur), clip_neg[i]), clip_pos[i]);
          const auto c = V::min16(V::max16(V::sub16(V::load(s - off), cur), clip_neg[i]), clip_pos[i]);
          sum[t] = V::add16(a, c);
        }
        lo = V::add32(lo, V::madd(V::unpacklo16(sum[0], sum[1]), c_lo[p]));
        hi = V::add32(hi, V::madd(V::unpackhi16(sum[0], sum[1]), c_hi[p]));
      }
      const auto delta = V::packs32(V::srai32(lo, 7), V::srai32(hi, 7));
      const auto out = V::min16(V::max16(V::add16(cur, delta), V::zero()), max_val);
      V::store(dst + y * ds + 4 * b, out);
    }
  }
  return b;
}

// Column sums of the four Laplacians over rows -2..5, for columns
// -2 .. -2 + cols - 1 relative to src (cols rounded up to the vector width).
template <class V>
inline void alf_column_sums(const uint16_t* src, std::ptrdiff_t ss, int cols, int16_t* sv, int16_t* sh, int16_t* sd0,
                            int16_t* sd1) {
  for (int x = 0; x < cols; x += V::kLanes) {
    auto gv = V::zero(), gh = V::zero(), gd0 = V::zero(), gd1 = V::zero();
    for (int j = -2; j < 6; ++j) {
      const uint16_t* p = src + j * ss + x - 2;
      const auto c2 = V::slli16(V::load(p), 1);
      const auto u = V::load(p - ss);
      const auto d = V::load(p + ss);
      gv = V::add16(gv, V::abs16(V::sub16(V::sub16(c2, u), d)));
      gh = V::add16(gh, V::abs16(V::sub16(V::sub16(c2, V::load(p - 1)), V::load(p + 1))));
      gd0 = V::add16(gd0, V::abs16(V::sub16(V::sub16(c2, V::load(p - ss - 1)), V::load(p + ss + 1))));
      gd1 = V::add16(gd1, V::abs16(V::sub16(V::sub16(c2, V::load(p - ss + 1)), V::load(p + ss - 1))));
    }
    V::store(sv + x, gv);
    V::store(sh + x, gh);
    V::store(sd0 + x, gd0);
    V::store(sd1 + x, gd1);
  }
}

template <class V>
void alf_classify_simd(const uint16_t* src, std::ptrdiff_t ss, int num_blocks, int depth, AlfClassification* out) {
  constexpr int kChunk = 32;
  alignas(32) int16_t sums[4][4 * kChunk + 4 + V::kLanes];
  for (int b0 = 0; b0 < num_blocks; b0 += kChunk) {
    const int n = std::min(kChunk, num_blocks - b0);
    const int cols = (4 * n + 4 + V::kLanes - 1) / V::kLanes * V::kLanes;
    alf_column_sums<V>(src + 4 * b0, ss, cols, sums[0], sums[1], sums[2], sums[3]);
    for (int b = 0; b < n; ++b) {
      int64_t g[4] = {0, 0, 0, 0};
      for (int k = 0; k < 4; ++k)
        for (int t = 0; t < 8; ++t) g[k] += sums[k][4 * b + t];
      out[b0 + b] = alf_class_from_sums(g[0], g[1], g[2], g[3], depth);
    }
  }
}

template <class... Vs>
struct AlfTier {
  static void luma(const uint16_t* src, std::ptrdiff_t ss, uint16_t* dst, std::ptrdiff_t ds, int n,
                   const AlfBlockFilter* f, int depth) {
    int b = 0;
    ((b = alf_filter_blocks<Vs>(kAlfLumaOffsets, src, ss, dst, ds, b, n, f, depth)), ...);
    if (b < n) scalar_kernels().alf.luma(src + 4 * b, ss, dst + 4 * b, ds, n - b, f + b, depth);
  }

  static void chroma(const uint16_t* src, std::ptrdiff_t ss, uint16_t* dst, std::ptrdiff_t ds, int n,
                     const AlfBlockFilter* f, int depth) {
    int b = 0;
    ((b = alf_filter_blocks<Vs>(kAlfChromaOffsets, src, ss, dst, ds, b, n, f, depth)), ...);
    if (b < n) scalar_kernels().alf.chroma(src + 4 * b, ss, dst + 4 * b, ds, n - b, f + b, depth);
  }
};

}  // namespace
}  // namespace vvckit
