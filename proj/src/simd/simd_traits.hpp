#pragma once

// Thin integer-vector traits over SSE4.1 (8 x int16) and AVX2 (16 x int16).
// Only included from translation units compiled with the matching target
// flags; everything has internal linkage so instantiations never leak across
// tiers.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace vvckit {
namespace {

struct V128 {
  using reg = __m128i;
  static constexpr int kLanes = 8;

  static reg load(const void* p) { return _mm_loadu_si128(static_cast<const __m128i*>(p)); }
  static void store(void* p, reg v) { _mm_storeu_si128(static_cast<__m128i*>(p), v); }
  static reg zero() { return _mm_setzero_si128(); }
  static reg set1_16(int v) { return _mm_set1_epi16(static_cast<int16_t>(v)); }
  static reg set1_32(int v) { return _mm_set1_epi32(v); }
  static reg set_pair(int a, int b) {
    return _mm_set1_epi32(static_cast<int>((static_cast<uint32_t>(static_cast<uint16_t>(b)) << 16) |
                                           static_cast<uint16_t>(a)));
  }
  static reg unpacklo16(reg a, reg b) { return _mm_unpacklo_epi16(a, b); }
  static reg unpackhi16(reg a, reg b) { return _mm_unpackhi_epi16(a, b); }
  static reg madd(reg a, reg b) { return _mm_madd_epi16(a, b); }
  static reg add32(reg a, reg b) { return _mm_add_epi32(a, b); }
  static reg add16(reg a, reg b) { return _mm_add_epi16(a, b); }
  static reg sub16(reg a, reg b) { return _mm_sub_epi16(a, b); }
  static reg mullo16(reg a, reg b) { return _mm_mullo_epi16(a, b); }
  static reg srai32(reg a, int n) { return _mm_srai_epi32(a, n); }
  static reg srai16(reg a, int n) { return _mm_srai_epi16(a, n); }
  static reg packs32(reg a, reg b) { return _mm_packs_epi32(a, b); }
  static reg min16(reg a, reg b) { return _mm_min_epi16(a, b); }
  static reg max16(reg a, reg b) { return _mm_max_epi16(a, b); }
  static reg abs16(reg a) { return _mm_abs_epi16(a); }
  static reg slli16(reg a, int n) { return _mm_slli_epi16(a, n); }
};

#if defined(__AVX2__)
struct V256 {
  using reg = __m256i;
  static constexpr int kLanes = 16;

  static reg load(const void* p) { return _mm256_loadu_si256(static_cast<const __m256i*>(p)); }
  static void store(void* p, reg v) { _mm256_storeu_si256(static_cast<__m256i*>(p), v); }
  static reg zero() { return _mm256_setzero_si256(); }
  static reg set1_16(int v) { return _mm256_set1_epi16(static_cast<int16_t>(v)); }
  static reg set1_32(int v) { return _mm256_set1_epi32(v); }
  static reg set_pair(int a, int b) {
    return _mm256_set1_epi32(static_cast<int>((static_cast<uint32_t>(static_cast<uint16_t>(b)) << 16) |
                                              static_cast<uint16_t>(a)));
  }
  // In-lane unpack; packs32 re-interleaves in the same in-lane order, so
  // unpack -> madd -> packs32 preserves sample order.
  static reg unpacklo16(reg a, reg b) { return _mm256_unpacklo_epi16(a, b); }
  static reg unpackhi16(reg a, reg b) { return _mm256_unpackhi_epi16(a, b); }
  static reg madd(reg a, reg b) { return _mm256_madd_epi16(a, b); }
  static reg add32(reg a, reg b) { return _mm256_add_epi32(a, b); }
  static reg add16(reg a, reg b) { return _mm256_add_epi16(a, b); }
  static reg sub16(reg a, reg b) { return _mm256_sub_epi16(a, b); }
  static reg mullo16(reg a, reg b) { return _mm256_mullo_epi16(a, b); }
  static reg srai32(reg a, int n) { return _mm256_srai_epi32(a, n); }
  static reg srai16(reg a, int n) { return _mm256_srai_epi16(a, n); }
  static reg packs32(reg a, reg b) { return _mm256_packs_epi32(a, b); }
  static reg min16(reg a, reg b) { return _mm256_min_epi16(a, b); }
  static reg max16(reg a, reg b) { return _mm256_max_epi16(a, b); }
  static reg abs16(reg a) { return _mm256_abs_epi16(a); }
  static reg slli16(reg a, int n) { return _mm256_slli_epi16(a, n); }
};
#endif

}  // namespace
}  // namespace vvckit
