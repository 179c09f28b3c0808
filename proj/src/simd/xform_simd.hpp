#pragma once

#include "simd/simd_traits.hpp"
#include "vvckit/kernels.hpp"

namespace vvckit {
namespace {

template <class V>
int mat_rows_cols(const int16_t* weights, std::ptrdiff_t w_i, std::ptrdiff_t w_m, const int16_t* rows,
                  std::ptrdiff_t rs, int depth_m, int out_rows, int x0, int width, int shift, int16_t* out,
                  std::ptrdiff_t os) {
  const int x_end = x0 + (width - x0) / V::kLanes * V::kLanes;
  if (x_end == x0) return x0;
  const auto round = V::set1_32(1 << (shift - 1));
  for (int i = 0; i < out_rows; ++i) {
    const int16_t* wrow = weights + i * w_i;
    for (int x = x0; x < x_end; x += V::kLanes) {
      auto lo = round;
      auto hi = round;
      for (int m = 0; m < depth_m; m += 2) {
        const auto a = V::load(rows + m * rs + x);
        const auto b = V::load(rows + (m + 1) * rs + x);
        const auto c = V::set_pair(wrow[m * w_m], wrow[(m + 1) * w_m]);
        lo = V::add32(lo, V::madd(V::unpacklo16(a, b), c));
        hi = V::add32(hi, V::madd(V::unpackhi16(a, b), c));
      }
      V::store(out + i * os + x, V::packs32(V::srai32(lo, shift), V::srai32(hi, shift)));
    }
  }
  return x_end;
}

// Four-column blocks: one 64-bit load per row pair.
inline int mat_rows_cols4(const int16_t* weights, std::ptrdiff_t w_i, std::ptrdiff_t w_m, const int16_t* rows,
                          std::ptrdiff_t rs, int depth_m, int out_rows, int x0, int width, int shift, int16_t* out,
                          std::ptrdiff_t os) {
  if (width - x0 < 4) return x0;
  const auto round = _mm_set1_epi32(1 << (shift - 1));
  for (int i = 0; i < out_rows; ++i) {
    const int16_t* wrow = weights + i * w_i;
    auto acc = round;
    for (int m = 0; m < depth_m; m += 2) {
      const auto a = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(rows + m * rs + x0));
      const auto b = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(rows + (m + 1) * rs + x0));
      acc = _mm_add_epi32(acc, _mm_madd_epi16(_mm_unpacklo_epi16(a, b), V128::set_pair(wrow[m * w_m], wrow[(m + 1) * w_m])));
    }
    acc = _mm_srai_epi32(acc, shift);
    _mm_storel_epi64(reinterpret_cast<__m128i*>(out + i * os + x0), _mm_packs_epi32(acc, acc));
  }
  return x0 + 4;
}

template <class... Vs>
struct XformTier {
  static void mat_rows(const int16_t* weights, std::ptrdiff_t w_i, std::ptrdiff_t w_m, const int16_t* rows,
                       std::ptrdiff_t rs, int depth_m, int out_rows, int width, int shift, int16_t* out,
                       std::ptrdiff_t os) {
    int x = 0;
    if (depth_m % 2 == 0) {
      ((x = mat_rows_cols<Vs>(weights, w_i, w_m, rows, rs, depth_m, out_rows, x, width, shift, out, os)), ...);
      x = mat_rows_cols4(weights, w_i, w_m, rows, rs, depth_m, out_rows, x, width, shift, out, os);
    }
    if (x < width)
      scalar_kernels().xform.mat_rows(weights, w_i, w_m, rows + x, rs, depth_m, out_rows, width - x, shift, out + x, os);
  }
};

}  // namespace
}  // namespace vvckit
