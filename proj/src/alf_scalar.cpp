// Scalar ALF reference: block-at-a-time classification over the full 8x8
// window and direct diamond filtering.

#include <algorithm>
#include <cstdlib>

#include "vvckit/alf.hpp"
#include "vvckit/kernels.hpp"

namespace vvckit {

namespace {

template <int WindowEnd>
void classify_window(const uint16_t* src, std::ptrdiff_t stride, int num_blocks, int depth, AlfClassification* out) {
  for (int b = 0; b < num_blocks; ++b) {
    const uint16_t* base = src + 4 * b;
    int64_t gv = 0, gh = 0, gd0 = 0, gd1 = 0;
    for (int j = -2; j < 6; ++j) {
      const uint16_t* up = base + (j - 1) * stride;
      const uint16_t* cur = base + j * stride;
      const uint16_t* down = base + (j + 1) * stride;
      for (int i = -2; i < WindowEnd; ++i) {
        const int c = 2 * cur[i];
        gv += std::abs(c - up[i] - down[i]);
        gh += std::abs(c - cur[i - 1] - cur[i + 1]);
        gd0 += std::abs(c - up[i - 1] - down[i + 1]);
        gd1 += std::abs(c - up[i + 1] - down[i - 1]);
      }
    }
    out[b] = alf_class_from_sums(gv, gh, gd0, gd1, depth);
  }
}

void classify_scalar(const uint16_t* src, std::ptrdiff_t stride, int num_blocks, int depth, AlfClassification* out) {
  classify_window<6>(src, stride, num_blocks, depth, out);
}

template <std::size_t N, int Round>
void filter_scalar(const std::array<DiamondOffset, N>& offsets, const uint16_t* src, std::ptrdiff_t ss,
                   uint16_t* dst, std::ptrdiff_t ds, int num_blocks, const AlfBlockFilter* filters, int depth) {
  const int max_val = (1 << depth) - 1;
  for (int b = 0; b < num_blocks; ++b) {
    const AlfBlockFilter& f = filters[b];
    for (int y = 0; y < 4; ++y) {
      const uint16_t* s = src + y * ss + 4 * b;
      uint16_t* d = dst + y * ds + 4 * b;
      for (int x = 0; x < 4; ++x) {
        const int cur = s[x];
        int32_t sum = 0;
        for (std::size_t i = 0; i < N; ++i) {
          const int bound = f.clip[i];
          const int a = s[x + offsets[i].dy * ss + offsets[i].dx] - cur;
          const int c = s[x - offsets[i].dy * ss - offsets[i].dx] - cur;
          sum += f.coeff[i] * (std::clamp(a, -bound, bound) + std::clamp(c, -bound, bound));
        }
        d[x] = static_cast<uint16_t>(std::clamp(cur + ((sum + Round) >> 7), 0, max_val));
      }
    }
  }
}

template <int Round>
void luma_scalar(const uint16_t* src, std::ptrdiff_t ss, uint16_t* dst, std::ptrdiff_t ds, int n,
                 const AlfBlockFilter* f, int depth) {
  filter_scalar<kAlfLumaTaps, Round>(kAlfLumaOffsets, src, ss, dst, ds, n, f, depth);
}

template <int Round>
void chroma_scalar(const uint16_t* src, std::ptrdiff_t ss, uint16_t* dst, std::ptrdiff_t ds, int n,
                   const AlfBlockFilter* f, int depth) {
  filter_scalar<kAlfChromaTaps, Round>(kAlfChromaOffsets, src, ss, dst, ds, n, f, depth);
}

}  // namespace

void init_alf_scalar(AlfKernels& k) {
  k.classify = classify_scalar;
  k.luma = luma_scalar<64>;
  k.chroma = chroma_scalar<64>;
}

// Off-by-one rounding and a gradient window one column short; only reachable
// through fault injection.
void init_alf_faulty(AlfKernels& k) {
  k.classify = classify_window<5>;
  k.luma = luma_scalar<63>;
  k.chroma = chroma_scalar<63>;
}

}  // namespace vvckit
