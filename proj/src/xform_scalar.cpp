#include <algorithm>
#include <array>

#include "vvckit/kernels.hpp"

namespace vvckit {

namespace {

// 64 inputs of |v| <= 32768 against |w| <= 64 (or the transpose) stay below
// 2^27 before rounding, so 32-bit accumulation is exact.
static_assert(64LL * 64 * 32768 + (1 << 12) < (1LL << 31));

template <int Bias>
void mat_rows_scalar(const int16_t* weights, std::ptrdiff_t w_i, std::ptrdiff_t w_m, const int16_t* rows,
                     std::ptrdiff_t row_stride, int depth_m, int out_rows, int width, int shift, int16_t* out,
                     std::ptrdiff_t out_stride) {
  std::array<int32_t, 64> acc;
  const int32_t round = (1 << (shift - 1)) + Bias;
  for (int i = 0; i < out_rows; ++i) {
    std::fill_n(acc.begin(), width, 0);
    for (int m = 0; m < depth_m; ++m) {
      const int32_t wgt = weights[i * w_i + m * w_m];
      const int16_t* r = rows + m * row_stride;
      for (int x = 0; x < width; ++x) acc[x] += wgt * r[x];
    }
    int16_t* o = out + i * out_stride;
    for (int x = 0; x < width; ++x) o[x] = static_cast<int16_t>(std::clamp((acc[x] + round) >> shift, -32768, 32767));
  }
}

}  // namespace

void init_xform_scalar(XformKernels& k) { k.mat_rows = mat_rows_scalar<0>; }

void init_xform_faulty(XformKernels& k) { k.mat_rows = mat_rows_scalar<-1>; }

}  // namespace vvckit
