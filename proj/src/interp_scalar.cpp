// Scalar reference for the separable interpolation passes. Compiled without
// auto-vectorization so it stays a true scalar baseline.

#include <algorithm>

#include "vvckit/kernels.hpp"

namespace vvckit {

namespace {

template <int N, int Depth>
void h_to_mid(const uint16_t* src, std::ptrdiff_t ss, int16_t* dst, std::ptrdiff_t ds, int w, int h,
              const int16_t* taps) {
  constexpr int shift = Depth - 8;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int32_t acc = 0;
      for (int k = 0; k < N; ++k) acc += taps[k] * static_cast<int32_t>(src[x + k]);
      dst[x] = static_cast<int16_t>(acc >> shift);
    }
    src += ss;
    dst += ds;
  }
}

template <int N, int Depth, int Bias = 0>
void v_from_mid(const int16_t* src, std::ptrdiff_t ss, uint16_t* dst, std::ptrdiff_t ds, int w, int h,
                const int16_t* taps) {
  constexpr int s1 = Depth - 8;
  constexpr int shift = 12 - s1;
  constexpr int32_t offset = (1 << (11 - s1)) + Bias;
  constexpr int32_t max_val = (1 << Depth) - 1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int32_t acc = 0;
      for (int k = 0; k < N; ++k) acc += taps[k] * static_cast<int32_t>(src[x + k * ss]);
      dst[x] = static_cast<uint16_t>(std::clamp((acc + offset) >> shift, 0, max_val));
    }
    src += ss;
    dst += ds;
  }
}

template <int N, int Depth, bool Vertical, int Bias = 0>
void single_pass(const uint16_t* src, std::ptrdiff_t ss, uint16_t* dst, std::ptrdiff_t ds, int w, int h,
                 const int16_t* taps) {
  constexpr int32_t max_val = (1 << Depth) - 1;
  const std::ptrdiff_t step = Vertical ? ss : 1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int32_t acc = 0;
      for (int k = 0; k < N; ++k) acc += taps[k] * static_cast<int32_t>(src[x + k * step]);
      dst[x] = static_cast<uint16_t>(std::clamp((acc + 32 + Bias) >> 6, 0, max_val));
    }
    src += ss;
    dst += ds;
  }
}

template <int N>
void fill_slot(InterpKernels& k, int slot) {
  k.h_to_mid[slot] = {h_to_mid<N, 8>, h_to_mid<N, 10>};
  k.v_from_mid[slot] = {v_from_mid<N, 8>, v_from_mid<N, 10>};
  k.h_only[slot] = {single_pass<N, 8, false>, single_pass<N, 10, false>};
  k.v_only[slot] = {single_pass<N, 8, true>, single_pass<N, 10, true>};
}

template <int N>
void fill_faulty_slot(InterpKernels& k, int slot) {
  k.v_from_mid[slot] = {v_from_mid<N, 8, -1>, v_from_mid<N, 10, -1>};
  k.h_only[slot] = {single_pass<N, 8, false, -1>, single_pass<N, 10, false, -1>};
  k.v_only[slot] = {single_pass<N, 8, true, -1>, single_pass<N, 10, true, -1>};
}

}  // namespace

void init_interp_scalar(InterpKernels& k) {
  fill_slot<8>(k, tap_slot(TapPath::kTap8));
  fill_slot<7>(k, tap_slot(TapPath::kTap7));
  fill_slot<6>(k, tap_slot(TapPath::kTap6));
  fill_slot<4>(k, tap_slot(TapPath::kTap4));
  fill_slot<2>(k, tap_slot(TapPath::kTap2));
}

// Off-by-one rounding; only reachable through fault injection.
void init_interp_faulty(InterpKernels& k) {
  fill_faulty_slot<8>(k, tap_slot(TapPath::kTap8));
  fill_faulty_slot<7>(k, tap_slot(TapPath::kTap7));
  fill_faulty_slot<6>(k, tap_slot(TapPath::kTap6));
  fill_faulty_slot<4>(k, tap_slot(TapPath::kTap4));
  fill_faulty_slot<2>(k, tap_slot(TapPath::kTap2));
}

}  // namespace vvckit
