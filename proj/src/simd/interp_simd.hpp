#pragma once

// Vector interpolation passes. Each kernel covers whole vector-width column
// strips and leaves the remaining columns to the next narrower tier and
// finally to the scalar reference.

#include "simd/simd_traits.hpp"
#include "vvckit/kernels.hpp"

namespace vvckit {
namespace {

template <class V, int N>
struct TapPairs {
  typename V::reg pair[(N + 1) / 2];
  explicit TapPairs(const int16_t* taps) {
    for (int k = 0; k < N; k += 2) pair[k / 2] = V::set_pair(taps[k], k + 1 < N ? taps[k + 1] : 0);
  }
};

// 32-bit dot products of N taps with samples at p, p + step, ... for every lane.
template <class V, int N, class T>
inline void dot32(const T* p, std::ptrdiff_t step, const TapPairs<V, N>& c, typename V::reg& lo,
                  typename V::reg& hi) {
  lo = V::zero();
  hi = V::zero();
  for (int k = 0; k < N; k += 2) {
    const auto a = V::load(p + k * step);
    const auto b = k + 1 < N ? V::load(p + (k + 1) * step) : V::zero();
    lo = V::add32(lo, V::madd(V::unpacklo16(a, b), c.pair[k / 2]));
    hi = V::add32(hi, V::madd(V::unpackhi16(a, b), c.pair[k / 2]));
  }
}

// 16-bit wrapping dot product; exact whenever the true sum fits in int16,
// which table validation guarantees for 8-bit samples.
template <class V, int N>
inline typename V::reg dot16(const uint16_t* p, std::ptrdiff_t step, const typename V::reg* c) {
  auto acc = V::zero();
  for (int k = 0; k < N; ++k) acc = V::add16(acc, V::mullo16(V::load(p + k * step), c[k]));
  return acc;
}

template <class V>
inline typename V::reg clamp_pixel(typename V::reg v, typename V::reg max_val) {
  return V::min16(V::max16(v, V::zero()), max_val);
}

template <class V, int N, int Depth>
int h_to_mid_cols(const uint16_t* src, std::ptrdiff_t ss, int16_t* dst, std::ptrdiff_t ds, int x0, int w, int h,
                  const int16_t* taps) {
  const int x_end = x0 + (w - x0) / V::kLanes * V::kLanes;
  if (x_end == x0) return x0;
  if constexpr (Depth == 8) {
    typename V::reg c[N];
    for (int k = 0; k < N; ++k) c[k] = V::set1_16(taps[k]);
    for (int y = 0; y < h; ++y)
      for (int x = x0; x < x_end; x += V::kLanes) V::store(dst + y * ds + x, dot16<V, N>(src + y * ss + x, 1, c));
  } else {
    const TapPairs<V, N> c(taps);
    for (int y = 0; y < h; ++y) {
      for (int x = x0; x < x_end; x += V::kLanes) {
        typename V::reg lo, hi;
        dot32<V, N>(src + y * ss + x, 1, c, lo, hi);
        V::store(dst + y * ds + x, V::packs32(V::srai32(lo, Depth - 8), V::srai32(hi, Depth - 8)));
      }
    }
  }
  return x_end;
}

template <class V, int N, int Depth>
int v_from_mid_cols(const int16_t* src, std::ptrdiff_t ss, uint16_t* dst, std::ptrdiff_t ds, int x0, int w, int h,
                    const int16_t* taps) {
  constexpr int s1 = Depth - 8;
  const int x_end = x0 + (w - x0) / V::kLanes * V::kLanes;
  if (x_end == x0) return x0;
  const TapPairs<V, N> c(taps);
  const auto offset = V::set1_32(1 << (11 - s1));
  const auto max_val = V::set1_16((1 << Depth) - 1);
  for (int y = 0; y < h; ++y) {
    for (int x = x0; x < x_end; x += V::kLanes) {
      typename V::reg lo, hi;
      dot32<V, N>(src + y * ss + x, ss, c, lo, hi);
      lo = V::srai32(V::add32(lo, offset), 12 - s1);
      hi = V::srai32(V::add32(hi, offset), 12 - s1);
      V::store(dst + y * ds + x, clamp_pixel<V>(V::packs32(lo, hi), max_val));
    }
  }
  return x_end;
}

template <class V, int N, int Depth, bool Vertical>
int single_pass_cols(const uint16_t* src, std::ptrdiff_t ss, uint16_t* dst, std::ptrdiff_t ds, int x0, int w, int h,
                     const int16_t* taps) {
  const int x_end = x0 + (w - x0) / V::kLanes * V::kLanes;
  if (x_end == x0) return x0;
  const std::ptrdiff_t step = Vertical ? ss : 1;
  const auto max_val = V::set1_16((1 << Depth) - 1);
  if constexpr (Depth == 8) {
    typename V::reg c[N];
    for (int k = 0; k < N; ++k) c[k] = V::set1_16(taps[k]);
    const auto offset = V::set1_16(32);
    for (int y = 0; y < h; ++y) {
      for (int x = x0; x < x_end; x += V::kLanes) {
        const auto acc = dot16<V, N>(src + y * ss + x, step, c);
        V::store(dst + y * ds + x, clamp_pixel<V>(V::srai16(V::add16(acc, offset), 6), max_val));
      }
    }
  } else {
    const TapPairs<V, N> c(taps);
    const auto offset = V::set1_32(32);
    for (int y = 0; y < h; ++y) {
      for (int x = x0; x < x_end; x += V::kLanes) {
        typename V::reg lo, hi;
        dot32<V, N>(src + y * ss + x, step, c, lo, hi);
        lo = V::srai32(V::add32(lo, offset), 6);
        hi = V::srai32(V::add32(hi, offset), 6);
        V::store(dst + y * ds + x, clamp_pixel<V>(V::packs32(lo, hi), max_val));
      }
    }
  }
  return x_end;
}

// Tier entry points: widest vector first, then narrower, then scalar tail.
template <class... Vs>
struct InterpTier {
  template <int N, int Depth>
  static void h_to_mid(const uint16_t* src, std::ptrdiff_t ss, int16_t* dst, std::ptrdiff_t ds, int w, int h,
                       const int16_t* taps) {
    int x = 0;
    ((x = h_to_mid_cols<Vs, N, Depth>(src, ss, dst, ds, x, w, h, taps)), ...);
    if (x < w)
      scalar_kernels().interp.h_to_mid[slot<N>()][Depth == 8 ? 0 : 1](src + x, ss, dst + x, ds, w - x, h, taps);
  }

  template <int N, int Depth>
  static void v_from_mid(const int16_t* src, std::ptrdiff_t ss, uint16_t* dst, std::ptrdiff_t ds, int w, int h,
                         const int16_t* taps) {
    int x = 0;
    ((x = v_from_mid_cols<Vs, N, Depth>(src, ss, dst, ds, x, w, h, taps)), ...);
    if (x < w)
      scalar_kernels().interp.v_from_mid[slot<N>()][Depth == 8 ? 0 : 1](src + x, ss, dst + x, ds, w - x, h, taps);
  }

  template <int N, int Depth, bool Vertical>
  static void single(const uint16_t* src, std::ptrdiff_t ss, uint16_t* dst, std::ptrdiff_t ds, int w, int h,
                     const int16_t* taps) {
    int x = 0;
    ((x = single_pass_cols<Vs, N, Depth, Vertical>(src, ss, dst, ds, x, w, h, taps)), ...);
    if (x < w) {
      const auto& k = scalar_kernels().interp;
      const auto fn = Vertical ? k.v_only[slot<N>()][Depth == 8 ? 0 : 1] : k.h_only[slot<N>()][Depth == 8 ? 0 : 1];
      fn(src + x, ss, dst + x, ds, w - x, h, taps);
    }
  }

  template <int N>
  static constexpr int slot() {
    return N == 8 ? 0 : N == 7 ? 1 : N == 6 ? 2 : N == 4 ? 3 : 4;
  }

  template <int N>
  static void fill(InterpKernels& k) {
    constexpr int s = slot<N>();
    k.h_to_mid[s] = {h_to_mid<N, 8>, h_to_mid<N, 10>};
    k.v_from_mid[s] = {v_from_mid<N, 8>, v_from_mid<N, 10>};
    k.h_only[s] = {single<N, 8, false>, single<N, 10, false>};
    k.v_only[s] = {single<N, 8, true>, single<N, 10, true>};
  }

  static void init(InterpKernels& k) {
    fill<8>(k);
    fill<7>(k);
    fill<6>(k);
    fill<4>(k);
    fill<2>(k);
  }
};

}  // namespace
}  // namespace vvckit
