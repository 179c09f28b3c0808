#pragma once

// Reference implementations written directly from the definitions, sharing no
// code with the library kernels. Slow on purpose.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "vvckit/alf.hpp"
#include "vvckit/frame.hpp"
#include "vvckit/xform.hpp"

namespace oracle {

using vvckit::BlockRect;
using vvckit::Plane;

// Luma interpolation coefficients, typed in by hand rather than shared with
// the library.
inline constexpr std::array<std::array<int, 8>, 16> kLumaRows = {{
    {0, 0, 0, 64, 0, 0, 0, 0},
    {0, 1, -3, 63, 4, -2, 1, 0},
    {-1, 2, -5, 62, 8, -3, 1, 0},
    {-1, 3, -8, 60, 13, -4, 1, 0},
    {-1, 4, -10, 58, 17, -5, 1, 0},
    {-1, 4, -11, 52, 26, -8, 3, -1},
    {-1, 3, -9, 47, 31, -10, 4, -1},
    {-1, 4, -11, 45, 34, -10, 4, -1},
    {-1, 4, -11, 40, 40, -11, 4, -1},
    {-1, 4, -10, 34, 45, -11, 4, -1},
    {-1, 4, -10, 31, 47, -9, 3, -1},
    {-1, 3, -8, 26, 52, -11, 4, -1},
    {0, 1, -5, 17, 58, -10, 4, -1},
    {0, 1, -4, 13, 60, -8, 3, -1},
    {0, 1, -3, 8, 62, -5, 2, -1},
    {0, 1, -2, 4, 63, -3, 1, 0},
}};
inline constexpr std::array<int, 8> kLumaHalfPelAlt = {0, 3, 9, 20, 20, 9, 3, 0};

// Separable filter with the reference window starting at `first` relative to
// the integer sample; n taps per axis. Empty tap vectors mean "no pass".
inline Plane separable(const Plane& src, const BlockRect& b, const std::vector<int>& th, int first_h,
                       const std::vector<int>& tv, int first_v) {
  const int depth = src.depth().value();
  const int maxv = (1 << depth) - 1;
  Plane out(b.w, b.h, src.depth());
  const int s1 = depth - 8;
  for (int y = 0; y < b.h; ++y) {
    for (int x = 0; x < b.w; ++x) {
      const int px = b.x + x;
      const int py = b.y + y;
      int v = 0;
      if (th.empty() && tv.empty()) {
        v = src.read_clamped(px, py);
      } else if (tv.empty()) {
        int64_t acc = 0;
        for (std::size_t i = 0; i < th.size(); ++i)
          acc += th[i] * src.read_clamped(px + first_h + static_cast<int>(i), py);
        v = static_cast<int>((acc + 32) >> 6);
      } else if (th.empty()) {
        int64_t acc = 0;
        for (std::size_t j = 0; j < tv.size(); ++j)
          acc += tv[j] * src.read_clamped(px, py + first_v + static_cast<int>(j));
        v = static_cast<int>((acc + 32) >> 6);
      } else {
        int64_t acc = 0;
        for (std::size_t j = 0; j < tv.size(); ++j) {
          int64_t h = 0;
          for (std::size_t i = 0; i < th.size(); ++i)
            h += th[i] * src.read_clamped(px + first_h + static_cast<int>(i), py + first_v + static_cast<int>(j));
          const int64_t mid = h >> s1;
          if (mid < INT16_MIN || mid > INT16_MAX) std::abort();  // contract: fits 16 bits
          acc += tv[j] * mid;
        }
        v = static_cast<int>((acc + (int64_t{1} << (11 - s1))) >> (12 - s1));
      }
      out.at(x, y) = static_cast<uint16_t>(std::clamp(v, 0, maxv));
    }
  }
  return out;
}

inline std::vector<int> luma_taps(int p, bool alt) {
  if (p == 0) return {};
  const auto& r = (p == 8 && alt) ? kLumaHalfPelAlt : kLumaRows[static_cast<std::size_t>(p)];
  return {r.begin(), r.end()};
}

// Full 8-tap evaluation including zero coefficients, window -3..+4.
inline Plane luma(const Plane& src, const BlockRect& b, int fx, int fy, bool alt) {
  return separable(src, b, luma_taps(fx, alt), -3, luma_taps(fy, alt), -3);
}

inline Plane chroma(const Plane& src, const BlockRect& b, int fx, int fy,
                    const std::array<std::array<int16_t, 4>, 32>& rows) {
  auto taps = [&](int p) -> std::vector<int> {
    if (p == 0) return {};
    return {rows[p][0], rows[p][1], rows[p][2], rows[p][3]};
  };
  return separable(src, b, taps(fx), -1, taps(fy), -1);
}

inline Plane bilinear(const Plane& src, const BlockRect& b, int fx, int fy) {
  auto taps = [](int f) -> std::vector<int> {
    if (f == 0) return {};
    return {64 - 4 * f, 4 * f};
  };
  return separable(src, b, taps(fx), 0, taps(fy), 0);
}

// ---------------------------------------------------------------- ALF ------

// Coefficient index for every position of the 7x7 / 5x5 diamonds, center
// included (12 / 6); -1 outside. Row = dy + r, column = dx + r.
inline constexpr int kLumaDiamond[7][7] = {
    {-1, -1, -1, 0, -1, -1, -1},
    {-1, -1, 1, 2, 3, -1, -1},
    {-1, 4, 5, 6, 7, 8, -1},
    {9, 10, 11, 12, 11, 10, 9},
    {-1, 8, 7, 6, 5, 4, -1},
    {-1, -1, 3, 2, 1, -1, -1},
    {-1, -1, -1, 0, -1, -1, -1},
};
inline constexpr int kChromaDiamond[5][5] = {
    {-1, -1, 0, -1, -1},
    {-1, 1, 2, 3, -1},
    {4, 5, 6, 5, 4},
    {-1, 3, 2, 1, -1},
    {-1, -1, 0, -1, -1},
};

// out = cur + (sum over every non-center diamond position of
//        c[idx] * clip(R(pos) - cur, +-b[idx]) + 64) >> 7
template <std::size_t N>
void alf_block(const Plane& src, Plane& dst, const BlockRect& blk, const std::array<int16_t, N>& coeff,
               const std::array<uint8_t, N>& clip_idx, const vvckit::AlfClipTable& clips) {
  constexpr int r = N == 12 ? 3 : 2;
  const int maxv = src.depth().max_sample();
  for (int y = blk.y; y < blk.y + 4; ++y) {
    for (int x = blk.x; x < blk.x + 4; ++x) {
      const int cur = src.read_clamped(x, y);
      int64_t sum = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          int idx = 0;
          if constexpr (N == 12)
            idx = kLumaDiamond[dy + 3][dx + 3];
          else
            idx = kChromaDiamond[dy + 2][dx + 2];
          if (idx < 0 || idx == static_cast<int>(N)) continue;
          const int b = clips[clip_idx[static_cast<std::size_t>(idx)]];
          const int d = std::clamp(src.read_clamped(x + dx, y + dy) - cur, -b, b);
          sum += coeff[static_cast<std::size_t>(idx)] * d;
        }
      }
      dst.at(x, y) = static_cast<uint16_t>(std::clamp(cur + static_cast<int>((sum + 64) >> 7), 0, maxv));
    }
  }
}

struct Gradients {
  int64_t gv = 0, gh = 0, gd0 = 0, gd1 = 0;
};

inline Gradients alf_gradients(const Plane& p, const BlockRect& b) {
  Gradients g;
  for (int j = b.y - 2; j < b.y + 6; ++j) {
    for (int i = b.x - 2; i < b.x + 6; ++i) {
      const int c = 2 * p.read_clamped(i, j);
      g.gv += std::abs(c - p.read_clamped(i, j - 1) - p.read_clamped(i, j + 1));
      g.gh += std::abs(c - p.read_clamped(i - 1, j) - p.read_clamped(i + 1, j));
      g.gd0 += std::abs(c - p.read_clamped(i - 1, j - 1) - p.read_clamped(i + 1, j + 1));
      g.gd1 += std::abs(c - p.read_clamped(i + 1, j - 1) - p.read_clamped(i - 1, j + 1));
    }
  }
  return g;
}

// Brute-force classifier using exact rational comparisons in long double.
inline vvckit::AlfClassification alf_classify(const Plane& p, const BlockRect& b, int activity_shift) {
  const Gradients g = alf_gradients(p, b);
  auto ratio = [](int64_t hi, int64_t lo) -> long double {
    if (hi == 0 && lo == 0) return 1.0L;
    if (lo == 0) return INFINITY;
    return static_cast<long double>(hi) / static_cast<long double>(lo);
  };
  const long double rhv = ratio(std::max(g.gv, g.gh), std::min(g.gv, g.gh));
  const long double rd = ratio(std::max(g.gd0, g.gd1), std::min(g.gd0, g.gd1));
  int dir = 0;
  if (rhv <= 2 && rd <= 2) {
    dir = 0;
  } else if (rhv > rd) {
    dir = rhv <= 4.5L ? 1 : 2;
  } else {
    dir = rd <= 4.5L ? 3 : 4;
  }
  static constexpr int kAct[16] = {0, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3, 4};
  const int depth = p.depth().value();
  const int64_t a = std::min<int64_t>(15, (g.gv + g.gh) >> (depth + activity_shift));
  vvckit::AlfClassification c;
  c.class_idx = 5 * dir + kAct[a];
  c.transpose_idx = (g.gd1 > g.gd0 ? 2 : 0) + (g.gh > g.gv ? 1 : 0);
  return c;
}

// ------------------------------------------------------------- transform ---

inline double basis(vvckit::XformKind kind, int n, int k, int m) {
  const double pi = std::numbers::pi;
  switch (kind) {
    case vvckit::XformKind::kDct2:
      return (k == 0 ? std::sqrt(0.5) : 1.0) * std::sqrt(2.0 / n) * std::cos(pi * k * (2 * m + 1) / (2.0 * n));
    case vvckit::XformKind::kDst7:
      return std::sqrt(4.0 / (2 * n + 1)) * std::sin(pi * (2 * k + 1) * (m + 1) / (2.0 * n + 1));
    case vvckit::XformKind::kDct8:
      return std::sqrt(4.0 / (2 * n + 1)) * std::cos(pi * (2 * k + 1) * (2 * m + 1) / (4.0 * n + 2));
  }
  return 0.0;
}

// Coefficients whose inverse under the library's shift schedule reproduces
// the residual: C = 2^(15 - depth) * Tv * R * Th^T, rounded.
inline std::vector<int16_t> forward(const std::vector<int>& resid, int w, int h, vvckit::XformKind kh,
                                    vvckit::XformKind kv, int depth) {
  std::vector<double> tmp(static_cast<std::size_t>(w) * h);
  for (int k = 0; k < h; ++k)
    for (int x = 0; x < w; ++x) {
      double s = 0;
      for (int y = 0; y < h; ++y) s += basis(kv, h, k, y) * resid[static_cast<std::size_t>(y) * w + x];
      tmp[static_cast<std::size_t>(k) * w + x] = s;
    }
  const double scale = std::ldexp(1.0, 15 - depth);
  std::vector<int16_t> out(static_cast<std::size_t>(w) * h);
  for (int k = 0; k < h; ++k)
    for (int j = 0; j < w; ++j) {
      double s = 0;
      for (int x = 0; x < w; ++x) s += tmp[static_cast<std::size_t>(k) * w + x] * basis(kh, w, j, x);
      const long v = std::lround(s * scale);
      out[static_cast<std::size_t>(k) * w + j] = static_cast<int16_t>(std::clamp<long>(v, INT16_MIN, INT16_MAX));
    }
  return out;
}

}  // namespace oracle
