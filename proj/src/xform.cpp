#include "vvckit/xform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace vvckit {

namespace {

constexpr std::array<int, 5> kSizes = {4, 8, 16, 32, 64};

int size_slot(int n) {
  for (std::size_t i = 0; i < kSizes.size(); ++i)
    if (kSizes[i] == n) return static_cast<int>(i);
  return -1;
}

struct BasisCache {
  std::array<std::array<BasisMatrix, 5>, 3> table;

  BasisCache() {
    for (int kind = 0; kind < 3; ++kind) {
      for (int s = 0; s < 5; ++s) {
        const auto xk = static_cast<XformKind>(kind);
        const int n = kSizes[s];
        if (!xform_size_supported(xk, n)) continue;
        BasisMatrix& b = table[kind][s];
        b.kind = xk;
        b.n = n;
        b.entries.resize(static_cast<std::size_t>(n) * n);
        for (int k = 0; k < n; ++k)
          for (int m = 0; m < n; ++m)
            b.entries[static_cast<std::size_t>(k) * n + m] =
                static_cast<int16_t>(std::lround(64.0 * analytic_basis(xk, n, k, m)));
      }
    }
  }
};

void check_size(XformKind kind, int n) {
  if (!xform_size_supported(kind, n))
    throw ContractViolation(std::string("unsupported ") + xform_kind_name(kind) + " size " + std::to_string(n));
}

}  // namespace

const char* xform_kind_name(XformKind k) {
  switch (k) {
    case XformKind::kDct2: return "DCT2";
    case XformKind::kDst7: return "DST7";
    case XformKind::kDct8: return "DCT8";
  }
  return "?";
}

bool xform_size_supported(XformKind kind, int n) {
  const int s = size_slot(n);
  if (s < 0) return false;
  return kind == XformKind::kDct2 || n <= 32;
}

double analytic_basis(XformKind kind, int n, int k, int m) {
  using std::numbers::pi;
  const double nn = n;
  switch (kind) {
    case XformKind::kDct2: {
      const double c = k == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
      return c * std::sqrt(2.0 / nn) * std::cos(pi * k * (2.0 * m + 1.0) / (2.0 * nn));
    }
    case XformKind::kDst7:
      return std::sqrt(4.0 / (2.0 * nn + 1.0)) * std::sin(pi * (2.0 * k + 1.0) * (m + 1.0) / (2.0 * nn + 1.0));
    case XformKind::kDct8:
      return std::sqrt(4.0 / (2.0 * nn + 1.0)) *
             std::cos(pi * (2.0 * k + 1.0) * (2.0 * m + 1.0) / (4.0 * nn + 2.0));
  }
  return 0.0;
}

const BasisMatrix& basis_matrix(XformKind kind, int n) {
  check_size(kind, n);
  static const BasisCache cache;
  return cache.table[static_cast<int>(kind)][size_slot(n)];
}

void dequant_into(const int16_t* levels, std::size_t count, int qp, int16_t* out) {
  VVCKIT_CHECK(qp >= 0 && qp <= 63, "qp must be in 0..63");
  const int64_t scale = static_cast<int64_t>(kLevelScale[qp % 6]) << (qp / 6);
  for (std::size_t i = 0; i < count; ++i) {
    const int64_t v = (levels[i] * scale + 32) >> 6;
    out[i] = static_cast<int16_t>(std::clamp<int64_t>(v, INT16_MIN, INT16_MAX));
  }
}

CoeffBlock dequant(const CoeffBlock& levels, int qp) {
  CoeffBlock out(levels.w, levels.h);
  dequant_into(levels.values.data(), levels.values.size(), qp, out.values.data());
  return out;
}

void inv_transform_2d_into(const int16_t* coeffs, int w, int h, XformKind kind_h, XformKind kind_v, BitDepth depth,
                           const KernelTable& k, int16_t* scratch, int16_t* out) {
  check_size(kind_h, w);
  check_size(kind_v, h);
  const BasisMatrix& bv = basis_matrix(kind_v, h);
  const BasisMatrix& bh = basis_matrix(kind_h, w);
  // Column pass: tmp[k][x] = sum_m Bv[m][k] * C[m][x].
  k.xform.mat_rows(bv.entries.data(), 1, h, coeffs, w, h, h, w, 7, scratch, w);
  // Row pass: out[y][x] = sum_m tmp[y][m] * Bh[m][x].
  k.xform.mat_rows(scratch, w, 1, bh.entries.data(), w, w, h, w, 20 - depth.value(), out, w);
}

ResidualBlock inv_transform_2d(const CoeffBlock& coeffs, XformKind kind_h, XformKind kind_v, BitDepth depth,
                               const KernelTable& k) {
  VVCKIT_CHECK(coeffs.values.size() == static_cast<std::size_t>(coeffs.w) * coeffs.h,
               "coefficient block size mismatch");
  check_size(kind_h, coeffs.w);
  check_size(kind_v, coeffs.h);
  ResidualBlock out(coeffs.w, coeffs.h);
  std::vector<int16_t> scratch(coeffs.values.size());
  inv_transform_2d_into(coeffs.values.data(), coeffs.w, coeffs.h, kind_h, kind_v, depth, k, scratch.data(),
                        out.values.data());
  return out;
}

}  // namespace vvckit
