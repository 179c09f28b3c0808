#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "vvckit/frame.hpp"
#include "vvckit/kernels.hpp"

namespace vvckit {

enum class XformKind : uint8_t { kDct2, kDst7, kDct8 };

const char* xform_kind_name(XformKind k);

// DCT-2: 4..64; DST-7 / DCT-8: 4..32 (powers of two).
bool xform_size_supported(XformKind kind, int n);

// Row-major block of signed 16-bit values (coefficient levels or residuals).
struct Int16Block {
  int w = 0;
  int h = 0;
  std::vector<int16_t> values;

  Int16Block() = default;
  Int16Block(int width, int height) : w(width), h(height), values(static_cast<std::size_t>(width) * height, 0) {}

  int16_t& at(int x, int y) { return values[static_cast<std::size_t>(y) * w + x]; }
  int16_t at(int x, int y) const { return values[static_cast<std::size_t>(y) * w + x]; }

  friend bool operator==(const Int16Block&, const Int16Block&) = default;
};

using CoeffBlock = Int16Block;
using ResidualBlock = Int16Block;

// Integer basis: entries[k * n + m] = round(64 * T[k][m]), row k = frequency.
struct BasisMatrix {
  XformKind kind = XformKind::kDct2;
  int n = 0;
  std::vector<int16_t> entries;

  int at(int k, int m) const { return entries[static_cast<std::size_t>(k) * n + m]; }
};

// Analytic orthonormal basis value T[k][m] in double precision.
double analytic_basis(XformKind kind, int n, int k, int m);

// Cached; safe for concurrent readers.
const BasisMatrix& basis_matrix(XformKind kind, int n);

inline constexpr std::array<int, 6> kLevelScale = {40, 45, 51, 57, 64, 72};

CoeffBlock dequant(const CoeffBlock& levels, int qp);
void dequant_into(const int16_t* levels, std::size_t count, int qp, int16_t* out);

// Column pass with the transposed kind_v basis, >> 7; row pass with the
// transposed kind_h basis, >> (20 - depth). Both passes clip to int16.
ResidualBlock inv_transform_2d(const CoeffBlock& coeffs, XformKind kind_h, XformKind kind_v, BitDepth depth,
                               const KernelTable& k = scalar_kernels());

// Same, into caller storage; scratch must hold w * h values.
void inv_transform_2d_into(const int16_t* coeffs, int w, int h, XformKind kind_h, XformKind kind_v, BitDepth depth,
                           const KernelTable& k, int16_t* scratch, int16_t* out);

}  // namespace vvckit
