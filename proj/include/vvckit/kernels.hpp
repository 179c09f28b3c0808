#pragma once

// Function-pointer tables for every accelerated primitive. One table exists
// per variant tier; the scalar table is the reference every other tier must
// match sample for sample.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace vvckit {

enum class VariantTier : uint8_t { kScalar = 0, kVector128 = 1, kVector256 = 2 };

inline constexpr std::array<VariantTier, 3> kAllTiers = {VariantTier::kScalar, VariantTier::kVector128,
                                                         VariantTier::kVector256};

std::string_view tier_name(VariantTier t);

enum class KernelFamily : uint8_t {
  kAlfClassify = 0,
  kAlfLuma,
  kAlfChroma,
  kInterpLuma,
  kInterpChroma,
  kInterpBilinear,
  kXformInv,
};

inline constexpr std::size_t kNumFamilies = 7;

inline constexpr std::array<KernelFamily, kNumFamilies> kAllFamilies = {
    KernelFamily::kAlfClassify,  KernelFamily::kAlfLuma,        KernelFamily::kAlfChroma,
    KernelFamily::kInterpLuma,   KernelFamily::kInterpChroma,   KernelFamily::kInterpBilinear,
    KernelFamily::kXformInv,
};

std::string_view family_name(KernelFamily f);

// Separable filter tap counts that get a dedicated kernel.
enum class TapPath : uint8_t { kCopy = 0, kTap8, kTap7, kTap6, kTap4, kTap2 };

inline constexpr int tap_count(TapPath p) {
  switch (p) {
    case TapPath::kTap8: return 8;
    case TapPath::kTap7: return 7;
    case TapPath::kTap6: return 6;
    case TapPath::kTap4: return 4;
    case TapPath::kTap2: return 2;
    case TapPath::kCopy: return 1;
  }
  return 1;
}

// Index into the per-tap kernel arrays (kTap8..kTap2 -> 0..4).
inline constexpr int tap_slot(TapPath p) { return static_cast<int>(p) - 1; }
inline constexpr int kNumTapSlots = 5;

struct InterpKernels {
  // First pass: acc >> (depth - 8) into signed 16-bit intermediates.
  using HToMid = void (*)(const uint16_t* src, std::ptrdiff_t src_stride, int16_t* dst, std::ptrdiff_t dst_stride,
                          int width, int height, const int16_t* taps);
  // Second pass: (acc + 2^(11-s1)) >> (12 - s1), clamped.
  using VFromMid = void (*)(const int16_t* src, std::ptrdiff_t src_stride, uint16_t* dst,
                            std::ptrdiff_t dst_stride, int width, int height, const int16_t* taps);
  // Single active pass: (acc + 32) >> 6, clamped.
  using SinglePass = void (*)(const uint16_t* src, std::ptrdiff_t src_stride, uint16_t* dst,
                              std::ptrdiff_t dst_stride, int width, int height, const int16_t* taps);

  std::array<std::array<HToMid, 2>, kNumTapSlots> h_to_mid{};
  std::array<std::array<VFromMid, 2>, kNumTapSlots> v_from_mid{};
  std::array<std::array<SinglePass, 2>, kNumTapSlots> h_only{};
  std::array<std::array<SinglePass, 2>, kNumTapSlots> v_only{};
};

struct AlfClassification {
  int class_idx = 0;
  int transpose_idx = 0;

  friend bool operator==(const AlfClassification&, const AlfClassification&) = default;
};

// Per-4x4-block filter after geometric transposition: coefficient and clip
// magnitude for each tap pair. Chroma uses the first six entries.
struct AlfBlockFilter {
  std::array<int16_t, 12> coeff{};
  std::array<int16_t, 12> clip{};
};

struct AlfKernels {
  // src points at the first block's top-left sample inside a buffer padded by
  // at least kAlfPadX columns and kAlfPadY rows on every side.
  using Classify = void (*)(const uint16_t* src, std::ptrdiff_t stride, int num_blocks, int depth,
                            AlfClassification* out);
  // Filters num_blocks horizontally adjacent 4x4 blocks, one filter per block.
  using Filter = void (*)(const uint16_t* src, std::ptrdiff_t src_stride, uint16_t* dst, std::ptrdiff_t dst_stride,
                          int num_blocks, const AlfBlockFilter* filters, int depth);

  Classify classify = nullptr;
  Filter luma = nullptr;
  Filter chroma = nullptr;
};

inline constexpr int kAlfPadX = 16;
inline constexpr int kAlfPadY = 4;

struct XformKernels {
  // out[i][x] = clip16((sum_m weight(i, m) * rows[m][x] + (1 << (shift - 1))) >> shift)
  // with weight(i, m) = weights[i * w_i + m * w_m]; i < out_rows, m < depth_m, x < width.
  using MatRows = void (*)(const int16_t* weights, std::ptrdiff_t w_i, std::ptrdiff_t w_m, const int16_t* rows,
                           std::ptrdiff_t row_stride, int depth_m, int out_rows, int width, int shift, int16_t* out,
                           std::ptrdiff_t out_stride);

  MatRows mat_rows = nullptr;
};

struct KernelTable {
  VariantTier tier = VariantTier::kScalar;
  // Tier actually bound for each family (fallbacks show up as kScalar).
  std::array<VariantTier, kNumFamilies> bound{};
  InterpKernels interp;
  AlfKernels alf;
  XformKernels xform;

  VariantTier bound_tier(KernelFamily f) const { return bound[static_cast<std::size_t>(f)]; }
};

const KernelTable& scalar_kernels();

// Per-tier initializers; each overwrites only the entries it accelerates.
void init_interp_scalar(InterpKernels& k);
void init_alf_scalar(AlfKernels& k);
void init_xform_scalar(XformKernels& k);

// Deliberately wrong (off-by-one rounding) variants for fault-injection tests.
void init_interp_faulty(InterpKernels& k);
void init_alf_faulty(AlfKernels& k);
void init_xform_faulty(XformKernels& k);

#if defined(VVCKIT_X86)
void init_interp_sse41(InterpKernels& k);
void init_alf_sse41(AlfKernels& k);
void init_xform_sse41(XformKernels& k);
void init_interp_avx2(InterpKernels& k);
void init_alf_avx2(AlfKernels& k);
void init_xform_avx2(XformKernels& k);
#endif

}  // namespace vvckit
