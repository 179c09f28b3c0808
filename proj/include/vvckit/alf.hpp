#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "vvckit/frame.hpp"
#include "vvckit/kernels.hpp"

namespace vvckit {

enum class AlfComponent : uint8_t { kLuma, kChroma };

struct DiamondOffset {
  int dx;
  int dy;
};

// One representative offset per coefficient index; (-dx, -dy) shares the
// index. The center (index 12 luma, 6 chroma) is implicit in the filter.
inline constexpr std::array<DiamondOffset, 12> kAlfLumaOffsets = {{
    {0, -3},
    {-1, -2}, {0, -2}, {1, -2},
    {-2, -1}, {-1, -1}, {0, -1}, {1, -1}, {2, -1},
    {-3, 0}, {-2, 0}, {-1, 0},
}};

inline constexpr std::array<DiamondOffset, 6> kAlfChromaOffsets = {{
    {0, -2},
    {-1, -1}, {0, -1}, {1, -1},
    {-2, 0}, {-1, 0},
}};

inline constexpr int kAlfLumaTaps = 12;
inline constexpr int kAlfChromaTaps = 6;
inline constexpr int kAlfNumClasses = 25;
inline constexpr int kAlfMaxChromaFilters = 8;

// Coefficient index at (dx, dy); the center maps to 12 / 6, positions outside
// the diamond to -1.
int alf_diamond_index(AlfComponent c, int dx, int dy);

struct AlfLumaFilter {
  std::array<int16_t, kAlfLumaTaps> coeff{};
  std::array<uint8_t, kAlfLumaTaps> clip_idx{};

  friend bool operator==(const AlfLumaFilter&, const AlfLumaFilter&) = default;
};

struct AlfChromaFilter {
  std::array<int16_t, kAlfChromaTaps> coeff{};
  std::array<uint8_t, kAlfChromaTaps> clip_idx{};

  friend bool operator==(const AlfChromaFilter&, const AlfChromaFilter&) = default;
};

using AlfClipTable = std::array<int16_t, 4>;

// 1 << (depth - 1 - 2n): {128, 32, 8, 2} at 8 bits.
AlfClipTable alf_default_clip_table(BitDepth depth);

struct AlfFilterSet {
  std::array<AlfLumaFilter, kAlfNumClasses> luma{};
  std::vector<AlfChromaFilter> chroma{AlfChromaFilter{}};
  // Indexed by BitDepth::index().
  std::array<AlfClipTable, 2> clip_table{alf_default_clip_table(kDepth8), alf_default_clip_table(kDepth10)};

  const AlfClipTable& clips(BitDepth d) const { return clip_table[d.index()]; }

  // Throws ContractViolation on the first broken invariant.
  void validate() const;

  // Text form: 25 luma lines "c0 .. c11 ; i0 .. i11", then 1..8 chroma lines
  // "c0 .. c5 ; i0 .. i5". Blank lines and '#' comments are ignored.
  static AlfFilterSet parse(std::istream& in);
  static AlfFilterSet load(const std::filesystem::path& path);
  void write(std::ostream& out) const;

  // Seeded random filters with realistic magnitudes.
  static AlfFilterSet random(uint64_t seed, int chroma_filters = 2);
};

// Pure scalar decision from the four gradient sums (shared by every tier).
AlfClassification alf_class_from_sums(int64_t gv, int64_t gh, int64_t gd0, int64_t gd1, int depth);

// Activity quantization shift above the bit depth.
inline constexpr int kAlfActivityShift = 3;

AlfClassification alf_classify_4x4(const Plane& p, const BlockRect& block, const KernelTable& k = scalar_kernels());

// perm[i]: which original coefficient lands at index i under transpose_idx.
std::array<int, kAlfLumaTaps> alf_transpose_permutation_luma(int transpose_idx);
std::array<int, kAlfChromaTaps> alf_transpose_permutation_chroma(int transpose_idx);

AlfLumaFilter alf_transpose_filter(const AlfLumaFilter& f, int transpose_idx);
AlfChromaFilter alf_transpose_filter(const AlfChromaFilter& f, int transpose_idx);

void alf_filter_block_luma(const Plane& src, Plane& dst, const BlockRect& block, const AlfLumaFilter& f,
                           const AlfClipTable& clip_table, const KernelTable& k = scalar_kernels());
void alf_filter_block_chroma(const Plane& src, Plane& dst, const BlockRect& block, const AlfChromaFilter& f,
                             const AlfClipTable& clip_table, const KernelTable& k = scalar_kernels());

// Edge-replicated copy of a plane with the margins the ALF kernels need.
class AlfPaddedPlane {
 public:
  explicit AlfPaddedPlane(const Plane& src);

  const uint16_t* at(int x, int y) const { return origin_ + static_cast<std::ptrdiff_t>(y) * stride_ + x; }
  std::ptrdiff_t stride() const { return stride_; }
  int width() const { return width_; }
  int height() const { return height_; }
  BitDepth depth() const { return depth_; }

 private:
  std::vector<uint16_t> buf_;
  const uint16_t* origin_ = nullptr;
  std::ptrdiff_t stride_ = 0;
  int width_ = 0;
  int height_ = 0;
  BitDepth depth_ = kDepth8;
};

// Every 25 x 4 transposed luma filter and every chroma filter resolved to
// kernel form for one bit depth.
class AlfPreparedSet {
 public:
  AlfPreparedSet(const AlfFilterSet& set, BitDepth depth);

  const AlfBlockFilter& luma(int class_idx, int transpose_idx) const { return luma_[class_idx * 4 + transpose_idx]; }
  const AlfBlockFilter& chroma(std::size_t i) const { return chroma_[i]; }
  std::size_t chroma_count() const { return chroma_.size(); }

 private:
  std::array<AlfBlockFilter, kAlfNumClasses * 4> luma_{};
  std::vector<AlfBlockFilter> chroma_;
};

// Filters one rectangular region (4-aligned origin) of the padded source into
// dst. Luma blocks are classified first; chroma uses chroma_filter.
void alf_filter_region(const AlfPaddedPlane& src, Plane& dst, const BlockRect& region, const AlfPreparedSet& set,
                       AlfComponent component, std::size_t chroma_filter, const KernelTable& k);

// Whole-plane ALF: enabled CTUs filtered, disabled CTUs copied. ctu_enable is
// row-major over ceil(W / ctu) x ceil(H / ctu). Chroma CTU i uses chroma
// filter i mod chroma.size().
void alf_filter_plane(const Plane& src, Plane& dst, const AlfFilterSet& set, AlfComponent component,
                      std::span<const uint8_t> ctu_enable, int ctu_size = 128,
                      const KernelTable& k = scalar_kernels());

}  // namespace vvckit
