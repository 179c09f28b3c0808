#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "vvckit/frame.hpp"
#include "vvckit/kernels.hpp"

namespace vvckit {

using LumaRow = std::array<int16_t, 8>;
using ChromaRow = std::array<int16_t, 4>;

// 1/16-sample luma filters: positions 0..15 plus the alternate half-pel row
// (hpelIfIdx = 1) attached to position 8.
class LumaFilterTable {
 public:
  static constexpr int kPositions = 16;

  LumaFilterTable(const std::array<LumaRow, kPositions>& rows, const LumaRow& alt_half_pel);

  const LumaRow& row(int position, bool hpel_alt = false) const;
  const std::array<LumaRow, kPositions>& rows() const { return rows_; }
  const LumaRow& alt_half_pel() const { return alt_; }

 private:
  std::array<LumaRow, kPositions> rows_;
  LumaRow alt_;
};

// 1/32-sample chroma filters. Loadable from text (32 lines of 4 integers).
class ChromaFilterTable {
 public:
  static constexpr int kPositions = 32;

  explicit ChromaFilterTable(const std::array<ChromaRow, kPositions>& rows);

  static ChromaFilterTable parse(std::istream& in);
  static ChromaFilterTable load(const std::filesystem::path& path);

  const ChromaRow& row(int position) const;
  const std::array<ChromaRow, kPositions>& rows() const { return rows_; }

 private:
  std::array<ChromaRow, kPositions> rows_;
};

const LumaFilterTable& luma_table_default();
const ChromaFilterTable& chroma_table_default();

// Throws ContractViolation describing the first broken structural property.
void validate_luma_table(const LumaFilterTable& t);
void validate_chroma_table(const ChromaFilterTable& t);

struct FracPos {
  int fx = 0;
  int fy = 0;
  bool hpel_alt = false;
};

// Width of the smallest contiguous window holding every nonzero coefficient.
int effective_taps(const LumaRow& row);
int effective_taps(int position, bool hpel_alt, const LumaFilterTable& table = luma_table_default());

// Kernel class for one filtering axis. Symmetric positions p and 16 - p share
// a class (base_position = min(p, 16 - p)); the caller reverses taps.
struct AxisClass {
  TapPath path = TapPath::kCopy;
  uint8_t base_position = 0;

  friend bool operator==(const AxisClass&, const AxisClass&) = default;
};

struct InterpKernelId {
  uint8_t depth = 8;
  AxisClass h;
  AxisClass v;

  friend bool operator==(const InterpKernelId&, const InterpKernelId&) = default;

  bool is_copy() const { return h.path == TapPath::kCopy && v.path == TapPath::kCopy; }
  uint32_t key() const;
  std::string name() const;
};

struct InterpSelection {
  InterpKernelId id;
  bool reverse_h = false;
  bool reverse_v = false;
};

// Luma kernel selection by fractional position and bit depth.
InterpSelection select_interp_kernel(const FracPos& frac, BitDepth depth);

// Separable interpolation of the block at integer position `block` shifted by
// `frac`. Reference samples outside the plane are edge-replicated. The result
// is a block.w x block.h plane of final clamped samples.
Plane interp_luma(const Plane& src, const BlockRect& block, const FracPos& frac,
                  const LumaFilterTable& table = luma_table_default(), const KernelTable& k = scalar_kernels());
Plane interp_chroma(const Plane& src, const BlockRect& block, const FracPos& frac,
                    const ChromaFilterTable& table = chroma_table_default(),
                    const KernelTable& k = scalar_kernels());
// 2-tap [64 - 4f, 4f] per axis, f in 0..15.
Plane interp_bilinear(const Plane& src, const BlockRect& block, const FracPos& frac,
                      const KernelTable& k = scalar_kernels());

// Same as above, writing into caller storage (dst holds block.w x block.h).
void interp_luma_into(const Plane& src, const BlockRect& block, const FracPos& frac, const LumaFilterTable& table,
                      const KernelTable& k, uint16_t* dst, std::ptrdiff_t dst_stride);
void interp_chroma_into(const Plane& src, const BlockRect& block, const FracPos& frac,
                        const ChromaFilterTable& table, const KernelTable& k, uint16_t* dst,
                        std::ptrdiff_t dst_stride);
void interp_bilinear_into(const Plane& src, const BlockRect& block, const FracPos& frac, const KernelTable& k,
                          uint16_t* dst, std::ptrdiff_t dst_stride);

}  // namespace vvckit
