#include "vvckit/interp.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace vvckit {

namespace {

// clang-format off
constexpr std::array<LumaRow, 16> kLumaRows = {{
    {  0, 0,   0, 64,  0,   0, 0,  0 },
    {  0, 1,  -3, 63,  4,  -2, 1,  0 },
    { -1, 2,  -5, 62,  8,  -3, 1,  0 },
    { -1, 3,  -8, 60, 13,  -4, 1,  0 },
    { -1, 4, -10, 58, 17,  -5, 1,  0 },
    { -1, 4, -11, 52, 26,  -8, 3, -1 },
    { -1, 3,  -9, 47, 31, -10, 4, -1 },
    { -1, 4, -11, 45, 34, -10, 4, -1 },
    { -1, 4, -11, 40, 40, -11, 4, -1 },
    { -1, 4, -10, 34, 45, -11, 4, -1 },
    { -1, 4, -10, 31, 47,  -9, 3, -1 },
    { -1, 3,  -8, 26, 52, -11, 4, -1 },
    {  0, 1,  -5, 17, 58, -10, 4, -1 },
    {  0, 1,  -4, 13, 60,  -8, 3, -1 },
    {  0, 1,  -3,  8, 62,  -5, 2, -1 },
    {  0, 1,  -2,  4, 63,  -3, 1,  0 },
}};

constexpr LumaRow kLumaAltHalfPel = { 0, 3, 9, 20, 20, 9, 3, 0 };

constexpr std::array<ChromaRow, 32> kChromaRows = {{
    {  0, 64,  0,  0 }, { -1, 63,  2,  0 }, { -2, 62,  4,  0 }, { -2, 60,  7, -1 },
    { -2, 58, 10, -2 }, { -3, 57, 12, -2 }, { -4, 56, 14, -2 }, { -4, 55, 15, -2 },
    { -4, 54, 16, -2 }, { -5, 53, 18, -2 }, { -6, 52, 20, -2 }, { -6, 49, 24, -3 },
    { -6, 46, 28, -4 }, { -5, 44, 29, -4 }, { -4, 42, 30, -4 }, { -4, 39, 33, -4 },
    { -4, 36, 36, -4 }, { -4, 33, 39, -4 }, { -4, 30, 42, -4 }, { -4, 29, 44, -5 },
    { -4, 28, 46, -6 }, { -3, 24, 49, -6 }, { -2, 20, 52, -6 }, { -2, 18, 53, -5 },
    { -2, 16, 54, -4 }, { -2, 15, 55, -4 }, { -2, 14, 56, -4 }, { -2, 12, 57, -3 },
    { -2, 10, 58, -2 }, { -1,  7, 60, -2 }, {  0,  4, 62, -2 }, {  0,  2, 63, -1 },
}};
// clang-format on

// Largest sum of |coefficients| for which 16-bit first-pass intermediates are
// safe at both depths: 255 * 128 and (1023 * 128) >> 2 stay below 2^15.
constexpr int kMaxAbsTapSum = 128;

template <std::size_t N>
int sum_of(const std::array<int16_t, N>& r) {
  int s = 0;
  for (auto c : r) s += c;
  return s;
}

template <std::size_t N>
int abs_sum_of(const std::array<int16_t, N>& r) {
  int s = 0;
  for (auto c : r) s += std::abs(c);
  return s;
}

template <std::size_t N>
void check_row_common(const std::array<int16_t, N>& r, const std::string& what) {
  if (sum_of(r) != 64) throw ContractViolation(what + ": coefficients do not sum to 64");
  if (abs_sum_of(r) > kMaxAbsTapSum)
    throw ContractViolation(what + ": |coefficient| sum exceeds 16-bit intermediate headroom");
}

struct AxisTaps {
  TapPath path = TapPath::kCopy;
  std::array<int16_t, 8> taps{};
  int start = 0;
};

template <std::size_t N>
AxisTaps make_axis(TapPath path, const std::array<int16_t, N>& row, int first, int count, bool reverse,
                   int start) {
  AxisTaps a;
  a.path = path;
  a.start = start;
  for (int k = 0; k < count; ++k) a.taps[k] = reverse ? row[first + count - 1 - k] : row[first + k];
  return a;
}

AxisTaps luma_axis(const LumaFilterTable& table, const AxisClass& cls, bool reverse) {
  switch (cls.path) {
    case TapPath::kCopy: return {};
    case TapPath::kTap6: return make_axis(TapPath::kTap6, table.alt_half_pel(), 1, 6, false, -2);
    case TapPath::kTap7: {
      // Base rows 1..4 have f7 = 0; mirrored use of the same taps starts one
      // sample later.
      const LumaRow& base = table.row(cls.base_position);
      return make_axis(TapPath::kTap7, base, 0, 7, reverse, reverse ? -2 : -3);
    }
    default: {
      const LumaRow& base = table.row(cls.base_position);
      return make_axis(TapPath::kTap8, base, 0, 8, reverse, -3);
    }
  }
}

AxisTaps chroma_axis(int position, const ChromaFilterTable& table) {
  if (position == 0) return {};
  const int base = std::min(position, 32 - position);
  const bool reverse = position > 16;
  return make_axis(TapPath::kTap4, table.row(base), 0, 4, reverse, -1);
}

AxisTaps bilinear_axis(int f) {
  if (f == 0) return {};
  AxisTaps a;
  a.path = TapPath::kTap2;
  a.taps[0] = static_cast<int16_t>(64 - 4 * f);
  a.taps[1] = static_cast<int16_t>(4 * f);
  a.start = 0;
  return a;
}

AxisClass luma_class(int p, bool hpel_alt) {
  if (p == 0) return {TapPath::kCopy, 0};
  if (p == 8 && hpel_alt) return {TapPath::kTap6, 8};
  const int base = std::min(p, 16 - p);
  return {base <= 4 ? TapPath::kTap7 : TapPath::kTap8, static_cast<uint8_t>(base)};
}

void run_separable(const Plane& src, const BlockRect& b, const AxisTaps& h, const AxisTaps& v, const KernelTable& k,
                   uint16_t* dst, std::ptrdiff_t dst_stride) {
  const int d = src.depth().index();
  if (h.path == TapPath::kCopy && v.path == TapPath::kCopy) {
    for (int y = 0; y < b.h; ++y) std::copy_n(src.row(b.y + y) + b.x, b.w, dst + y * dst_stride);
    return;
  }

  const int nh = h.path == TapPath::kCopy ? 1 : tap_count(h.path);
  const int nv = v.path == TapPath::kCopy ? 1 : tap_count(v.path);
  const BlockRect window{b.x + h.start, b.y + v.start, b.w + nh - 1, b.h + nv - 1};

  const uint16_t* base = nullptr;
  std::ptrdiff_t stride = 0;
  thread_local std::vector<uint16_t> patch;
  if (src.contains(window)) {
    base = src.row(window.y) + window.x;
    stride = src.stride();
  } else {
    patch.resize(static_cast<std::size_t>(window.w) * window.h);
    for (int y = 0; y < window.h; ++y)
      for (int x = 0; x < window.w; ++x)
        patch[static_cast<std::size_t>(y) * window.w + x] = src.read_clamped(window.x + x, window.y + y);
    base = patch.data();
    stride = window.w;
  }

  if (v.path == TapPath::kCopy) {
    k.interp.h_only[tap_slot(h.path)][d](base, stride, dst, dst_stride, b.w, b.h, h.taps.data());
  } else if (h.path == TapPath::kCopy) {
    k.interp.v_only[tap_slot(v.path)][d](base, stride, dst, dst_stride, b.w, b.h, v.taps.data());
  } else {
    thread_local std::vector<int16_t> mid;
    mid.resize(static_cast<std::size_t>(b.w) * window.h);
    k.interp.h_to_mid[tap_slot(h.path)][d](base, stride, mid.data(), b.w, b.w, window.h, h.taps.data());
    k.interp.v_from_mid[tap_slot(v.path)][d](mid.data(), b.w, dst, dst_stride, b.w, b.h, v.taps.data());
  }
}

void check_block(const Plane& src, const BlockRect& block) {
  if (!src.contains(block)) throw ContractViolation("interpolation block out of bounds");
}

}  // namespace

LumaFilterTable::LumaFilterTable(const std::array<LumaRow, kPositions>& rows, const LumaRow& alt_half_pel)
    : rows_(rows), alt_(alt_half_pel) {
  validate_luma_table(*this);
}

const LumaRow& LumaFilterTable::row(int position, bool hpel_alt) const {
  VVCKIT_CHECK(position >= 0 && position < kPositions, "luma fractional position out of range");
  return position == 8 && hpel_alt ? alt_ : rows_[position];
}

ChromaFilterTable::ChromaFilterTable(const std::array<ChromaRow, kPositions>& rows) : rows_(rows) {
  validate_chroma_table(*this);
}

const ChromaRow& ChromaFilterTable::row(int position) const {
  VVCKIT_CHECK(position >= 0 && position < kPositions, "chroma fractional position out of range");
  return rows_[position];
}

ChromaFilterTable ChromaFilterTable::parse(std::istream& in) {
  std::array<ChromaRow, kPositions> rows{};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::array<int, 4> v{};
    int count = 0;
    int value = 0;
    while (ls >> value) {
      if (count < 4) v[count] = value;
      ++count;
    }
    if (!ls.eof()) throw FormatError("chroma table line " + std::to_string(n + 1) + ": non-integer token");
    if (count == 0) continue;
    if (count != 4) throw FormatError("chroma table line " + std::to_string(n + 1) + ": expected 4 integers");
    if (n >= kPositions) throw FormatError("chroma table has more than 32 rows");
    for (int i = 0; i < 4; ++i) {
      if (v[i] < -128 || v[i] > 128) throw FormatError("chroma coefficient out of range");
      rows[n][i] = static_cast<int16_t>(v[i]);
    }
    ++n;
  }
  if (n != kPositions) throw FormatError("chroma table must have exactly 32 rows, got " + std::to_string(n));
  return ChromaFilterTable(rows);
}

ChromaFilterTable ChromaFilterTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse(in);
}

void validate_luma_table(const LumaFilterTable& t) {
  const auto& r = t.rows();
  if (r[0] != LumaRow{0, 0, 0, 64, 0, 0, 0, 0}) throw ContractViolation("luma row 0 must be the identity");
  for (int p = 0; p < LumaFilterTable::kPositions; ++p) check_row_common(r[p], "luma row " + std::to_string(p));
  check_row_common(t.alt_half_pel(), "luma alternate half-pel row");
  for (int p = 1; p < LumaFilterTable::kPositions; ++p)
    for (int i = 0; i < 8; ++i)
      if (r[p][i] != r[16 - p][7 - i])
        throw ContractViolation("luma rows " + std::to_string(p) + " and " + std::to_string(16 - p) +
                                " are not mirror images");
  for (int p = 1; p <= 4; ++p)
    if (r[p][7] != 0) throw ContractViolation("luma row " + std::to_string(p) + " must have f7 = 0");
  for (int p = 12; p <= 15; ++p)
    if (r[p][0] != 0) throw ContractViolation("luma row " + std::to_string(p) + " must have f0 = 0");
  if (t.alt_half_pel()[0] != 0 || t.alt_half_pel()[7] != 0)
    throw ContractViolation("alternate half-pel row must have f0 = f7 = 0");
}

void validate_chroma_table(const ChromaFilterTable& t) {
  const auto& r = t.rows();
  if (r[0] != ChromaRow{0, 64, 0, 0}) throw ContractViolation("chroma row 0 must be the identity");
  for (int p = 0; p < ChromaFilterTable::kPositions; ++p) check_row_common(r[p], "chroma row " + std::to_string(p));
  for (int p = 1; p < ChromaFilterTable::kPositions; ++p)
    for (int i = 0; i < 4; ++i)
      if (r[p][i] != r[32 - p][3 - i])
        throw ContractViolation("chroma rows " + std::to_string(p) + " and " + std::to_string(32 - p) +
                                " are not mirror images");
}

const LumaFilterTable& luma_table_default() {
  static const LumaFilterTable table(kLumaRows, kLumaAltHalfPel);
  return table;
}

const ChromaFilterTable& chroma_table_default() {
  static const ChromaFilterTable table(kChromaRows);
  return table;
}

int effective_taps(const LumaRow& row) {
  int first = -1;
  int last = -1;
  for (int i = 0; i < 8; ++i) {
    if (row[i] != 0) {
      if (first < 0) first = i;
      last = i;
    }
  }
  return first < 0 ? 0 : last - first + 1;
}

int effective_taps(int position, bool hpel_alt, const LumaFilterTable& table) {
  return effective_taps(table.row(position, hpel_alt));
}

uint32_t InterpKernelId::key() const {
  return (static_cast<uint32_t>(depth) << 24) | (static_cast<uint32_t>(h.path) << 20) |
         (static_cast<uint32_t>(h.base_position) << 12) | (static_cast<uint32_t>(v.path) << 8) |
         static_cast<uint32_t>(v.base_position);
}

std::string InterpKernelId::name() const {
  auto axis = [](const AxisClass& a) {
    if (a.path == TapPath::kCopy) return std::string("copy");
    return std::to_string(tap_count(a.path)) + "tap@" + std::to_string(a.base_position);
  };
  return "d" + std::to_string(depth) + "_h" + axis(h) + "_v" + axis(v);
}

InterpSelection select_interp_kernel(const FracPos& frac, BitDepth depth) {
  VVCKIT_CHECK(frac.fx >= 0 && frac.fx < 16 && frac.fy >= 0 && frac.fy < 16, "luma fractional position out of range");
  InterpSelection s;
  s.id.depth = static_cast<uint8_t>(depth.value());
  s.id.h = luma_class(frac.fx, frac.hpel_alt);
  s.id.v = luma_class(frac.fy, frac.hpel_alt);
  s.reverse_h = frac.fx > 8;
  s.reverse_v = frac.fy > 8;
  return s;
}

void interp_luma_into(const Plane& src, const BlockRect& block, const FracPos& frac, const LumaFilterTable& table,
                      const KernelTable& k, uint16_t* dst, std::ptrdiff_t dst_stride) {
  check_block(src, block);
  const InterpSelection sel = select_interp_kernel(frac, src.depth());
  const AxisTaps h = luma_axis(table, sel.id.h, sel.reverse_h);
  const AxisTaps v = luma_axis(table, sel.id.v, sel.reverse_v);
  run_separable(src, block, h, v, k, dst, dst_stride);
}

void interp_chroma_into(const Plane& src, const BlockRect& block, const FracPos& frac,
                        const ChromaFilterTable& table, const KernelTable& k, uint16_t* dst,
                        std::ptrdiff_t dst_stride) {
  check_block(src, block);
  VVCKIT_CHECK(frac.fx >= 0 && frac.fx < 32 && frac.fy >= 0 && frac.fy < 32, "chroma fractional position out of range");
  run_separable(src, block, chroma_axis(frac.fx, table), chroma_axis(frac.fy, table), k, dst, dst_stride);
}

void interp_bilinear_into(const Plane& src, const BlockRect& block, const FracPos& frac, const KernelTable& k,
                          uint16_t* dst, std::ptrdiff_t dst_stride) {
  check_block(src, block);
  VVCKIT_CHECK(frac.fx >= 0 && frac.fx < 16 && frac.fy >= 0 && frac.fy < 16, "bilinear fractional position out of range");
  run_separable(src, block, bilinear_axis(frac.fx), bilinear_axis(frac.fy), k, dst, dst_stride);
}

Plane interp_luma(const Plane& src, const BlockRect& block, const FracPos& frac, const LumaFilterTable& table,
                  const KernelTable& k) {
  check_block(src, block);
  Plane out(block.w, block.h, src.depth());
  interp_luma_into(src, block, frac, table, k, out.row(0), out.stride());
  return out;
}

Plane interp_chroma(const Plane& src, const BlockRect& block, const FracPos& frac, const ChromaFilterTable& table,
                    const KernelTable& k) {
  check_block(src, block);
  Plane out(block.w, block.h, src.depth());
  interp_chroma_into(src, block, frac, table, k, out.row(0), out.stride());
  return out;
}

Plane interp_bilinear(const Plane& src, const BlockRect& block, const FracPos& frac, const KernelTable& k) {
  check_block(src, block);
  Plane out(block.w, block.h, src.depth());
  interp_bilinear_into(src, block, frac, k, out.row(0), out.stride());
  return out;
}

}  // namespace vvckit
