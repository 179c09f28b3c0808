#include "vvckit/alf.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "vvckit/rng.hpp"

namespace vvckit {

namespace {

constexpr std::array<int, 16> kActivityTable = {0, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3, 4};

DiamondOffset map_offset(DiamondOffset o, int transpose_idx) {
  switch (transpose_idx) {
    case 1: return {o.dy, o.dx};
    case 2: return {o.dx, -o.dy};
    case 3: return {o.dy, -o.dx};
    default: return o;
  }
}

template <std::size_t N>
std::array<int, N> permutation(AlfComponent c, const std::array<DiamondOffset, N>& offsets, int transpose_idx) {
  VVCKIT_CHECK(transpose_idx >= 0 && transpose_idx <= 3, "transpose index out of range");
  std::array<int, N> perm{};
  for (std::size_t i = 0; i < N; ++i) {
    const DiamondOffset m = map_offset(offsets[i], transpose_idx);
    perm[i] = alf_diamond_index(c, m.dx, m.dy);
  }
  return perm;
}

template <class Filter, std::size_t N>
Filter transpose(const Filter& f, const std::array<int, N>& perm) {
  Filter out;
  for (std::size_t i = 0; i < N; ++i) {
    out.coeff[i] = f.coeff[perm[i]];
    out.clip_idx[i] = f.clip_idx[perm[i]];
  }
  return out;
}

template <class Filter>
AlfBlockFilter to_block_filter(const Filter& f, const AlfClipTable& clips) {
  AlfBlockFilter b;
  for (std::size_t i = 0; i < f.coeff.size(); ++i) {
    b.coeff[i] = f.coeff[i];
    b.clip[i] = clips[f.clip_idx[i]];
  }
  return b;
}

template <class Filter>
void validate_filter(const Filter& f, const std::string& what) {
  for (std::size_t i = 0; i < f.coeff.size(); ++i) {
    if (f.coeff[i] < -127 || f.coeff[i] > 127) throw ContractViolation(what + ": |coefficient| exceeds 127");
    if (f.clip_idx[i] > 3) throw ContractViolation(what + ": clip index out of range");
  }
}

// Small padded patch around a single 4x4 block for the block-level APIs.
struct BlockPatch {
  static constexpr int kW = 4 + 2 * kAlfPadX;
  static constexpr int kH = 4 + 2 * kAlfPadY;
  std::array<uint16_t, kW * kH> buf{};

  BlockPatch(const Plane& p, const BlockRect& b) {
    for (int y = 0; y < kH; ++y)
      for (int x = 0; x < kW; ++x) buf[y * kW + x] = p.read_clamped(b.x + x - kAlfPadX, b.y + y - kAlfPadY);
  }
  const uint16_t* origin() const { return buf.data() + kAlfPadY * kW + kAlfPadX; }
};

void check_4x4(const Plane& p, const BlockRect& b) {
  if (b.w != 4 || b.h != 4) throw ContractViolation("ALF block must be 4x4");
  if (!p.contains(b)) throw ContractViolation("ALF block out of bounds");
}

template <class Filter, std::size_t N>
void parse_filter_line(const std::string& line, Filter& f, const std::string& what) {
  const auto semi = line.find(';');
  if (semi == std::string::npos) throw FormatError(what + ": missing ';' separator");
  std::istringstream cs(line.substr(0, semi));
  std::istringstream is(line.substr(semi + 1));
  std::array<int, N> c{};
  std::array<int, N> idx{};
  std::size_t nc = 0;
  std::size_t ni = 0;
  for (int v; cs >> v; ++nc)
    if (nc < N) c[nc] = v;
  if (!cs.eof()) throw FormatError(what + ": non-integer coefficient");
  for (int v; is >> v; ++ni)
    if (ni < N) idx[ni] = v;
  if (!is.eof()) throw FormatError(what + ": non-integer clip index");
  if (nc != N || ni != N)
    throw FormatError(what + ": expected " + std::to_string(N) + " coefficients and " + std::to_string(N) +
                      " clip indices");
  for (std::size_t i = 0; i < N; ++i) {
    if (c[i] < -127 || c[i] > 127) throw FormatError(what + ": coefficient out of range");
    if (idx[i] < 0 || idx[i] > 3) throw FormatError(what + ": clip index out of range");
    f.coeff[i] = static_cast<int16_t>(c[i]);
    f.clip_idx[i] = static_cast<uint8_t>(idx[i]);
  }
}

template <class Filter>
void write_filter_line(std::ostream& out, const Filter& f) {
  for (std::size_t i = 0; i < f.coeff.size(); ++i) out << (i ? " " : "") << f.coeff[i];
  out << " ;";
  for (auto idx : f.clip_idx) out << ' ' << static_cast<int>(idx);
  out << '\n';
}

}  // namespace

int alf_diamond_index(AlfComponent c, int dx, int dy) {
  if (dx == 0 && dy == 0) return c == AlfComponent::kLuma ? kAlfLumaTaps : kAlfChromaTaps;
  auto find = [&](const auto& offsets) {
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const auto& o = offsets[i];
      if ((o.dx == dx && o.dy == dy) || (o.dx == -dx && o.dy == -dy)) return static_cast<int>(i);
    }
    return -1;
  };
  return c == AlfComponent::kLuma ? find(kAlfLumaOffsets) : find(kAlfChromaOffsets);
}

AlfClipTable alf_default_clip_table(BitDepth depth) {
  AlfClipTable t{};
  for (int n = 0; n < 4; ++n) t[n] = static_cast<int16_t>(1 << (depth.value() - 1 - 2 * n));
  return t;
}

void AlfFilterSet::validate() const {
  for (int i = 0; i < kAlfNumClasses; ++i) validate_filter(luma[i], "luma filter " + std::to_string(i));
  if (chroma.empty() || chroma.size() > kAlfMaxChromaFilters)
    throw ContractViolation("chroma filter count must be 1..8");
  for (std::size_t i = 0; i < chroma.size(); ++i) validate_filter(chroma[i], "chroma filter " + std::to_string(i));
  for (const auto& t : clip_table) {
    for (int n = 0; n < 4; ++n)
      if (t[n] < 0 || (n > 0 && t[n] >= t[n - 1]))
        throw ContractViolation("clip table must be non-negative and strictly decreasing");
  }
}

AlfFilterSet AlfFilterSet::parse(std::istream& in) {
  AlfFilterSet set;
  set.chroma.clear();
  std::string line;
  int luma_lines = 0;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string what = "filter line " + std::to_string(line_no);
    if (luma_lines < kAlfNumClasses) {
      parse_filter_line<AlfLumaFilter, kAlfLumaTaps>(line, set.luma[luma_lines++], what);
    } else {
      if (set.chroma.size() == kAlfMaxChromaFilters) throw FormatError("more than 8 chroma filters");
      parse_filter_line<AlfChromaFilter, kAlfChromaTaps>(line, set.chroma.emplace_back(), what);
    }
  }
  if (luma_lines != kAlfNumClasses) throw FormatError("expected 25 luma filter lines");
  if (set.chroma.empty()) throw FormatError("expected at least one chroma filter line");
  set.validate();
  return set;
}

AlfFilterSet AlfFilterSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse(in);
}

void AlfFilterSet::write(std::ostream& out) const {
  for (const auto& f : luma) write_filter_line(out, f);
  for (const auto& f : chroma) write_filter_line(out, f);
}

AlfFilterSet AlfFilterSet::random(uint64_t seed, int chroma_filters) {
  VVCKIT_CHECK(chroma_filters >= 1 && chroma_filters <= kAlfMaxChromaFilters, "chroma filter count must be 1..8");
  SplitMix64 g(seed);
  AlfFilterSet set;
  for (auto& f : set.luma) {
    for (int i = 0; i < kAlfLumaTaps; ++i) {
      // Inner taps (larger index) carry more weight, as trained filters do.
      const int span = 4 + 2 * i;
      f.coeff[i] = static_cast<int16_t>(g.uniform(-span, span));
      f.clip_idx[i] = static_cast<uint8_t>(g.uniform(0, 3));
    }
  }
  set.chroma.assign(static_cast<std::size_t>(chroma_filters), {});
  for (auto& f : set.chroma) {
    for (int i = 0; i < kAlfChromaTaps; ++i) {
      const int span = 6 + 4 * i;
      f.coeff[i] = static_cast<int16_t>(g.uniform(-span, span));
      f.clip_idx[i] = static_cast<uint8_t>(g.uniform(0, 3));
    }
  }
  return set;
}

AlfClassification alf_class_from_sums(int64_t gv, int64_t gh, int64_t gd0, int64_t gd1, int depth) {
  const int64_t hv_max = std::max(gv, gh);
  const int64_t hv_min = std::min(gv, gh);
  const int64_t d_max = std::max(gd0, gd1);
  const int64_t d_min = std::min(gd0, gd1);

  int direction = 0;
  if (hv_max > 2 * hv_min || d_max > 2 * d_min) {
    // 0/0 counts as ratio 1; x/0 with x > 0 as infinity.
    const int64_t hv_num = hv_max == 0 ? 1 : hv_max;
    const int64_t hv_den = hv_max == 0 ? 1 : hv_min;
    const int64_t d_num = d_max == 0 ? 1 : d_max;
    const int64_t d_den = d_max == 0 ? 1 : d_min;
    if (hv_num * d_den > d_num * hv_den)
      direction = 2 * hv_max > 9 * hv_min ? 2 : 1;
    else
      direction = 2 * d_max > 9 * d_min ? 4 : 3;
  }

  const int64_t activity = gv + gh;
  const auto idx = static_cast<int>(std::min<int64_t>(15, activity >> (depth + kAlfActivityShift)));

  AlfClassification c;
  c.class_idx = 5 * direction + kActivityTable[idx];
  c.transpose_idx = (gd1 > gd0 ? 2 : 0) + (gh > gv ? 1 : 0);
  return c;
}

AlfClassification alf_classify_4x4(const Plane& p, const BlockRect& block, const KernelTable& k) {
  check_4x4(p, block);
  const BlockPatch patch(p, block);
  AlfClassification c;
  k.alf.classify(patch.origin(), BlockPatch::kW, 1, p.depth().value(), &c);
  return c;
}

std::array<int, kAlfLumaTaps> alf_transpose_permutation_luma(int transpose_idx) {
  return permutation(AlfComponent::kLuma, kAlfLumaOffsets, transpose_idx);
}

std::array<int, kAlfChromaTaps> alf_transpose_permutation_chroma(int transpose_idx) {
  return permutation(AlfComponent::kChroma, kAlfChromaOffsets, transpose_idx);
}

AlfLumaFilter alf_transpose_filter(const AlfLumaFilter& f, int transpose_idx) {
  return transpose(f, alf_transpose_permutation_luma(transpose_idx));
}

AlfChromaFilter alf_transpose_filter(const AlfChromaFilter& f, int transpose_idx) {
  return transpose(f, alf_transpose_permutation_chroma(transpose_idx));
}

void alf_filter_block_luma(const Plane& src, Plane& dst, const BlockRect& block, const AlfLumaFilter& f,
                           const AlfClipTable& clip_table, const KernelTable& k) {
  if (!src.same_geometry(dst)) throw ContractViolation("ALF source and destination geometry differ");
  check_4x4(src, block);
  validate_filter(f, "luma filter");
  const BlockPatch patch(src, block);
  const AlfBlockFilter bf = to_block_filter(f, clip_table);
  k.alf.luma(patch.origin(), BlockPatch::kW, dst.row(block.y) + block.x, dst.stride(), 1, &bf, src.depth().value());
}

void alf_filter_block_chroma(const Plane& src, Plane& dst, const BlockRect& block, const AlfChromaFilter& f,
                             const AlfClipTable& clip_table, const KernelTable& k) {
  if (!src.same_geometry(dst)) throw ContractViolation("ALF source and destination geometry differ");
  check_4x4(src, block);
  validate_filter(f, "chroma filter");
  const BlockPatch patch(src, block);
  const AlfBlockFilter bf = to_block_filter(f, clip_table);
  k.alf.chroma(patch.origin(), BlockPatch::kW, dst.row(block.y) + block.x, dst.stride(), 1, &bf,
               src.depth().value());
}

AlfPaddedPlane::AlfPaddedPlane(const Plane& src)
    : stride_(src.width() + 2 * kAlfPadX), width_(src.width()), height_(src.height()), depth_(src.depth()) {
  // Extra apron so partial edge blocks can be classified and filtered whole.
  const int rows = src.height() + 2 * kAlfPadY + 4;
  stride_ += 8;
  buf_.resize(static_cast<std::size_t>(stride_) * rows);
  for (int y = 0; y < rows; ++y) {
    const uint16_t* s = src.row(std::clamp(y - kAlfPadY, 0, src.height() - 1));
    uint16_t* d = buf_.data() + static_cast<std::ptrdiff_t>(y) * stride_;
    const uint16_t left = s[0];
    const uint16_t right = s[src.width() - 1];
    std::fill_n(d, kAlfPadX, left);
    std::copy_n(s, src.width(), d + kAlfPadX);
    std::fill(d + kAlfPadX + src.width(), d + stride_, right);
  }
  origin_ = buf_.data() + static_cast<std::ptrdiff_t>(kAlfPadY) * stride_ + kAlfPadX;
}

AlfPreparedSet::AlfPreparedSet(const AlfFilterSet& set, BitDepth depth) {
  set.validate();
  const AlfClipTable& clips = set.clips(depth);
  for (int c = 0; c < kAlfNumClasses; ++c)
    for (int t = 0; t < 4; ++t) luma_[c * 4 + t] = to_block_filter(alf_transpose_filter(set.luma[c], t), clips);
  for (const auto& f : set.chroma) chroma_.push_back(to_block_filter(f, clips));
}

void alf_filter_region(const AlfPaddedPlane& src, Plane& dst, const BlockRect& region, const AlfPreparedSet& set,
                       AlfComponent component, std::size_t chroma_filter, const KernelTable& k) {
  VVCKIT_CHECK(src.width() == dst.width() && src.height() == dst.height() && src.depth() == dst.depth(),
               "ALF source and destination geometry differ");
  VVCKIT_CHECK(dst.contains(region) && region.x % 4 == 0 && region.y % 4 == 0, "ALF region invalid");
  const int depth = src.depth().value();
  const int blocks_x = (region.w + 3) / 4;
  const int full_x = region.w / 4;

  thread_local std::vector<AlfClassification> classes;
  thread_local std::vector<AlfBlockFilter> filters;
  classes.resize(static_cast<std::size_t>(blocks_x));
  filters.resize(static_cast<std::size_t>(blocks_x));

  for (int by = region.y; by < region.y + region.h; by += 4) {
    const uint16_t* s = src.at(region.x, by);
    if (component == AlfComponent::kLuma) {
      k.alf.classify(s, src.stride(), blocks_x, depth, classes.data());
      for (int b = 0; b < blocks_x; ++b) filters[b] = set.luma(classes[b].class_idx, classes[b].transpose_idx);
    } else {
      std::fill(filters.begin(), filters.end(), set.chroma(chroma_filter % set.chroma_count()));
    }
    const auto fn = component == AlfComponent::kLuma ? k.alf.luma : k.alf.chroma;
    const int rows = std::min(4, region.y + region.h - by);
    if (rows == 4 && full_x > 0) fn(s, src.stride(), dst.row(by) + region.x, dst.stride(), full_x, filters.data(), depth);

    // Partial blocks at the right or bottom edge go through a 4x4 scratch.
    const int first_partial = rows == 4 ? full_x : 0;
    for (int b = first_partial; b < blocks_x; ++b) {
      std::array<uint16_t, 16> tmp{};
      fn(s + 4 * b, src.stride(), tmp.data(), 4, 1, &filters[b], depth);
      const int x0 = region.x + 4 * b;
      const int cols = std::min(4, region.x + region.w - x0);
      for (int y = 0; y < rows; ++y) std::copy_n(tmp.data() + 4 * y, cols, dst.row(by + y) + x0);
    }
  }
}

void alf_filter_plane(const Plane& src, Plane& dst, const AlfFilterSet& set, AlfComponent component,
                      std::span<const uint8_t> ctu_enable, int ctu_size, const KernelTable& k) {
  if (!src.same_geometry(dst)) throw ContractViolation("ALF source and destination geometry differ");
  VVCKIT_CHECK(ctu_size >= 4 && ctu_size % 4 == 0, "CTU size must be a positive multiple of 4");
  const int cols = (src.width() + ctu_size - 1) / ctu_size;
  const int rows = (src.height() + ctu_size - 1) / ctu_size;
  if (ctu_enable.size() != static_cast<std::size_t>(cols) * rows)
    throw ContractViolation("CTU enable map does not cover the CTU grid");

  const AlfPaddedPlane padded(src);
  const AlfPreparedSet prepared(set, src.depth());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const BlockRect ctu{c * ctu_size, r * ctu_size, std::min(ctu_size, src.width() - c * ctu_size),
                          std::min(ctu_size, src.height() - r * ctu_size)};
      const std::size_t idx = static_cast<std::size_t>(r) * cols + c;
      if (ctu_enable[idx]) {
        alf_filter_region(padded, dst, ctu, prepared, component, idx, k);
      } else {
        for (int y = 0; y < ctu.h; ++y) std::copy_n(src.row(ctu.y + y) + ctu.x, ctu.w, dst.row(ctu.y + y) + ctu.x);
      }
    }
  }
}

}  // namespace vvckit
