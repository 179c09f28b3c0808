#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <vector>

#include "vvckit/alf.hpp"
#include "vvckit/dispatch.hpp"
#include "vvckit/error.hpp"
#include "vvckit/interp.hpp"
#include "vvckit/xform.hpp"

namespace vvckit {

namespace {

constexpr int kXformSizes[] = {4, 8, 16, 32, 64};

// Every luma FracPos grouped by the kernel it selects, per depth-free key.
const std::map<uint32_t, std::vector<FracPos>>& luma_positions_by_key() {
  static const auto table = [] {
    std::map<uint32_t, std::vector<FracPos>> m;
    for (int alt = 0; alt < 2; ++alt)
      for (int fy = 0; fy < 16; ++fy)
        for (int fx = 0; fx < 16; ++fx) {
          const FracPos p{fx, fy, alt != 0};
          const InterpSelection s = select_interp_kernel(p, kDepth8);
          if (s.id.is_copy()) continue;
          // The alt flag only matters on half-pel axes; skip duplicates.
          if (alt && fx != 8 && fy != 8) continue;
          m[s.id.key()].push_back(p);
        }
    return m;
  }();
  return table;
}

uint32_t luma_key_for_depth(uint32_t key8, int depth) {
  // InterpKernelId::key() carries depth; recompute from a representative.
  const FracPos& p = luma_positions_by_key().at(key8).front();
  return select_interp_kernel(p, BitDepth(depth)).id.key();
}

enum class Pattern { kUniform, kExtremes, kSmooth, kStripes, kFlat };

uint16_t pattern_sample(Pattern pat, SplitMix64& g, int x, int y, int maxv, int phase) {
  switch (pat) {
    case Pattern::kUniform: return static_cast<uint16_t>(g.next() & static_cast<uint64_t>(maxv));
    case Pattern::kExtremes: return (g.next() & 1) ? static_cast<uint16_t>(maxv) : 0;
    case Pattern::kSmooth: {
      const int v = ((x * 7 + y * 3 + phase) % (2 * maxv + 2)) - (maxv + 1);
      return static_cast<uint16_t>(std::clamp(std::abs(v) + g.uniform(-3, 3), 0, maxv));
    }
    case Pattern::kStripes: {
      const bool on = ((phase & 1) ? x : (phase & 2) ? x + y : y) % 2 == 0;
      return on ? static_cast<uint16_t>(maxv) : static_cast<uint16_t>(g.uniform(0, 3));
    }
    case Pattern::kFlat: return static_cast<uint16_t>(phase % (maxv + 1));
  }
  return 0;
}

Pattern pick_pattern(SplitMix64& g) {
  const int r = g.uniform(0, 99);
  if (r < 55) return Pattern::kUniform;
  if (r < 75) return Pattern::kExtremes;
  if (r < 88) return Pattern::kSmooth;
  if (r < 96) return Pattern::kStripes;
  return Pattern::kFlat;
}

void fill_pattern(uint16_t* p, std::ptrdiff_t stride, int w, int h, int maxv, SplitMix64& g) {
  const Pattern pat = pick_pattern(g);
  const int phase = g.uniform(0, 1 << 20);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) p[y * stride + x] = pattern_sample(pat, g, x, y, maxv, phase);
}

void fill_plane(Plane& p, SplitMix64& g) {
  fill_pattern(p.row(0), p.stride(), p.width(), p.height(), p.depth().max_sample(), g);
}

struct Accumulator {
  VerifyReport& report;
  std::optional<uint64_t>& last_failed;  // trial index last counted as failing
  VariantTier tier;
  uint64_t trial;
  uint64_t trial_seed;

  template <class T>
  void compare(const T* ref, const T* got, std::size_t n, const char* what) {
    std::size_t bad = 0;
    std::size_t first = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (ref[i] != got[i]) {
        if (first == n) first = i;
        ++bad;
      }
    }
    if (bad == 0) return;
    report.mismatched_samples += bad;
    if (last_failed != trial) {
      last_failed = trial;
      ++report.mismatched_trials;
    }
    if (!report.first) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: %zu of %zu values differ; first at %zu (scalar %d, %s %d)", what, bad, n,
                    first, static_cast<int>(ref[first]), std::string(tier_name(tier)).c_str(),
                    static_cast<int>(got[first]));
      report.first = Mismatch{tier, trial, trial_seed, buf};
    }
  }
};

// ---------------------------------------------------------------- interp ----

BlockRect random_block(SplitMix64& g, const Plane& src, int max_w, int max_h) {
  static constexpr int kWidths[] = {1, 2, 3, 4, 5, 6, 7, 8, 12, 15, 16, 17, 20, 24, 31, 32, 33, 40, 64};
  static constexpr int kHeights[] = {1, 2, 3, 4, 5, 7, 8, 11, 16, 32};
  int w = kWidths[g.uniform(0, static_cast<int>(std::size(kWidths)) - 1)];
  int h = kHeights[g.uniform(0, static_cast<int>(std::size(kHeights)) - 1)];
  w = std::min(w, max_w);
  h = std::min(h, max_h);
  // Bias toward plane edges so the replication path is exercised.
  const int x = g.chance(30) ? (g.chance(50) ? 0 : src.width() - w) : g.uniform(0, src.width() - w);
  const int y = g.chance(30) ? (g.chance(50) ? 0 : src.height() - h) : g.uniform(0, src.height() - h);
  return {x, y, w, h};
}

void verify_interp(const KernelId& id, uint64_t seed, uint64_t trials, std::span<const KernelTable> candidates,
                   VerifyReport& report) {
  std::optional<uint64_t> last_failed;
  const BitDepth depth(id.depth);
  std::vector<FracPos> positions;
  if (id.family == KernelFamily::kInterpLuma) {
    for (const auto& [key8, list] : luma_positions_by_key())
      if (luma_key_for_depth(key8, id.depth) == id.key) positions = list;
    VVCKIT_CHECK(!positions.empty(), "unknown interp-luma kernel key");
  }
  const int frac_range = id.family == KernelFamily::kInterpChroma ? 32 : 16;
  const bool need_h = id.key & 1u;
  const bool need_v = id.key & 2u;
  if (id.family != KernelFamily::kInterpLuma) VVCKIT_CHECK(id.key >= 1 && id.key <= 3, "bad pass combination key");

  Plane src(72, 56, depth);
  Plane ref(64, 32, depth);
  Plane got(64, 32, depth);
  for (uint64_t t = 0; t < trials; ++t) {
    const uint64_t ts = mix_seed(seed, t);
    SplitMix64 g(ts);
    // Refreshing the source every trial would dominate the runtime.
    if (t % 16 == 0) fill_plane(src, g);
    const BlockRect b = random_block(g, src, 64, 32);
    FracPos f;
    if (id.family == KernelFamily::kInterpLuma) {
      f = positions[static_cast<std::size_t>(g.uniform(0, static_cast<int>(positions.size()) - 1))];
    } else {
      f.fx = need_h ? g.uniform(1, frac_range - 1) : 0;
      f.fy = need_v ? g.uniform(1, frac_range - 1) : 0;
    }
    auto run = [&](const KernelTable& k, Plane& out) {
      switch (id.family) {
        case KernelFamily::kInterpLuma:
          interp_luma_into(src, b, f, luma_table_default(), k, out.row(0), out.stride());
          break;
        case KernelFamily::kInterpChroma:
          interp_chroma_into(src, b, f, chroma_table_default(), k, out.row(0), out.stride());
          break;
        default: interp_bilinear_into(src, b, f, k, out.row(0), out.stride()); break;
      }
    };
    run(scalar_kernels(), ref);
    for (const KernelTable& k : candidates) {
      run(k, got);
      Accumulator acc{report, last_failed, k.tier, t, ts};
      for (int y = 0; y < b.h; ++y) acc.compare(ref.row(y), got.row(y), static_cast<std::size_t>(b.w), "interp");
    }
  }
}

// ------------------------------------------------------------------- alf ----

struct AlfBuffers {
  static constexpr int kMaxBlocks = 32;
  static constexpr int kStride = kMaxBlocks * 4 + 2 * kAlfPadX + 16;
  static constexpr int kRows = 4 + 2 * kAlfPadY + 8;
  std::vector<uint16_t> src = std::vector<uint16_t>(static_cast<std::size_t>(kStride) * kRows);
  std::vector<uint16_t> ref = std::vector<uint16_t>(static_cast<std::size_t>(kMaxBlocks) * 4 * 4);
  std::vector<uint16_t> got = std::vector<uint16_t>(static_cast<std::size_t>(kMaxBlocks) * 4 * 4);

  const uint16_t* origin() const { return src.data() + kAlfPadY * kStride + kAlfPadX; }
};

AlfBlockFilter random_block_filter(SplitMix64& g, const AlfClipTable& clips, int taps) {
  AlfBlockFilter f;
  const bool extreme = g.chance(10);
  for (int i = 0; i < taps; ++i) {
    f.coeff[static_cast<std::size_t>(i)] =
        static_cast<int16_t>(extreme ? (g.chance(50) ? 127 : -127) : g.uniform(-127, 127));
    f.clip[static_cast<std::size_t>(i)] = clips[static_cast<std::size_t>(g.uniform(0, 3))];
  }
  return f;
}

void verify_alf(const KernelId& id, uint64_t seed, uint64_t trials, std::span<const KernelTable> candidates,
                VerifyReport& report) {
  std::optional<uint64_t> last_failed;
  const BitDepth depth(id.depth);
  const AlfClipTable clips = alf_default_clip_table(depth);
  AlfBuffers buf;
  std::vector<AlfBlockFilter> filters(AlfBuffers::kMaxBlocks);
  std::vector<AlfClassification> cref(AlfBuffers::kMaxBlocks);
  std::vector<AlfClassification> cgot(AlfBuffers::kMaxBlocks);
  const int dst_stride = AlfBuffers::kMaxBlocks * 4;

  for (uint64_t t = 0; t < trials; ++t) {
    const uint64_t ts = mix_seed(seed, t);
    SplitMix64 g(ts);
    const int n = g.uniform(1, AlfBuffers::kMaxBlocks);
    const int wpad = n * 4 + 2 * kAlfPadX + 16;
    fill_pattern(buf.src.data(), AlfBuffers::kStride, std::min(wpad, AlfBuffers::kStride), AlfBuffers::kRows,
                 depth.max_sample(), g);
    report.blocks += static_cast<uint64_t>(n) * std::max<std::size_t>(candidates.size(), 1);

    if (id.family == KernelFamily::kAlfClassify) {
      scalar_kernels().alf.classify(buf.origin(), AlfBuffers::kStride, n, id.depth, cref.data());
      for (const KernelTable& k : candidates) {
        k.alf.classify(buf.origin(), AlfBuffers::kStride, n, id.depth, cgot.data());
        std::vector<int> a, b;
        for (int i = 0; i < n; ++i) {
          a.push_back(cref[i].class_idx * 4 + cref[i].transpose_idx);
          b.push_back(cgot[i].class_idx * 4 + cgot[i].transpose_idx);
        }
        Accumulator acc{report, last_failed, k.tier, t, ts};
        acc.compare(a.data(), b.data(), a.size(), "alf-classify (class*4+transpose)");
      }
      continue;
    }

    const bool luma = id.family == KernelFamily::kAlfLuma;
    const int taps = luma ? kAlfLumaTaps : kAlfChromaTaps;
    for (int i = 0; i < n; ++i) filters[static_cast<std::size_t>(i)] = random_block_filter(g, clips, taps);
    auto run = [&](const KernelTable& k, std::vector<uint16_t>& out) {
      const AlfKernels::Filter fn = luma ? k.alf.luma : k.alf.chroma;
      fn(buf.origin(), AlfBuffers::kStride, out.data(), dst_stride, n, filters.data(), id.depth);
    };
    run(scalar_kernels(), buf.ref);
    for (const KernelTable& k : candidates) {
      std::fill(buf.got.begin(), buf.got.end(), 0xFFFF);
      run(k, buf.got);
      Accumulator acc{report, last_failed, k.tier, t, ts};
      for (int y = 0; y < 4; ++y)
        acc.compare(buf.ref.data() + y * dst_stride, buf.got.data() + y * dst_stride, static_cast<std::size_t>(n) * 4,
                    luma ? "alf-luma" : "alf-chroma");
    }
  }
}

// ----------------------------------------------------------------- xform ----

void verify_xform(const KernelId& id, uint64_t seed, uint64_t trials, std::span<const KernelTable> candidates,
                  VerifyReport& report) {
  std::optional<uint64_t> last_failed;
  const BitDepth depth(id.depth);
  const int w = static_cast<int>(id.key >> 8);
  const int h = static_cast<int>(id.key & 0xFF);
  std::vector<XformKind> kinds_h, kinds_v;
  for (XformKind kind : {XformKind::kDct2, XformKind::kDst7, XformKind::kDct8}) {
    if (xform_size_supported(kind, w)) kinds_h.push_back(kind);
    if (xform_size_supported(kind, h)) kinds_v.push_back(kind);
  }
  VVCKIT_CHECK(!kinds_h.empty() && !kinds_v.empty(), "unsupported transform size");

  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<int16_t> coeffs(n), scratch(n), ref(n), got(n);
  for (uint64_t t = 0; t < trials; ++t) {
    const uint64_t ts = mix_seed(seed, t);
    SplitMix64 g(ts);
    const XformKind kh = kinds_h[static_cast<std::size_t>(g.uniform(0, static_cast<int>(kinds_h.size()) - 1))];
    const XformKind kv = kinds_v[static_cast<std::size_t>(g.uniform(0, static_cast<int>(kinds_v.size()) - 1))];
    // Mix of dense full-range, sparse low-frequency, and saturating blocks.
    const int mode = g.uniform(0, 9);
    std::fill(coeffs.begin(), coeffs.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (mode < 4) {
        coeffs[i] = static_cast<int16_t>(g.uniform(-32768, 32767));
      } else if (mode < 8) {
        const int x = static_cast<int>(i % static_cast<std::size_t>(w));
        const int y = static_cast<int>(i / static_cast<std::size_t>(w));
        if (x < 8 && y < 8 && g.chance(40)) coeffs[i] = static_cast<int16_t>(g.uniform(-4096, 4096));
      } else {
        coeffs[i] = g.chance(50) ? 32767 : -32768;
      }
    }
    inv_transform_2d_into(coeffs.data(), w, h, kh, kv, depth, scalar_kernels(), scratch.data(), ref.data());
    for (const KernelTable& k : candidates) {
      inv_transform_2d_into(coeffs.data(), w, h, kh, kv, depth, k, scratch.data(), got.data());
      Accumulator acc{report, last_failed, k.tier, t, ts};
      acc.compare(ref.data(), got.data(), n, "xform-inv");
    }
  }
}

}  // namespace

std::string KernelId::name() const {
  std::string s(family_name(family));
  s += "/d" + std::to_string(depth);
  switch (family) {
    case KernelFamily::kInterpLuma:
      for (const auto& [key8, list] : luma_positions_by_key())
        if (luma_key_for_depth(key8, depth) == key) {
          s += "/" + select_interp_kernel(list.front(), BitDepth(depth)).id.name();
          return s;
        }
      s += "/key" + std::to_string(key);
      return s;
    case KernelFamily::kInterpChroma:
    case KernelFamily::kInterpBilinear:
      s += (key == 1) ? "/h" : (key == 2) ? "/v" : "/hv";
      return s;
    case KernelFamily::kXformInv:
      s += "/" + std::to_string(key >> 8) + "x" + std::to_string(key & 0xFF);
      return s;
    default: return s;
  }
}

std::vector<KernelId> all_kernel_ids() {
  std::vector<KernelId> ids;
  for (int depth : {8, 10}) {
    for (KernelFamily f : {KernelFamily::kAlfClassify, KernelFamily::kAlfLuma, KernelFamily::kAlfChroma})
      ids.push_back({f, depth, 0});
    for (const auto& [key8, list] : luma_positions_by_key())
      ids.push_back({KernelFamily::kInterpLuma, depth, luma_key_for_depth(key8, depth)});
    for (KernelFamily f : {KernelFamily::kInterpChroma, KernelFamily::kInterpBilinear})
      for (uint32_t key = 1; key <= 3; ++key) ids.push_back({f, depth, key});
    for (int w : kXformSizes)
      for (int h : kXformSizes) ids.push_back({KernelFamily::kXformInv, depth, static_cast<uint32_t>(w << 8 | h)});
  }
  return ids;
}

VerifyReport verify_variants(const KernelId& id, uint64_t seed, uint64_t trials,
                             std::span<const KernelTable> candidates) {
  VVCKIT_CHECK(trials >= 1, "verify needs at least one trial");
  VerifyReport report;
  report.id = id;
  report.trials = trials;
  for (const KernelTable& k : candidates) report.tiers_checked.push_back(k.tier);
  const uint64_t id_seed = mix_seed(seed, static_cast<uint64_t>(id.family) << 40 ^ static_cast<uint64_t>(id.depth) << 32 ^ id.key);
  switch (id.family) {
    case KernelFamily::kAlfClassify:
    case KernelFamily::kAlfLuma:
    case KernelFamily::kAlfChroma: verify_alf(id, id_seed, trials, candidates, report); break;
    case KernelFamily::kInterpLuma:
    case KernelFamily::kInterpChroma:
    case KernelFamily::kInterpBilinear: verify_interp(id, id_seed, trials, candidates, report); break;
    case KernelFamily::kXformInv: verify_xform(id, id_seed, trials, candidates, report); break;
  }
  return report;
}

VerifyReport verify_variants(const KernelId& id, uint64_t seed, uint64_t trials) {
  std::vector<KernelTable> tables;
  for (VariantTier t : detect_capabilities())
    if (t != VariantTier::kScalar) tables.push_back(build_registry(t));
  // Scalar-only hosts still run the reference against itself.
  if (tables.empty()) tables.push_back(scalar_kernels());
  return verify_variants(id, seed, trials, tables);
}

}  // namespace vvckit
