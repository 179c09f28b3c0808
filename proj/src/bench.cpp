#include "vvckit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ostream>

#include "vvckit/alf.hpp"
#include "vvckit/interp.hpp"
#include "vvckit/wavefront.hpp"
#include "vvckit/xform.hpp"

namespace vvckit {

namespace {

using Clock = std::chrono::steady_clock;

int64_t elapsed_ns(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

int tri(int t, int period) {
  const int m = ((t % period) + period) % period;
  return std::abs(m - period / 2);
}

// Moving ramps plus texture, so ALF sees a spread of classes and MC has
// something to interpolate.
void synth_plane(Plane& p, int frame, int chroma, SplitMix64& g) {
  const int up = p.depth().value() - 8;
  for (int y = 0; y < p.height(); ++y) {
    uint16_t* row = p.row(y);
    for (int x = 0; x < p.width(); ++x) {
      int v = 40 + 2 * tri(x + 2 * frame, 64 - 16 * chroma) + 2 * tri(y + frame, 48) + tri(x + y, 40) +
              static_cast<int>(g.next() & 15);
      if (((x >> 5) + (y >> 5) + frame) % 7 == 0) v = 40 + 60 * ((x >> 1) & 1);  // vertical stripes
      row[x] = static_cast<uint16_t>((v << up) | static_cast<int>(g.next() & ((1u << up) - 1)));
    }
  }
}

struct StageCounters {
  std::atomic<int64_t> ns{0};
  std::atomic<uint64_t> calls{0};

  void add(int64_t t, uint64_t c) {
    ns.fetch_add(t, std::memory_order_relaxed);
    calls.fetch_add(c, std::memory_order_relaxed);
  }
};

struct Counters {
  StageCounters stage[3];
  StageCounters& operator[](Stage s) { return stage[static_cast<int>(s)]; }
};

struct CtuGrid {
  int rows;
  int cols;
  int size;
};

BlockRect clip_rect(int x, int y, int w, int h, const Plane& p) {
  return {x, y, std::min(w, p.width() - x), std::min(h, p.height() - y)};
}

// One motion-compensated block per 16x16 luma area (8x8 chroma).
uint64_t mc_ctu(const Frame& ref, Frame& recon, const BlockRect& luma_ctu, SplitMix64& g, const KernelTable& k) {
  uint64_t calls = 0;
  for (int by = luma_ctu.y; by < luma_ctu.y + luma_ctu.h; by += 16) {
    for (int bx = luma_ctu.x; bx < luma_ctu.x + luma_ctu.w; bx += 16) {
      const int mvx = g.uniform(-512, 512);
      const int mvy = g.uniform(-512, 512);
      const bool bilinear = g.chance(10);
      const bool alt = g.chance(15);

      const BlockRect lb = clip_rect(bx, by, 16, 16, recon.luma);
      const BlockRect ls{std::clamp(bx + (mvx >> 4), 0, ref.luma.width() - lb.w),
                         std::clamp(by + (mvy >> 4), 0, ref.luma.height() - lb.h), lb.w, lb.h};
      uint16_t* ldst = recon.luma.row(lb.y) + lb.x;
      if (bilinear)
        interp_bilinear_into(ref.luma, ls, FracPos{mvx & 15, mvy & 15, false}, k, ldst, recon.luma.stride());
      else
        interp_luma_into(ref.luma, ls, FracPos{mvx & 15, mvy & 15, alt}, luma_table_default(), k, ldst,
                         recon.luma.stride());
      ++calls;

      const int cx = bx / 2;
      const int cy = by / 2;
      if (cx >= recon.cb.width() || cy >= recon.cb.height()) continue;
      for (int c = 1; c < 3; ++c) {
        const Plane& src = ref.plane(c);
        Plane& dst = recon.plane(c);
        const BlockRect cb = clip_rect(cx, cy, 8, 8, dst);
        const BlockRect cs{std::clamp(cx + (mvx >> 5), 0, src.width() - cb.w),
                           std::clamp(cy + (mvy >> 5), 0, src.height() - cb.h), cb.w, cb.h};
        interp_chroma_into(src, cs, FracPos{mvx & 31, mvy & 31, false}, chroma_table_default(), k,
                           dst.row(cb.y) + cb.x, dst.stride());
        ++calls;
      }
    }
  }
  return calls;
}

void copy_region(const Plane& src, Plane& dst, const BlockRect& r) {
  for (int y = r.y; y < r.y + r.h; ++y) std::copy_n(src.row(y) + r.x, r.w, dst.row(y) + r.x);
}

struct TuScratch {
  std::vector<int16_t> levels = std::vector<int16_t>(64 * 64);
  std::vector<int16_t> coeffs = std::vector<int16_t>(64 * 64);
  std::vector<int16_t> tmp = std::vector<int16_t>(64 * 64);
  std::vector<int16_t> resid = std::vector<int16_t>(64 * 64);
};

// Seeded sparse levels, dequantized, inverse transformed and added to the
// prediction already in the plane.
void reconstruct_tu(Plane& p, int x, int y, int w, int h, bool luma, int qp, SplitMix64& g, const KernelTable& k,
                    TuScratch& s) {
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::fill_n(s.levels.begin(), n, 0);
  const int nz = g.uniform(1, std::max(1, std::min(10, static_cast<int>(n) / 4)));
  for (int i = 0; i < nz; ++i) {
    const int fx = g.uniform(0, std::min(w, 8) - 1);
    const int fy = g.uniform(0, std::min(h, 8) - 1);
    int level = g.uniform(1, 12) * (g.chance(50) ? 1 : -1);
    if (g.chance(3)) level *= 16;
    s.levels[static_cast<std::size_t>(fy) * w + fx] = static_cast<int16_t>(level);
  }
  XformKind kh = XformKind::kDct2;
  XformKind kv = XformKind::kDct2;
  if (luma && w <= 32 && h <= 32 && g.chance(30)) {
    kh = g.chance(50) ? XformKind::kDst7 : XformKind::kDct8;
    kv = g.chance(50) ? XformKind::kDst7 : XformKind::kDct8;
  }
  dequant_into(s.levels.data(), n, qp, s.coeffs.data());
  inv_transform_2d_into(s.coeffs.data(), w, h, kh, kv, p.depth(), k, s.tmp.data(), s.resid.data());

  const int maxv = p.depth().max_sample();
  const int vw = std::min(w, p.width() - x);
  const int vh = std::min(h, p.height() - y);
  for (int yy = 0; yy < vh; ++yy) {
    uint16_t* row = p.row(y + yy) + x;
    const int16_t* r = s.resid.data() + static_cast<std::ptrdiff_t>(yy) * w;
    for (int xx = 0; xx < vw; ++xx) row[xx] = static_cast<uint16_t>(std::clamp(row[xx] + r[xx], 0, maxv));
  }
}

// Quadtree-ish TU layout over a CTU: 32x32 areas either stay whole or split
// into 16x16 areas, which split further into 8x8, 16x8/8x16 or 4x4 TUs.
uint64_t iqit_component(Plane& p, const BlockRect& ctu, bool luma, int qp, SplitMix64& g, const KernelTable& k,
                        TuScratch& s) {
  uint64_t tus = 0;
  const int big = luma ? 32 : 16;
  const int mid = big / 2;
  for (int ay = ctu.y; ay < ctu.y + ctu.h; ay += big) {
    for (int ax = ctu.x; ax < ctu.x + ctu.w; ax += big) {
      if (g.chance(20)) {
        reconstruct_tu(p, ax, ay, big, big, luma, qp, g, k, s);
        ++tus;
        continue;
      }
      for (int my = ay; my < std::min(ay + big, ctu.y + ctu.h); my += mid) {
        for (int mx = ax; mx < std::min(ax + big, ctu.x + ctu.w); mx += mid) {
          const int r = g.uniform(0, 99);
          int tw = mid, th = mid;
          if (r >= 50 && r < 75) {
            tw = th = mid / 2;
          } else if (r >= 75 && r < 90) {
            (g.chance(50) ? tw : th) = mid / 2;
          } else if (r >= 90) {
            tw = th = 4;
          }
          for (int ty = my; ty < std::min(my + mid, ctu.y + ctu.h); ty += th)
            for (int tx = mx; tx < std::min(mx + mid, ctu.x + ctu.w); tx += tw) {
              reconstruct_tu(p, tx, ty, tw, th, luma, qp, g, k, s);
              ++tus;
            }
        }
      }
    }
  }
  return tus;
}

BlockRect ctu_rect(const CtuGrid& grid, int r, int c, const Plane& p, int shift) {
  const int size = grid.size >> shift;
  return clip_rect(c * size, r * size, size, size, p);
}

}  // namespace

std::vector<Frame> workload_frames(const WorkloadSpec& spec) {
  spec.validate();
  const BitDepth depth(spec.depth);
  if (!spec.input.empty()) {
    std::vector<Frame> frames =
        load_yuv420(spec.input, spec.width, spec.height, depth, static_cast<std::size_t>(spec.frames));
    if (frames.empty()) throw FormatError("input " + spec.input + " holds no complete frame");
    return frames;
  }
  std::vector<Frame> frames;
  frames.reserve(static_cast<std::size_t>(spec.frames));
  for (int f = 0; f < spec.frames; ++f) {
    Frame fr = Frame::create(spec.width, spec.height, depth);
    SplitMix64 g(mix_seed(spec.seed, 0x5EED0000ull + static_cast<uint64_t>(f)));
    for (int c = 0; c < 3; ++c) synth_plane(fr.plane(c), f, c > 0, g);
    frames.push_back(std::move(fr));
  }
  return frames;
}

BenchRun run_bench_detailed(const WorkloadSpec& spec, std::optional<VariantTier> tier, int workers,
                            std::vector<Frame>* output) {
  spec.validate();
  if (workers < 1) throw ConfigError("worker count must be at least 1");
  const KernelTable k = build_registry(tier);
  const std::vector<Frame> frames = workload_frames(spec);
  const BitDepth depth(spec.depth);

  const CtuGrid grid{(spec.height + spec.ctu_size - 1) / spec.ctu_size,
                     (spec.width + spec.ctu_size - 1) / spec.ctu_size, spec.ctu_size};
  const int num_ctus = grid.rows * grid.cols;
  const TaskGraph wpp = wpp_dependencies(grid.rows, grid.cols);
  TaskGraph alf_graph;
  for (int i = 0; i < num_ctus; ++i) alf_graph.add_node();

  Counters counters;
  Fnv1a64 hash;
  int64_t makespan = 0;
  std::vector<TuScratch> scratch(static_cast<std::size_t>(workers));
  if (output) output->clear();

  for (std::size_t f = 0; f < frames.size(); ++f) {
    const Frame& ref = frames[f];
    const uint64_t frame_seed = mix_seed(spec.seed, f);
    Frame recon = Frame::create(ref.width(), ref.height(), depth);
    Frame out = Frame::create(ref.width(), ref.height(), depth);
    const Clock::time_point t0 = Clock::now();

    execute(wpp, workers, [&](NodeId n, int w) {
      const int r = static_cast<int>(n) / grid.cols;
      const int c = static_cast<int>(n) % grid.cols;
      SplitMix64 g(mix_seed(frame_seed, n));
      const BlockRect lr = ctu_rect(grid, r, c, recon.luma, 0);

      if (spec.has(Stage::kMc)) {
        const Clock::time_point t = Clock::now();
        const uint64_t calls = mc_ctu(ref, recon, lr, g, k);
        counters[Stage::kMc].add(elapsed_ns(t), calls);
      } else {
        copy_region(ref.luma, recon.luma, lr);
        for (int comp = 1; comp < 3; ++comp) {
          if (lr.x / 2 >= recon.cb.width() || lr.y / 2 >= recon.cb.height()) break;
          copy_region(ref.plane(comp), recon.plane(comp), ctu_rect(grid, r, c, recon.plane(comp), 1));
        }
      }

      if (spec.has(Stage::kIqit)) {
        const Clock::time_point t = Clock::now();
        SplitMix64 gq(mix_seed(frame_seed, 0x10000000ull + n));
        TuScratch& s = scratch[static_cast<std::size_t>(w)];
        uint64_t tus = iqit_component(recon.luma, lr, true, spec.qp, gq, k, s);
        if (lr.x / 2 < recon.cb.width() && lr.y / 2 < recon.cb.height()) {
          for (int comp = 1; comp < 3; ++comp)
            tus += iqit_component(recon.plane(comp), ctu_rect(grid, r, c, recon.plane(comp), 1), false, spec.qp,
                                  gq, k, s);
        }
        counters[Stage::kIqit].add(elapsed_ns(t), tus);
      }
    });

    if (spec.has(Stage::kAlf)) {
      const Clock::time_point tp = Clock::now();
      const AlfFilterSet set = AlfFilterSet::random(mix_seed(frame_seed, 0xA1F), 4);
      const AlfPreparedSet prepared(set, depth);
      const AlfPaddedPlane padded[3] = {AlfPaddedPlane(recon.luma), AlfPaddedPlane(recon.cb),
                                        AlfPaddedPlane(recon.cr)};
      counters[Stage::kAlf].add(elapsed_ns(tp), 0);

      execute(alf_graph, workers, [&](NodeId n, int) {
        const Clock::time_point t = Clock::now();
        const int r = static_cast<int>(n) / grid.cols;
        const int c = static_cast<int>(n) % grid.cols;
        SplitMix64 g(mix_seed(frame_seed, 0x20000000ull + n));
        uint64_t calls = 0;
        for (int comp = 0; comp < 3; ++comp) {
          Plane& dst = out.plane(comp);
          const BlockRect region = ctu_rect(grid, r, c, dst, comp > 0);
          const bool enabled = g.chance(comp == 0 ? 90 : 70);
          if (region.w <= 0 || region.h <= 0) continue;
          if (!enabled) {
            copy_region(recon.plane(comp), dst, region);
            continue;
          }
          alf_filter_region(padded[comp], dst, region, prepared, comp == 0 ? AlfComponent::kLuma : AlfComponent::kChroma,
                            n % prepared.chroma_count(), k);
          ++calls;
        }
        counters[Stage::kAlf].add(elapsed_ns(t), calls);
      });
    } else {
      out = recon;
    }
    makespan += elapsed_ns(t0);

    for (int comp = 0; comp < 3; ++comp) hash_plane(hash, out.plane(comp));
    if (output) output->push_back(std::move(out));
  }

  BenchRun run;
  StageReport& rep = run.report;
  rep.meta.tool_version = kToolVersion;
  rep.meta.timestamp = utc_timestamp();
  rep.meta.host = host_description();
  rep.meta.tier = std::string(tier_name(k.tier));
  rep.meta.workers = workers;
  rep.meta.workload = spec;
  rep.meta.workload.frames = static_cast<int>(frames.size());
  for (Stage s : kAllStages) {
    if (!spec.has(s)) continue;
    rep.stages.push_back({stage_name(s), counters[s].ns.load(), counters[s].calls.load(), 0.0});
  }
  normalize_stages(rep.stages);
  rep.frame_hash = hash.value();
  run.makespan_ns = makespan;
  return run;
}

StageReport run_bench(const WorkloadSpec& spec, std::optional<VariantTier> tier, int workers) {
  return run_bench_detailed(spec, tier, workers).report;
}

SweepReport run_sweep(const WorkloadSpec& spec, std::span<const int> worker_counts,
                      std::span<const VariantTier> tiers) {
  spec.validate();
  if (worker_counts.empty() || tiers.empty()) throw ConfigError("sweep needs at least one tier and worker count");
  for (int w : worker_counts)
    if (w < 1) throw ConfigError("worker count must be at least 1");

  const BenchRun base = run_bench_detailed(spec, VariantTier::kScalar, 1);
  SweepReport rep;
  rep.meta = base.report.meta;
  rep.stages = base.report.stages;
  rep.frame_hash = base.report.frame_hash;
  std::string tier_list;
  for (VariantTier t : tiers) tier_list += (tier_list.empty() ? "" : ",") + std::string(tier_name(t));
  rep.meta.tier = tier_list;
  rep.meta.workers = *std::max_element(worker_counts.begin(), worker_counts.end());

  for (VariantTier t : tiers) {
    for (int w : worker_counts) {
      const BenchRun cell =
          (t == VariantTier::kScalar && w == 1) ? base : run_bench_detailed(spec, t, w);
      if (cell.report.frame_hash != base.report.frame_hash)
        throw Error("frame hash differs between sweep cells (" + std::string(tier_name(t)) + ", " +
                    std::to_string(w) + " workers)");
      const double speedup =
          cell.makespan_ns > 0 ? static_cast<double>(base.makespan_ns) / static_cast<double>(cell.makespan_ns) : 1.0;
      rep.sweep.push_back({std::string(tier_name(t)), w, cell.makespan_ns, speedup});
    }
  }
  return rep;
}

VerifySummary run_verify(uint64_t seed, uint64_t trials, std::optional<KernelFamily> inject,
                         std::span<const KernelFamily> families, std::ostream* log) {
  std::vector<KernelTable> tables;
  for (VariantTier t : detect_capabilities())
    if (t != VariantTier::kScalar) tables.push_back(build_registry(t));
  if (tables.empty()) tables.push_back(scalar_kernels());
  std::vector<KernelTable> faulty = tables;
  if (inject)
    for (KernelTable& t : faulty) t = inject_fault(t, *inject);

  VerifySummary summary;
  for (const KernelId& id : all_kernel_ids()) {
    if (!families.empty() && std::find(families.begin(), families.end(), id.family) == families.end()) continue;
    const bool use_faulty = inject && *inject == id.family;
    VerifyReport r = verify_variants(id, seed, trials, use_faulty ? faulty : tables);
    if (!r.ok()) summary.status = 1;
    if (log) {
      *log << (r.ok() ? "ok       " : "MISMATCH ") << id.name() << "  trials=" << r.trials;
      if (r.blocks) *log << " blocks=" << r.blocks;
      if (!r.ok())
        *log << " mismatched_trials=" << r.mismatched_trials << " samples=" << r.mismatched_samples
             << " first_trial=" << r.first->trial << " trial_seed=0x" << std::hex << r.first->trial_seed << std::dec
             << " tier=" << tier_name(r.first->tier) << " (" << r.first->detail << ")";
      *log << '\n';
    }
    summary.reports.push_back(std::move(r));
  }
  return summary;
}

}  // namespace vvckit
