#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "vvckit/dispatch.hpp"
#include "vvckit/frame.hpp"
#include "vvckit/report.hpp"

namespace vvckit {

inline constexpr const char* kToolVersion = "0.1.0";

struct BenchRun {
  StageReport report;
  // Wall time of the decode-side work, excluding source generation.
  int64_t makespan_ns = 0;
};

// Source frames for a spec: the YUV input (at most spec.frames) or synthetic.
std::vector<Frame> workload_frames(const WorkloadSpec& spec);

// Per frame: a CTU wavefront doing MC and IQIT into a reconstruction, then
// per-CTU ALF tasks. tier == nullopt selects the best available tier.
BenchRun run_bench_detailed(const WorkloadSpec& spec, std::optional<VariantTier> tier, int workers,
                            std::vector<Frame>* output = nullptr);

StageReport run_bench(const WorkloadSpec& spec, std::optional<VariantTier> tier, int workers);

// Every tier x worker cell on the same workload. Throws Error when frame
// hashes disagree between cells.
SweepReport run_sweep(const WorkloadSpec& spec, std::span<const int> worker_counts,
                      std::span<const VariantTier> tiers);

struct VerifySummary {
  int status = 0;  // 0 all equal, 1 any mismatch
  std::vector<VerifyReport> reports;
};

// verify_variants over every KernelId (optionally restricted to families).
// With inject set, that family's candidates are replaced by faulty variants.
VerifySummary run_verify(uint64_t seed, uint64_t trials, std::optional<KernelFamily> inject = std::nullopt,
                         std::span<const KernelFamily> families = {}, std::ostream* log = nullptr);

}  // namespace vvckit
