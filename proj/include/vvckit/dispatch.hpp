#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vvckit/error.hpp"
#include "vvckit/kernels.hpp"

namespace vvckit {

inline constexpr const char* kTierEnvVar = "VVCKIT_TIER";

// "scalar" | "vector128" | "vector256"; "auto" yields nullopt. Throws
// ConfigError for anything else.
std::optional<VariantTier> parse_tier(std::string_view s);

// Tiers this build can run on this CPU, ignoring any environment override.
std::vector<VariantTier> detect_host_capabilities();

// Host capabilities capped by VVCKIT_TIER when it is set; always holds scalar.
std::vector<VariantTier> detect_capabilities();

// Binds every family to the forced tier, else VVCKIT_TIER, else the best
// detected tier. Families without a variant at that tier stay scalar.
KernelTable build_registry(std::optional<VariantTier> forced = std::nullopt);

// Swaps one family's binding for a deliberately wrong variant.
KernelTable inject_fault(KernelTable table, KernelFamily family);

struct KernelId {
  KernelFamily family = KernelFamily::kAlfClassify;
  int depth = 8;
  // Family-specific specialization: InterpKernelId::key() for luma, pass
  // combination (bit0 = horizontal, bit1 = vertical) for chroma/bilinear,
  // (w << 8) | h for transforms, 0 for ALF.
  uint32_t key = 0;

  std::string name() const;

  friend bool operator==(const KernelId&, const KernelId&) = default;
};

std::optional<KernelFamily> parse_family(std::string_view s);

std::vector<KernelId> all_kernel_ids();

struct Mismatch {
  VariantTier tier = VariantTier::kScalar;
  uint64_t trial = 0;
  uint64_t trial_seed = 0;
  std::string detail;
};

struct VerifyReport {
  KernelId id;
  uint64_t trials = 0;
  // Number of 4x4 blocks checked (ALF families), summed over candidates.
  uint64_t blocks = 0;
  uint64_t mismatched_trials = 0;
  uint64_t mismatched_samples = 0;
  std::vector<VariantTier> tiers_checked;
  std::optional<Mismatch> first;

  bool ok() const { return mismatched_samples == 0; }
};

// Runs every candidate table on identical seeded inputs and compares each
// against the scalar reference.
VerifyReport verify_variants(const KernelId& id, uint64_t seed, uint64_t trials,
                             std::span<const KernelTable> candidates);

// All tiers from detect_capabilities().
VerifyReport verify_variants(const KernelId& id, uint64_t seed, uint64_t trials);

}  // namespace vvckit
