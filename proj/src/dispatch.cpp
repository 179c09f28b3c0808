#include "vvckit/dispatch.hpp"

#include <algorithm>
#include <cstdlib>

#include "vvckit/error.hpp"

namespace vvckit {

namespace {

KernelTable make_scalar_table() {
  KernelTable t;
  t.tier = VariantTier::kScalar;
  init_interp_scalar(t.interp);
  init_alf_scalar(t.alf);
  init_xform_scalar(t.xform);
  t.bound.fill(VariantTier::kScalar);
  return t;
}

bool host_supports(VariantTier t) {
  switch (t) {
    case VariantTier::kScalar: return true;
#if defined(VVCKIT_X86)
    case VariantTier::kVector128: return __builtin_cpu_supports("sse4.1");
    case VariantTier::kVector256: return __builtin_cpu_supports("avx2");
#endif
    default: return false;
  }
}

// Marks families whose entries differ from the scalar table as bound to tier.
void mark_bound(KernelTable& t, VariantTier tier) {
  const KernelTable& s = scalar_kernels();
  auto differs = [](const auto& a, const auto& b) { return a != b; };
  auto set = [&](KernelFamily f, bool changed) {
    if (changed) t.bound[static_cast<std::size_t>(f)] = tier;
  };
  set(KernelFamily::kAlfClassify, differs(t.alf.classify, s.alf.classify));
  set(KernelFamily::kAlfLuma, differs(t.alf.luma, s.alf.luma));
  set(KernelFamily::kAlfChroma, differs(t.alf.chroma, s.alf.chroma));
  const bool interp_changed = differs(t.interp.h_only, s.interp.h_only) ||
                              differs(t.interp.v_only, s.interp.v_only) ||
                              differs(t.interp.h_to_mid, s.interp.h_to_mid) ||
                              differs(t.interp.v_from_mid, s.interp.v_from_mid);
  set(KernelFamily::kInterpLuma, interp_changed);
  set(KernelFamily::kInterpChroma, interp_changed);
  set(KernelFamily::kInterpBilinear, interp_changed);
  set(KernelFamily::kXformInv, differs(t.xform.mat_rows, s.xform.mat_rows));
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table = make_scalar_table();
  return table;
}

std::string_view tier_name(VariantTier t) {
  switch (t) {
    case VariantTier::kScalar: return "scalar";
    case VariantTier::kVector128: return "vector128";
    case VariantTier::kVector256: return "vector256";
  }
  return "?";
}

std::string_view family_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::kAlfClassify: return "alf-classify";
    case KernelFamily::kAlfLuma: return "alf-luma";
    case KernelFamily::kAlfChroma: return "alf-chroma";
    case KernelFamily::kInterpLuma: return "interp-luma";
    case KernelFamily::kInterpChroma: return "interp-chroma";
    case KernelFamily::kInterpBilinear: return "interp-bilinear";
    case KernelFamily::kXformInv: return "xform-inv";
  }
  return "?";
}

std::optional<KernelFamily> parse_family(std::string_view s) {
  for (KernelFamily f : kAllFamilies)
    if (family_name(f) == s) return f;
  return std::nullopt;
}

std::optional<VariantTier> parse_tier(std::string_view s) {
  if (s == "auto") return std::nullopt;
  for (VariantTier t : kAllTiers)
    if (tier_name(t) == s) return t;
  throw ConfigError("unknown tier '" + std::string(s) + "' (expected scalar, vector128, vector256 or auto)");
}

std::vector<VariantTier> detect_host_capabilities() {
  std::vector<VariantTier> tiers;
  for (VariantTier t : kAllTiers)
    if (host_supports(t)) tiers.push_back(t);
  return tiers;
}

std::vector<VariantTier> detect_capabilities() {
  std::vector<VariantTier> tiers = detect_host_capabilities();
  if (const char* env = std::getenv(kTierEnvVar); env != nullptr && *env != '\0') {
    if (const auto cap = parse_tier(env)) std::erase_if(tiers, [&](VariantTier t) { return t > *cap; });
  }
  return tiers;
}

KernelTable build_registry(std::optional<VariantTier> forced) {
  const std::vector<VariantTier> caps = detect_capabilities();
  VariantTier tier = caps.back();
  if (forced) {
    if (std::find(caps.begin(), caps.end(), *forced) == caps.end())
      throw ConfigError("tier " + std::string(tier_name(*forced)) + " is not available on this host");
    tier = *forced;
  }

  KernelTable t = scalar_kernels();
  t.tier = tier;
#if defined(VVCKIT_X86)
  if (tier >= VariantTier::kVector128) {
    init_interp_sse41(t.interp);
    init_alf_sse41(t.alf);
    init_xform_sse41(t.xform);
    mark_bound(t, VariantTier::kVector128);
  }
  if (tier >= VariantTier::kVector256) {
    init_interp_avx2(t.interp);
    init_alf_avx2(t.alf);
    init_xform_avx2(t.xform);
    mark_bound(t, VariantTier::kVector256);
  }
#endif
  return t;
}

KernelTable inject_fault(KernelTable table, KernelFamily family) {
  switch (family) {
    case KernelFamily::kAlfClassify:
    case KernelFamily::kAlfLuma:
    case KernelFamily::kAlfChroma: {
      AlfKernels faulty = table.alf;
      init_alf_faulty(faulty);
      if (family == KernelFamily::kAlfClassify)
        table.alf.classify = faulty.classify;
      else if (family == KernelFamily::kAlfLuma)
        table.alf.luma = faulty.luma;
      else
        table.alf.chroma = faulty.chroma;
      break;
    }
    case KernelFamily::kInterpLuma:
    case KernelFamily::kInterpChroma:
    case KernelFamily::kInterpBilinear: init_interp_faulty(table.interp); break;
    case KernelFamily::kXformInv: init_xform_faulty(table.xform); break;
  }
  return table;
}

}  // namespace vvckit
