// vector128 tier (SSE4.1).

#include "simd/alf_simd.hpp"
#include "simd/interp_simd.hpp"
#include "simd/xform_simd.hpp"

namespace vvckit {

void init_interp_sse41(InterpKernels& k) { InterpTier<V128>::init(k); }

void init_alf_sse41(AlfKernels& k) {
  k.classify = alf_classify_simd<V128>;
  k.luma = AlfTier<V128>::luma;
  k.chroma = AlfTier<V128>::chroma;
}

void init_xform_sse41(XformKernels& k) { k.mat_rows = XformTier<V128>::mat_rows; }

}  // namespace vvckit
