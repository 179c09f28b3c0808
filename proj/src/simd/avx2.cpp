// vector256 tier (AVX2). Narrow remainders fall back to 128-bit code.

#include "simd/alf_simd.hpp"
#include "simd/interp_simd.hpp"
#include "simd/xform_simd.hpp"

namespace vvckit {

void init_interp_avx2(InterpKernels& k) { InterpTier<V256, V128>::init(k); }

void init_alf_avx2(AlfKernels& k) {
  k.classify = alf_classify_simd<V256>;
  k.luma = AlfTier<V256, V128>::luma;
  k.chroma = AlfTier<V256, V128>::chroma;
}

void init_xform_avx2(XformKernels& k) { k.mat_rows = XformTier<V256, V128>::mat_rows; }

}  // namespace vvckit
