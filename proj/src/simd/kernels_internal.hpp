#pragma once

#include "torus_nbc/simd/kernels.hpp"

namespace torus_nbc::simd::detail {

#if defined(TORUS_NBC_HAVE_AVX2)
// Defined in kernels_avx2.cpp, the only translation unit built with -mavx2.
// Callers must check CPU support before using the table.
const KernelTable& avx2_table();
#endif

}  // namespace torus_nbc::simd::detail
