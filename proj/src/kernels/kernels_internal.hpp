#pragma once

#include "urllc/kernels.hpp"

namespace urllc::kernels::detail {

#if defined(URLLC_HAVE_AVX2)
const KernelSet& avx2_kernels();
#endif

}  // namespace urllc::kernels::detail
