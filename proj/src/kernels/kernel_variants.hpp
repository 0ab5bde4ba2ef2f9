#pragma once

#include "radnlw/kernels.hpp"

namespace radnlw::kernels::detail {

extern const KernelTable kScalarTable;

#if defined(__x86_64__) || defined(__i386__)
#define RADNLW_HAVE_AVX2_VARIANT 1
extern const KernelTable kAvx2Table;
#endif

#if defined(__aarch64__)
#define RADNLW_HAVE_NEON_VARIANT 1
extern const KernelTable kNeonTable;
#endif

}  // namespace radnlw::kernels::detail
