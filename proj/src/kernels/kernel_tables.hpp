#pragma once

#include "spreadkit/kernels.hpp"

namespace spreadkit::kernels {

// Defined in the per-ISA translation units. They return nullptr when the
// build did not include that ISA.
const KernelTable* avx2_table();
const KernelTable* neon_table();

}  // namespace spreadkit::kernels
