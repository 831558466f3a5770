#pragma once

namespace hypercvx {

// Execution policy for the data-parallel kernels. Serial is the reference
// implementation; OpenMP must produce identical results (exact kernels are
// order-independent, floating kernels reduce over fixed-size blocks).
enum class Exec { Serial, OpenMP };

}  // namespace hypercvx
