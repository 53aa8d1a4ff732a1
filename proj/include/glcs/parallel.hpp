#pragma once

namespace glcs {

/// Serial runs the plain reference loops; Parallel the OpenMP kernels.
/// Both produce bit-identical results.
enum class Execution { Serial, Parallel };

int max_threads() noexcept;

}  // namespace glcs
