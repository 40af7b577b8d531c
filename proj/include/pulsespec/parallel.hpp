#pragma once

namespace pulsespec {

/// Serial runs the reference path on the calling thread; Parallel fans work
/// out with OpenMP. Both produce bitwise identical results.
enum class Execution { Serial, Parallel };

/// Worker cap from PULSESPEC_THREADS; 0, unset or unparsable means the
/// OpenMP default.
int worker_count();

}  // namespace pulsespec
