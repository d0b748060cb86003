#pragma once

#include <cstddef>
#include <functional>

namespace falsify {

/// Maximum number of threads the parallel kernels may use. Resolved once
/// from FALSIFY_THREADS (unset or <=0 means hardware default) and
/// overridable at runtime for tests and the serial/parallel comparisons.
int max_threads();
void set_max_threads(int n);

/// Runs fn(i) for i in [0, n). Iterations must be independent; callers that
/// need deterministic results write into per-index slots and reduce in
/// index order afterwards.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace falsify
