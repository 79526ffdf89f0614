#ifndef EULER_SPECTRA_PARALLEL_HPP
#define EULER_SPECTRA_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace euler_spectra {

/// Worker count: hardware concurrency, capped by EULER_SPECTRA_THREADS when set.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index is
/// visited exactly once; callers write results into per-index slots so the
/// merged output does not depend on scheduling. The first exception thrown by
/// a body is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace euler_spectra

#endif
