#pragma once

#include <cstdint>
#include <functional>

namespace netgeom::exec {

// Worker count used by parallel_for.  0 means "auto": the NETGEOM_THREADS
// environment variable if set, otherwise hardware concurrency.
void set_thread_count(int threads);
int thread_count();

// Runs fn over disjoint index ranges covering [0, count).  Results must be
// written to per-index slots; reductions happen on the caller side in index
// order, so the outcome is identical for any worker count.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t, std::int64_t)>& fn);

} // namespace netgeom::exec
