#pragma once

#include <cstdlib>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace blgl {

/// Worker count: BLGL_WORKERS env var if set, otherwise the OpenMP default.
/// A value of 1 gives the serial reference path.
inline int worker_count() {
    if (const char* env = std::getenv("BLGL_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Parallel map over [0, n). Results must not depend on iteration order.
template <typename F>
void parallel_for(std::int64_t n, F&& fn) {
#ifdef _OPENMP
    int workers = worker_count();
    if (workers > 1) {
#pragma omp parallel for schedule(static) num_threads(workers)
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
#endif
    for (std::int64_t i = 0; i < n; ++i) fn(i);
}

/// Serial loop, kept as the reference implementation for tests and benchmarks.
template <typename F>
void serial_for(std::int64_t n, F&& fn) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
}

}  // namespace blgl
