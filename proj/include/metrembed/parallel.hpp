#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace metrembed {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Parallel kernels must produce results independent of the thread count:
// bodies write to disjoint slots, reductions happen outside.
template <class F>
void parallel_for(std::int64_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
#else
    for (std::int64_t i = 0; i < n; ++i) body(i);
#endif
}

// For loops with skewed per-iteration cost (e.g. Dijkstra per source).
template <class F>
void parallel_for_dynamic(std::int64_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) body(i);
#else
    for (std::int64_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace metrembed
