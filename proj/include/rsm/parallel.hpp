#ifndef RSM_PARALLEL_HPP
#define RSM_PARALLEL_HPP

#include <algorithm>
#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rsm {

/// Number of worker threads used when a caller passes `jobs <= 0`.
inline int default_jobs() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs `fun(i)` for every i in [0, ntasks). Results must be written to
/// index-addressed storage so the output order never depends on scheduling.
template<typename Function_>
void parallel_for(std::ptrdiff_t ntasks, int jobs, Function_ fun) {
    if (jobs <= 0) {
        jobs = default_jobs();
    }
#ifdef _OPENMP
    if (jobs > 1 && ntasks > 1) {
        #pragma omp parallel for num_threads(jobs) schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < ntasks; ++i) {
            fun(i);
        }
        return;
    }
#endif
    for (std::ptrdiff_t i = 0; i < ntasks; ++i) {
        fun(i);
    }
}

}

#endif
