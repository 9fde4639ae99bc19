// parallel.hpp — Execution policy for the batch kernels. Parallel loops only
// ever split independent rows, so results match the serial reference exactly.

#pragma once

#include <cstddef>

#ifdef TRIEMIT_HAVE_OPENMP
#include <omp.h>
#endif

namespace triemit {

enum class Exec { Serial, Parallel };

inline bool openmp_enabled() {
#ifdef TRIEMIT_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

inline int max_threads() {
#ifdef TRIEMIT_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <typename Body>
void parallel_for(std::size_t n, Exec exec, Body&& body) {
#ifdef TRIEMIT_HAVE_OPENMP
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) {
        body(i);
    }
}

} // namespace triemit
