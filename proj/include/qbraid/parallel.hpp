#ifndef QBRAID_PARALLEL_HPP
#define QBRAID_PARALLEL_HPP

// Verification sweeps are embarrassingly parallel over basis kets.  Each
// kernel writes into its own slot, so the OpenMP and serial paths produce
// identical results; the serial path stays available at runtime for
// reference comparison.

#include <atomic>

namespace qbraid {

inline std::atomic<bool>& parallel_flag() {
    static std::atomic<bool> on{true};
    return on;
}

inline void set_parallel(bool on) { parallel_flag() = on; }
inline bool parallel_enabled() { return parallel_flag(); }

template <class F>
void parallel_for(long n, F&& body) {
#ifdef QBRAID_HAVE_OPENMP
    if (parallel_enabled()) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    for (long i = 0; i < n; ++i) body(i);
}

}  // namespace qbraid

#endif
