#include "advtk/config.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace advtk {

int worker_threads() {
#ifdef _OPENMP
    int hw = omp_get_max_threads();
#else
    int hw = 1;
#endif
    if (const char* env = std::getenv("ADVTK_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v >= 1) return v;  // explicit setting wins, even above the OpenMP default
        } catch (...) {
            // ignore malformed values, fall through to the OpenMP default
        }
    }
    return hw;
}

bool use_parallel(ExecPolicy policy, uint64_t cells) {
    if (policy == ExecPolicy::Serial) return false;
#ifdef _OPENMP
    if (policy == ExecPolicy::Parallel) return true;
    // Auto: only parallelize when the work dwarfs the fork/join cost.
    return worker_threads() > 1 && cells >= (1ull << 16);
#else
    (void)cells;
    return false;
#endif
}

} // namespace advtk
