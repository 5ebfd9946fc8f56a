#include "plift/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plift::par {

namespace {
std::atomic<int> g_enabled{-1}; // -1 unset, 0 off, 1 on

bool initial_enabled() {
    if (const char* env = std::getenv("PLIFT_SERIAL"))
        if (env[0] == '1') return false;
#ifdef _OPENMP
    return omp_get_max_threads() > 1;
#else
    return false;
#endif
}
} // namespace

bool enabled() {
    int v = g_enabled.load(std::memory_order_relaxed);
    if (v < 0) {
        v = initial_enabled() ? 1 : 0;
        g_enabled.store(v, std::memory_order_relaxed);
    }
    return v == 1;
}

void set_enabled(bool on) { g_enabled.store(on ? 1 : 0, std::memory_order_relaxed); }

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace detail {
void run_indexed(std::size_t n, void (*trampoline)(void*, std::size_t), void* ctx) {
    if (!enabled() || n < 2) {
        for (std::size_t i = 0; i < n; ++i) trampoline(ctx, i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        trampoline(ctx, static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) trampoline(ctx, i);
#endif
}
} // namespace detail

} // namespace plift::par
