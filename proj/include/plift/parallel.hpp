#ifndef PLIFT_PARALLEL_HPP
#define PLIFT_PARALLEL_HPP

#include <cstddef>

namespace plift::par {

// Process-wide switch for the OpenMP kernels. Defaults to on when OpenMP is
// available and more than one thread is configured; PLIFT_SERIAL=1 in the
// environment forces the serial paths.
bool enabled();
void set_enabled(bool on);
int max_threads();

// Runs f(i) for i in [0, n). Iterations must be independent; results must not
// depend on execution order.
template <typename F>
void parallel_for(std::size_t n, F&& f);

namespace detail {
void run_indexed(std::size_t n, void (*trampoline)(void*, std::size_t), void* ctx);
}

template <typename F>
void parallel_for(std::size_t n, F&& f) {
    auto trampoline = [](void* ctx, std::size_t i) { (*static_cast<F*>(ctx))(i); };
    detail::run_indexed(n, trampoline, &f);
}

} // namespace plift::par

#endif
