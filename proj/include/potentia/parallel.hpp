#ifndef POTENTIA_PARALLEL_HPP
#define POTENTIA_PARALLEL_HPP

#include <cstddef>
#include <exception>

namespace potentia {

/// Number of worker threads used by batch loops. 0 restores the default (all
/// cores). Results never depend on this setting.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, n). Iterations must be independent. The first
/// exception thrown by any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::ptrdiff_t n, Body&& body)
{
    std::exception_ptr failure;
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(potentia_parallel_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace potentia

#endif // POTENTIA_PARALLEL_HPP
