#include "potentia/parallel.hpp"

#include <atomic>
#include <omp.h>

namespace potentia {

namespace {
std::atomic<int> configured_threads{0};
}

void set_thread_count(int threads)
{
    configured_threads = threads > 0 ? threads : 0;
}

int thread_count()
{
    const int configured = configured_threads.load();
    return configured > 0 ? configured : omp_get_num_procs();
}

} // namespace potentia
