#include "zsm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace zsm {

namespace {
std::atomic<unsigned> g_workers{1};
thread_local bool t_inside_parallel = false;
} // namespace

unsigned worker_count() { return g_workers.load(std::memory_order_relaxed); }

void set_worker_count(unsigned n) {
    g_workers.store(std::clamp(n, 1u, 256u), std::memory_order_relaxed);
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0)
        return;
    const unsigned w = worker_count();
    if (w <= 1 || n < 2 || t_inside_parallel) {
        fn(0, n);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(w, n);
    std::vector<std::exception_ptr> errors(chunks);
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = n * c / chunks;
        const std::size_t end = n * (c + 1) / chunks;
        pool.emplace_back([&, c, begin, end] {
            t_inside_parallel = true;
            try {
                fn(begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
            t_inside_parallel = false;
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace zsm
