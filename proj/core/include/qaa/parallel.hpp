#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qaa {

// Runs body(i) for i in [0, n) on up to n_threads workers.  Each task owns its
// result slot and derives its own seed, so outputs are identical for any thread
// count; callers merge results in index order.
template <class F>
void parallel_for_index(std::size_t n, int n_threads, F&& body) {
    if (n == 0) return;
    const unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = static_cast<std::size_t>(n_threads > 0 ? n_threads : (hw ? hw : 1));
    if (workers > n) workers = n;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace qaa
