#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace equidec {

/// Runs fn(0..n-1), optionally on several threads. Callers write results
/// into preallocated slots, so the outcome is identical for any thread count.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    size_t nworkers = std::min<size_t>(threads, n);
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (size_t w = 0; w < nworkers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace equidec
