#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace reqlab::util {

/// Runs f(i) for i in [0, n) on up to `workers` threads. f must not throw;
/// callers record per-item failures themselves so one bad cell cannot
/// poison the batch.
template <typename F>
void parallel_for(std::size_t n, std::size_t workers, F&& f) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            f(i);
        }
    };
    std::vector<std::thread> threads;
    const std::size_t count = workers < n ? workers : n;
    threads.reserve(count);
    for (std::size_t t = 0; t < count; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
}

}  // namespace reqlab::util
