#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace ah {

// Runs fn(begin, end) over contiguous blocks of [0, n). Each work item owns
// its output slot and its own derived random stream, so the partitioning has
// no effect on results; reductions happen afterwards in index order.
template <class Fn>
void parallel_blocks(std::size_t n, int n_threads, Fn&& fn) {
    if (n == 0) return;
    if (n_threads <= 1 || n < 2) {
        fn(std::size_t{0}, n);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(n_threads), n);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace ah
