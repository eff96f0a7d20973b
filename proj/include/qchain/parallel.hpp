#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qchain {

/// Worker count from QCHAIN_WORKERS (default 1).
inline int worker_count() {
    if (const char* env = std::getenv("QCHAIN_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

/**
 * Reduce over the index range [begin, end) in fixed-size blocks.
 *
 * Blocks are cut independently of the worker count and merged strictly in
 * index order, so the result is bitwise identical for any QCHAIN_WORKERS.
 */
template <typename T, typename BlockFn, typename MergeFn>
T block_reduce(std::uint64_t begin, std::uint64_t end, T init, BlockFn block,
               MergeFn merge, std::uint64_t block_size = 1ull << 16) {
    if (begin >= end) return init;
    const std::uint64_t nblocks = (end - begin + block_size - 1) / block_size;
    std::vector<T> results((std::size_t)nblocks, init);
    const int workers = std::min<std::uint64_t>(worker_count(), nblocks);
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            std::uint64_t lo = begin + b * block_size;
            std::uint64_t hi = std::min(end, lo + block_size);
            results[(std::size_t)b] = block(lo, hi);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::uint64_t> counter{0};
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&]() {
                for (;;) {
                    std::uint64_t b = counter.fetch_add(1);
                    if (b >= nblocks) return;
                    std::uint64_t lo = begin + b * block_size;
                    std::uint64_t hi = std::min(end, lo + block_size);
                    results[(std::size_t)b] = block(lo, hi);
                }
            });
        for (auto& t : pool) t.join();
    }
    T acc = init;
    for (const T& r : results) acc = merge(acc, r);
    return acc;
}

}  // namespace qchain
