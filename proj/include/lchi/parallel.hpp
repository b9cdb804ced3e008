#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lchi {

inline unsigned default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

// Run fn(block_index) for block_index in [0, n_blocks) on `workers` threads.
// Blocks are handed out by an atomic counter, so which thread runs which block
// is unspecified -- callers must write results into per-block slots and reduce
// them in block order afterwards. That makes every result independent of the
// worker count.
inline void parallel_blocks(std::size_t n_blocks, unsigned workers,
                            const std::function<void(std::size_t)>& fn) {
    if (n_blocks == 0) return;
    if (workers <= 1 || n_blocks == 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto run = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= n_blocks || failed.load()) return;
            try {
                fn(b);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    unsigned nthreads = workers < n_blocks ? workers : static_cast<unsigned>(n_blocks);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lchi
