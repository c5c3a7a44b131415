#include "tistar/common.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

namespace tistar {

namespace {
std::atomic<int> g_max_threads{0};  // 0 = hardware default
}

int max_threads() {
    int cap = g_max_threads.load();
    if (cap > 0) return cap;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

void set_max_threads(int n) { g_max_threads.store(n); }

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    int workers = std::min<std::int64_t>(max_threads(), n);
    if (workers <= 1 || n < 256) {
        fn(0, n);
        return;
    }
    std::int64_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(size_t(workers));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        std::int64_t begin = w * chunk;
        std::int64_t end = std::min<std::int64_t>(begin + chunk, n);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void parallel_for_blocks(std::int64_t n, int n_blocks,
                         const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
    if (n <= 0 || n_blocks < 1) return;
    n_blocks = int(std::min<std::int64_t>(n_blocks, n));
    std::int64_t chunk = (n + n_blocks - 1) / n_blocks;
    int workers = std::min(max_threads(), n_blocks);

    auto run_block = [&](int b) {
        std::int64_t begin = std::int64_t(b) * chunk;
        std::int64_t end = std::min<std::int64_t>(begin + chunk, n);
        if (begin < end) fn(b, begin, end);
    };

    if (workers <= 1) {
        for (int b = 0; b < n_blocks; ++b) run_block(b);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(size_t(workers));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int b = w; b < n_blocks; b += workers) run_block(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tistar
