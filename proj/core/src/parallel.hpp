#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace camoeval::detail {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Work is handed out
// by an atomic counter; callers must write results into index-addressed slots
// so the outcome is identical for any thread count. The first exception wins
// and is rethrown on the calling thread.
inline void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& fn) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<size_t>(threads, n));
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto body = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
    pool.clear();  // join
    if (error) std::rethrow_exception(error);
}

}  // namespace camoeval::detail
