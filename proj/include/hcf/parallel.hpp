#ifndef HCF_PARALLEL_HPP
#define HCF_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hcf {

/// Number of workers to use for a request of `threads` (0 = hardware).
inline int resolve_threads(int threads) {
    if (threads > 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(i) for i in [0, n) on up to `threads` workers. Work items are
/// handed out dynamically, so body must only write to slot i of its output.
/// The first exception thrown by any item is rethrown on the caller.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
        run();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace hcf

#endif  // HCF_PARALLEL_HPP
