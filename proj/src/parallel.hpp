#ifndef CAUSAL_SSD_SRC_PARALLEL_HPP
#define CAUSAL_SSD_SRC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace causal_ssd::detail {

// Runs task(i) for i in [0, count) on up to `workers` threads. Tasks must
// write only to their own output slots; the first exception is rethrown.
template <typename Task>
void for_each_index(std::size_t count, unsigned workers, Task&& task) {
    const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace causal_ssd::detail

#endif // CAUSAL_SSD_SRC_PARALLEL_HPP
