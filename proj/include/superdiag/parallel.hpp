#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace superdiag {

/* Evaluate fn(items[i]) for every i on up to `threads` workers.  Results are
 * returned in input order, so reductions over them are deterministic.  The
 * first exception thrown by a worker is rethrown on the caller.
 */
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, Fn fn, unsigned threads) {
    using R = decltype(fn(items.front()));
    std::vector<R> results(items.size());
    if (items.empty()) return results;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(items.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < items.size(); ++i) results[i] = fn(items[i]);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < items.size(); i = next++) {
            try {
                results[i] = fn(items[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = items.size();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace superdiag
