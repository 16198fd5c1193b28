#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace polynorm {

namespace detail {
inline std::atomic<unsigned>& max_threads_slot() {
    static std::atomic<unsigned> value{0};  // 0 = hardware concurrency
    return value;
}
inline thread_local int parallel_depth = 0;
}  // namespace detail

/// Cap the number of worker threads used by data-parallel sweeps.
/// 0 restores the default (hardware concurrency).
inline void set_max_threads(unsigned n) { detail::max_threads_slot().store(n); }

inline unsigned max_threads() {
    unsigned n = detail::max_threads_slot().load();
    if (n == 0) n = std::thread::hardware_concurrency();
    return n == 0 ? 1u : n;
}

/// Run body(i) for i in [0, count). Items must be independent; each item
/// writes only its own output slot, so results are identical for any thread
/// count. Nested calls run serially.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    const unsigned threads = max_threads();
    if (count == 0) return;
    if (threads <= 1 || count == 1 || detail::parallel_depth > 0) {
        detail::parallel_depth++;
        try {
            for (std::size_t i = 0; i < count; ++i) body(i);
        } catch (...) {
            detail::parallel_depth--;
            throw;
        }
        detail::parallel_depth--;
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        detail::parallel_depth++;
        constexpr std::size_t chunk = 16;
        for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= count) break;
            const std::size_t end = std::min(begin + chunk, count);
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                break;
            }
        }
        detail::parallel_depth--;
    };

    std::vector<std::thread> pool;
    const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace polynorm
