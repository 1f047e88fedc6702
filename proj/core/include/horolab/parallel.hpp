#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace horolab {

/// Number of workers for jobs <= 0: hardware concurrency.
inline unsigned resolve_jobs(int jobs) {
    if (jobs > 0)
        return unsigned(jobs);
    return std::max(1u, std::thread::hardware_concurrency());
}

/*!
    Runs body(i) for i in [0, n) on up to `jobs` threads. Callers write results into
    slot i, so any reduction done afterwards in index order is deterministic.
    The first exception thrown by a body is rethrown after all workers stop.
*/
template <class Body>
void parallel_for(std::size_t n, int jobs, Body&& body) {
    const unsigned workers = std::min<std::size_t>(resolve_jobs(jobs), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load())
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace horolab
