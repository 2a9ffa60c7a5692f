#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace specreg {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Job i always runs
/// on worker i % workers, so results written to slot i do not depend on timing.
/// The first exception (by job index) is rethrown after all workers finish.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    const int workers = std::clamp(threads, 1, std::max(count, 1));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) {
                try {
                    fn(i);
                } catch (...) {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace specreg
