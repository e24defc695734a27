#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace rwrs {

// Runs fn(i) for i in [0, n).  Work items must be independent and write only
// to their own slot; results are then identical for any thread count, which
// keeps every experiment bit-reproducible.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const unsigned spawn = std::min<std::size_t>(threads, n) - 1;
    pool.reserve(spawn);
    for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace rwrs
