#pragma once

// Deterministic work splitting: chunks are claimed from an atomic counter but
// each worker only writes state owned by its chunk indices, so results never
// depend on scheduling.

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nashjet {

inline unsigned effective_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Invokes fn(chunk_index, begin, end) for consecutive chunks covering [0, count).
inline void parallel_chunks(std::uint64_t count, std::uint64_t chunk_size, unsigned threads,
                            const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
    if (count == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::uint64_t nchunks = (count + chunk_size - 1) / chunk_size;
    threads = effective_threads(threads);
    if (threads <= 1 || nchunks == 1) {
        for (std::uint64_t c = 0; c < nchunks; ++c)
            fn(static_cast<std::size_t>(c), c * chunk_size,
               std::min(count, (c + 1) * chunk_size));
        return;
    }

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            try {
                fn(static_cast<std::size_t>(c), c * chunk_size,
                   std::min(count, (c + 1) * chunk_size));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(threads, nchunks));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace nashjet
