#include "fq/parallel.hpp"

#include <atomic>
#include <mutex>
#include <cstdlib>
#include <thread>
#include <vector>

namespace fq {

namespace {

std::atomic<unsigned> g_threads{0};

unsigned env_threads() {
    const char* s = std::getenv("FQ_THREADS");
    if (!s || !*s) return 0;
    long v = std::strtol(s, nullptr, 10);
    return v > 0 ? (unsigned)v : 0;
}

} // namespace

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
    if (unsigned e = env_threads()) return e;
    if (unsigned n = g_threads.load()) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void run_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn) {
    if (n_chunks == 0) return;
    std::size_t workers = std::min<std::size_t>(thread_count(), n_chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            try {
                for (;;) {
                    std::size_t c = next.fetch_add(1);
                    if (c >= n_chunks) break;
                    fn(c);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n_chunks); // stop handing out work
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::size_t plan_chunks(std::size_t total) {
    if (total < 2048) return 1;
    std::size_t c = total / 2048;
    return c > 64 ? 64 : c;
}

ChunkRange chunk_range(std::size_t total, std::size_t n_chunks, std::size_t c) {
    std::size_t lo = total * c / n_chunks;
    std::size_t hi = total * (c + 1) / n_chunks;
    return {lo, hi};
}

} // namespace fq
