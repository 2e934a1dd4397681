#pragma once

#include <cstddef>
#include <functional>

namespace fq {

// Worker-count control. The partition of any parallel job is a fixed
// function of the job size, never of the worker count, so results are
// identical for 1 and k workers. FQ_THREADS, when set, wins over the
// value passed here.
void set_thread_count(unsigned n); // 0 = hardware concurrency
unsigned thread_count();

/// Runs fn(chunk) for chunk = 0..n_chunks-1 on up to thread_count() workers.
/// Chunks must be independent; callers reduce per-chunk results in chunk
/// order afterwards.
void run_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn);

/// Fixed chunk plan for a loop of `total` iterations: a chunk count that
/// depends only on `total` (clamped to [1, 64]).
std::size_t plan_chunks(std::size_t total);

/// Half-open iteration range of chunk `c` out of `n_chunks` over [0, total).
struct ChunkRange {
    std::size_t begin;
    std::size_t end;
};
ChunkRange chunk_range(std::size_t total, std::size_t n_chunks, std::size_t c);

} // namespace fq
