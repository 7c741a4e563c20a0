#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "linnik/summation.hpp"

namespace linnik::parallel {

/// Number of worker threads used by chunked reductions. Defaults to the
/// hardware concurrency; the LINNIK_THREADS environment variable overrides it.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Fixed chunk geometry: results depend on this, never on thread_count().
inline constexpr std::size_t kDefaultChunk = 64;

/// Runs body(chunk_index, begin, end) for every chunk of [0, n), distributing
/// chunks round-robin over threads. Exceptions are rethrown from the lowest
/// failing chunk so error reporting is deterministic too.
template <class Body>
void for_each_chunk(std::size_t n, std::size_t chunk, Body&& body) {
    if (n == 0) return;
    chunk = std::max<std::size_t>(chunk, 1);
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    const unsigned nthreads =
        static_cast<unsigned>(std::min<std::size_t>(thread_count(), nchunks));
    std::vector<std::exception_ptr> errors(nchunks);

    auto worker = [&](unsigned t) {
        for (std::size_t c = t; c < nchunks; c += nthreads) {
            const std::size_t b = c * chunk;
            const std::size_t e = std::min(n, b + chunk);
            try {
                body(c, b, e);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        }
    };

    if (nthreads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

/// Deterministic compensated reduction of term(i) over i in [0, n): each
/// chunk is summed in ascending i, then chunk partials are folded in chunk
/// order. Bitwise identical for any thread count.
template <class Accumulator, class Term>
Accumulator chunked_sum(std::size_t n, Term&& term, std::size_t chunk = kDefaultChunk) {
    chunk = std::max<std::size_t>(chunk, 1);
    const std::size_t nchunks = n == 0 ? 0 : (n + chunk - 1) / chunk;
    std::vector<Accumulator> partial(nchunks);
    for_each_chunk(n, chunk, [&](std::size_t c, std::size_t b, std::size_t e) {
        Accumulator acc;
        for (std::size_t i = b; i < e; ++i) acc += term(i);
        partial[c] = acc;
    });
    Accumulator total;
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace linnik::parallel
