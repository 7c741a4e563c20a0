#include "linnik/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace linnik::parallel {

namespace {

unsigned initial_thread_count() {
    if (const char* env = std::getenv("LINNIK_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::atomic<unsigned>& counter() {
    static std::atomic<unsigned> n{initial_thread_count()};
    return n;
}

}  // namespace

unsigned thread_count() { return counter().load(std::memory_order_relaxed); }

void set_thread_count(unsigned n) { counter().store(n == 0 ? 1 : n, std::memory_order_relaxed); }

}  // namespace linnik::parallel
