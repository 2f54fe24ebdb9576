#include "porheat/parallel.hpp"

#include <atomic>

namespace porheat {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned count) { g_threads = count; }

unsigned thread_count() {
    const unsigned n = g_threads.load();
    if (n != 0) {
        return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace porheat
