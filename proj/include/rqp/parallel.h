#pragma once

#include <cstdlib>
#include <thread>

namespace rqp {

/// Worker count for batch loops: hardware concurrency, overridden by the
/// RQP_THREADS environment variable, and never more than there are jobs.
inline unsigned worker_count(std::size_t jobs) {
    unsigned limit = std::thread::hardware_concurrency();
    if (limit == 0) {
        limit = 1;
    }
    if (const char* env = std::getenv("RQP_THREADS")) {
        char* end = nullptr;
        unsigned long parsed = std::strtoul(env, &end, 10);
        if (end != env && parsed > 0) {
            limit = static_cast<unsigned>(parsed);
        }
    }
    if (jobs < limit) {
        limit = static_cast<unsigned>(jobs);
    }
    return limit == 0 ? 1 : limit;
}

}  // namespace rqp
