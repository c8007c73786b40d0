// Acceptance gate: one line per criterion, nonzero exit if any fail.

#include <cstdio>

#include "rqp/acceptance.h"

int main() {
    bool all = true;
    for (const auto& r : rqp::acceptance::run_all()) {
        std::printf("%s\n", rqp::acceptance::format_line(r).c_str());
        std::fflush(stdout);
        all = all && r.passed;
    }
    std::printf(all ? "acceptance: all criteria passed\n" : "acceptance: FAILURES above\n");
    return all ? 0 : 1;
}
