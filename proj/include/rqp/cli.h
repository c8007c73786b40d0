#pragma once

#include <string>
#include <vector>

namespace rqp::cli {

/// Full command-line driver, callable in-process (tests use this). `args`
/// excludes the program name. Exit code 0 on success, 1 when `verify`
/// finds failing criteria, 2 on validation/usage errors.
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace rqp::cli
