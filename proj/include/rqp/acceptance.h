#pragma once

#include <string>
#include <vector>

namespace rqp::acceptance {

/// One acceptance criterion outcome. `passed` covers both the checked
/// assertions and the criterion's wall-clock budget.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

inline constexpr int CRITERION_COUNT = 9;

/// Runs one criterion (1-based id).
CriterionResult run_criterion(int id);

/// Runs all criteria in order.
std::vector<CriterionResult> run_all();

/// "[PASS] 4: <name> (0.123 s) — <detail>" one-liner.
std::string format_line(const CriterionResult& r);

}  // namespace rqp::acceptance
