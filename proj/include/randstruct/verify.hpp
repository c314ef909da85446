#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace rs {

enum class Suite { fast, full };

struct SubCheck {
    bool pass = false;
    std::string what;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool skipped = false;  // not run in this suite; counts as a pass
    std::string detail;
    std::vector<SubCheck> checks;
    double seconds = 0.0;
};

struct VerifyOptions {
    Suite suite = Suite::fast;
    std::uint64_t seed = 20240501;
    std::vector<int> only;  // criterion ids to run; empty runs all
    int workers = 1;        // replicate threads for experiment-backed criteria
    // Replaces giant_fraction as the reference of the giant-component check.
    // Lets the harness prove that a wrong reference is caught.
    std::function<double(double)> giant_reference;
};

struct CriterionInfo {
    int id;
    const char* name;
};
const std::vector<CriterionInfo>& criteria();

// Runs the selected criteria in id order; on_result sees each verdict as it
// lands. Exceptions inside a criterion turn into a failed verdict.
std::vector<CriterionResult> run_verification(const VerifyOptions& opts,
                                              const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS  7 giant-component  3.2s  detail" (SKIP / FAIL likewise).
void write_verdict_line(std::ostream& os, const CriterionResult& r);

}  // namespace rs
