// acceptance.hpp — end-to-end validation suite: every quantitative claim the
// library is built around, checked at its stated tolerance. Used by the
// `validate` CLI subcommand and by the acceptance test binary.

#pragma once

#include <string>
#include <vector>

namespace cavent::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    std::vector<std::string> details;  // measured-vs-expected lines
};

std::vector<CriterionResult> run_all();

bool all_passed(const std::vector<CriterionResult>& results);

// One "[PASS]/[FAIL] <id> <name> (<seconds>)" line per criterion plus the
// indented detail lines.
std::string format_report(const std::vector<CriterionResult>& results);

}  // namespace cavent::acceptance
