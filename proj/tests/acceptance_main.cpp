// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. Kept separate from the unit tests so it can run standalone.

#include "cavent/acceptance.hpp"

#include <cstdlib>
#include <iostream>

int main() {
    const auto results = cavent::acceptance::run_all();
    std::cout << cavent::acceptance::format_report(results);
    return cavent::acceptance::all_passed(results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
