// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <iostream>

#include "support/criteria.hpp"

int main() {
  bool all = true;
  for (const auto& r : natdual::testing::run_all_criteria()) {
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s of %.0f s", r.seconds, r.budget);
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.title << "): " << r.detail << " ["
              << timing << "]\n";
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
