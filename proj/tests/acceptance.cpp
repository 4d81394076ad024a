// Acceptance gate: runs every verification criterion and prints one
// PASS/FAIL line per criterion.  Exits nonzero if any criterion fails.
#include <cstdio>

#include "lpl/verify.hpp"

int main() {
  bool all_pass = true;
  for (int id = 1; id <= 10; ++id) {
    lpl::verify::CriterionResult r;
    try {
      r = lpl::verify::criterion(id);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.pass = false;
      r.details = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %2d  %-34s %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.details.c_str());
    std::fflush(stdout);
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}
