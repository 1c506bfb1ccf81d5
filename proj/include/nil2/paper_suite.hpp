#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nil2/core.hpp"

// The regression battery: exact reproduction of the worked examples plus the
// oracle-equivalence properties, at desk scale.  One entry per criterion;
// every tolerance is exact (coordinate equality).

namespace nil2 {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  bool all_passed() const {
    for (const auto& c : criteria)
      if (!c.passed) return false;
    return true;
  }
};

// progress, when non-null, receives one line per criterion as it finishes
SuiteResult run_paper_suite(u64 cap, u32 seed, std::ostream* progress);

}  // namespace nil2
