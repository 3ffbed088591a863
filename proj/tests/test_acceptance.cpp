// Acceptance gate: runs the eleven bundled property suites in criterion
// order, one per criterion, enforcing exact results and per-criterion wall
// clock budgets.  Prints one pass/fail line per criterion and exits nonzero
// if any criterion fails its check or its budget.

#include <cstdio>
#include <string>
#include <vector>

#include "residua/suites.hpp"

int main() {
  struct Criterion {
    const char* suite;
    double limit_seconds;
  };
  // Criterion k is the k-th entry; budgets are part of the acceptance bar.
  const std::vector<Criterion> criteria = {
      {"residue-normalization", 5.0}, {"rescaling", 10.0},
      {"local-global", 30.0},         {"delta-squared", 30.0},
      {"trace-chainmap", 60.0},       {"trace-transitivity", 30.0},
      {"regdiff-two-way", 60.0},      {"fundamental-class", 5.0},
      {"derham-dims", 300.0},         {"module-laws", 1.0},
      {"zero-oracle", 60.0}};

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& c = criteria[k];
    residua::SuiteResult r;
    try {
      r = residua::run_suite(c.suite, residua::kDefaultSeed);
    } catch (const std::exception& e) {
      std::printf("criterion %2zu FAIL [%s] threw: %s\n", k + 1, c.suite,
                  e.what());
      ++failures;
      continue;
    }
    const bool in_budget = r.seconds < c.limit_seconds;
    const bool pass = r.pass && in_budget;
    std::printf("criterion %2zu %s [%s] %7.2f s (limit %3.0f s): %s%s\n", k + 1,
                pass ? "PASS" : "FAIL", c.suite, r.seconds, c.limit_seconds,
                r.detail.c_str(),
                (r.pass && !in_budget) ? " — over budget" : "");
    if (!pass) ++failures;
  }
  if (failures == 0) {
    std::printf("acceptance: %zu/%zu criteria pass\n", criteria.size(),
                criteria.size());
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", failures);
  return 1;
}
