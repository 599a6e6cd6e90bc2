#pragma once

#include <set>
#include <string>
#include <vector>

namespace toricsr::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name; // selector for --only
  std::string title;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0; // per suite for the property criterion
  std::string detail;       // expected vs actual on failure
};

struct Options {
  std::string golden_dir;
  std::set<std::string> only; // empty runs everything
};

const std::vector<std::string> &criterion_names();

// Throws std::invalid_argument for an unknown name in opts.only.
std::vector<CriterionResult> run(const Options &opts);

// "PASS  1 fine-interior        0.031 s (limit 1 s)  ..."
std::string format(const CriterionResult &r);

} // namespace toricsr::acceptance
