#pragma once

#include <string>
#include <vector>

namespace lstc {

struct CheckLine {
  std::string what;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckLine> checks;
  bool passed() const;
};

/// Published integer values, criteria 1 through 9, in order.
std::vector<CriterionResult> run_replication();

std::string format_criterion(const CriterionResult& c, bool verbose);

}  // namespace lstc
