// One line per acceptance criterion. Exit status is nonzero only for failures that
// are not on the known list below (see the project notes for the analysis).
#include <chrono>
#include <cstring>
#include <iostream>
#include <set>

#include "lstc/replication.hpp"
#include "property_checks.hpp"

using namespace lstc;

namespace {

CriterionResult property_criterion() {
  CriterionResult c{10, "property suites", {}};
  auto record = [&](const std::string& what, const std::vector<std::string>& fails) {
    c.checks.push_back({what, "no failures", fails.empty() ? "no failures" : fails.front(), fails.empty()});
  };
  const auto rings = testing::catalog_rings();
  std::vector<std::string> nf, dual, sq, ker;
  for (std::size_t i = 0; i < rings.size(); ++i) {
    for (auto& f : testing::check_normal_form(rings[i], 1000, 7u + static_cast<unsigned>(i))) nf.push_back(f);
    for (auto& f : testing::check_duality(rings[i])) dual.push_back(f);
    for (auto& f : testing::check_unstable_sq(rings[i])) sq.push_back(f);
    for (auto& f : testing::check_kernel_dim(rings[i])) ker.push_back(f);
  }
  record("normal form and graded commutativity, 1000 products per ring", nf);
  record("Poincare duality", dual);
  record("unstable Sq axiom on every basis element", sq);
  record("multiplication kernel dimension d^2-d", ker);
  record("single-rule disabling", testing::check_rule_monotonicity(testing::rule_disable_expressions()));
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;
  const std::set<int> known_failures = {4};
  auto results = run_replication();
  results.push_back(property_criterion());
  int unexpected = 0;
  for (const auto& c : results) {
    std::cout << format_criterion(c, verbose);
    if (!c.passed() && !known_failures.contains(c.id)) ++unexpected;
    if (!c.passed() && known_failures.contains(c.id)) std::cout << "    (known failure)\n";
  }
  std::cout << (unexpected ? "unexpected failures: " + std::to_string(unexpected) : std::string("no unexpected failures"))
            << "\n";
  return unexpected ? 1 : 0;
}
