#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "property_checks.hpp"

using namespace lstc::testing;

namespace {

void require_none(const std::vector<std::string>& fails) {
  for (const auto& f : fails) FAIL_CHECK(f);
}

}  // namespace

TEST_CASE("catalog ring properties") {
  const auto rings = catalog_rings();
  CHECK(rings.size() >= 20);
  for (std::size_t i = 0; i < rings.size(); ++i) {
    CAPTURE(rings[i].expr);
    require_none(check_normal_form(rings[i], 200, 11u + static_cast<unsigned>(i)));
    require_none(check_duality(rings[i]));
    require_none(check_unstable_sq(rings[i]));
    require_none(check_kernel_dim(rings[i]));
  }
}

TEST_CASE("disabling single rules") { require_none(check_rule_monotonicity(rule_disable_expressions())); }
