#include "property_checks.hpp"

#include <random>

#include "lstc/bounds.hpp"
#include "lstc/error.hpp"
#include "lstc/invariants.hpp"

namespace lstc::testing {

namespace {

Element random_homogeneous(const GradedAlgebra& a, std::mt19937& rng, int degree) {
  auto [lo, hi] = a.degree_range(degree);
  SparseVector v;
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (auto i = lo; i < hi; ++i) {
    Rational c = a.field() == FieldTag::GF2 ? Rational(rng() % 2) : Rational(coeff(rng));
    if (!is_zero(c)) v.emplace_back(i, c);
  }
  return a.element(v);
}

int random_degree(const GradedAlgebra& a, std::mt19937& rng) {
  std::vector<int> nonempty;
  for (int d = 0; d <= a.top_degree(); ++d) {
    auto [lo, hi] = a.degree_range(d);
    if (hi > lo) nonempty.push_back(d);
  }
  return nonempty[rng() % nonempty.size()];
}

std::string tag(const CatalogRing& r) { return r.expr + " over " + std::string(field_name(r.field)); }

}  // namespace

std::vector<CatalogRing> catalog_rings() {
  struct Row {
    const char* expr;
    FieldTag field;
  };
  const Row rows[] = {
      {"S(2)", FieldTag::GF2},          {"S(3)", FieldTag::Rational},     {"RP(4)", FieldTag::GF2},
      {"CP(3)", FieldTag::GF2},         {"CP(3)", FieldTag::Rational},    {"T(3)", FieldTag::GF2},
      {"T(3)", FieldTag::Rational},     {"Gr(2,4)", FieldTag::GF2},       {"Gr(2,4)", FieldTag::Rational},
      {"Gr(2,5)", FieldTag::GF2},       {"SigO(2)", FieldTag::GF2},       {"SigO(2)", FieldTag::Rational},
      {"SigN(3)", FieldTag::GF2},       {"P(1,3)", FieldTag::GF2},        {"P(2,2)", FieldTag::GF2},
      {"P(1,1,5)", FieldTag::GF2},      {"K(2)", FieldTag::GF2},          {"K(4)", FieldTag::GF2},
      {"Xg(1,3)", FieldTag::GF2},       {"Xg(2,5)", FieldTag::GF2},       {"DG(2,4;[1])", FieldTag::GF2},
      {"DG(1,3;[2,2])", FieldTag::GF2}, {"X(RP(2);(2,2),(3,1))", FieldTag::GF2},
      {"CP(2)*S(3)", FieldTag::Rational}, {"RP(2)*S(1)", FieldTag::GF2},
  };
  std::vector<CatalogRing> out;
  for (const auto& row : rows) {
    SpaceExpr e = parse_space_expr(row.expr);
    GradedAlgebra a = ring_for_expr(e, row.field);
    out.push_back({row.expr, row.field, a});
  }
  return out;
}

std::vector<std::string> check_normal_form(const CatalogRing& r, int samples, unsigned seed) {
  std::vector<std::string> fails;
  const GradedAlgebra& a = r.ring;
  std::mt19937 rng(seed);
  for (int s = 0; s < samples && fails.size() < 5; ++s) {
    const int da = random_degree(a, rng), db = random_degree(a, rng), dc = random_degree(a, rng);
    const Element x = random_homogeneous(a, rng, da);
    const Element y = random_homogeneous(a, rng, db);
    const Element z = random_homogeneous(a, rng, dc);
    const Element xy = x * y;
    // idempotence: re-reducing a normal form changes nothing
    if (a.element(a.to_polynomial(xy)) != xy) fails.push_back(tag(r) + ": normal form not idempotent");
    // confluence: both bracketings reduce to the same normal form
    if ((xy) * z != x * (y * z)) fails.push_back(tag(r) + ": (xy)z != x(yz)");
    const Element yx = y * x;
    const bool odd = (da * db) % 2 == 1 && a.field() == FieldTag::Rational;
    if (xy != (odd ? -yx : yx)) fails.push_back(tag(r) + ": graded commutativity fails");
  }
  return fails;
}

std::vector<std::string> check_duality(const CatalogRing& r) {
  const int d = structural_dim(parse_space_expr(r.expr));
  if (!duality_check(r.ring, d)) return {tag(r) + ": Poincare duality fails in dimension " + std::to_string(d)};
  return {};
}

std::vector<std::string> check_unstable_sq(const CatalogRing& r) {
  const GradedAlgebra& a = r.ring;
  if (!a.has_steenrod()) return {};
  std::vector<std::string> fails;
  for (std::uint32_t i = 0; i < a.dim(); ++i) {
    const Element x = a.basis_element(i);
    const int d = a.degree(i);
    Element sq;
    try {
      sq = steenrod_apply(a, x);
    } catch (const Error& e) {
      fails.push_back(tag(r) + ": " + e.what());
      continue;
    }
    if (sq.component(d) != x) fails.push_back(tag(r) + ": Sq^0 is not the identity on basis " + std::to_string(i));
    if (sq.component(2 * d) != x * x) fails.push_back(tag(r) + ": Sq^top is not the square on basis " + std::to_string(i));
    Element rest = sq;
    for (int k = d; k <= 2 * d; ++k) rest = rest - sq.component(k);
    if (!rest.is_zero()) fails.push_back(tag(r) + ": Sq has components outside [d, 2d] on basis " + std::to_string(i));
  }
  return fails;
}

std::vector<std::string> check_kernel_dim(const CatalogRing& r) {
  const std::size_t d = r.ring.dim();
  const std::size_t k = multiplication_kernel(r.ring).dim();
  if (k != d * d - d)
    return {tag(r) + ": kernel dimension " + std::to_string(k) + " != " + std::to_string(d * d - d)};
  return {};
}

std::vector<std::string> rule_disable_expressions() {
  return {"tc:K(2)",          "tc:K(3)",         "tc:K(5)",         "cat:Xg(1,3)",
          "tc:Xg(1,3)",       "cat:DG(2,4;[1])", "tc:DG(2,4;[1])",  "cat:DG(1,3;[2,2])",
          "tc:DG(1,3;[2,2])", "tc:P(1,3)",       "tc:CP(2)",        "cat:S(2)",
          "tc:T(2)",          "tc:Gr(2,4)",      "tc:X(SigN(3);(2,2))",
          "eqtc:Z2[conj/antipodal]{CP(2)*S(2)*S(3)}", "eqcat:Z2[refl(1,2)/antipodal]{S(1)*S(2)*SigO(2)}",
          "eqtc:Z2[conj/antipodal]{Gr(2,4)*S(2)}"};
}

std::vector<std::string> check_rule_monotonicity(const std::vector<std::string>& exprs) {
  std::vector<std::string> fails;
  for (const auto& row : exprs) {
    const auto colon = row.find(':');
    const Invariant inv = parse_invariant(row.substr(0, colon));
    const SpaceExpr e = parse_space_expr(row.substr(colon + 1));
    const BoundResult full = evaluate(e, inv);
    for (const auto& rule : list_rules()) {
      EvalOptions opts;
      opts.disabled_rules.insert(rule.id);
      const BoundResult r = evaluate(e, inv, opts);
      const std::string where = row + " without " + rule.id;
      if (r.lower > full.lower) fails.push_back(where + ": lower increased");
      if (full.upper && r.upper && *r.upper < *full.upper) fails.push_back(where + ": upper decreased");
      if (!full.upper && r.upper) fails.push_back(where + ": upper appeared");
      if (r.upper && *r.upper < r.lower) fails.push_back(where + ": lower > upper");
      if (full.exact() && (r.lower > full.lower || (r.upper && *r.upper < full.lower)))
        fails.push_back(where + ": exact value moved outside the interval");
    }
  }
  return fails;
}

}  // namespace lstc::testing
