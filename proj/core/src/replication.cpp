#include "lstc/replication.hpp"

#include <algorithm>
#include <sstream>

#include "lstc/bounds.hpp"
#include "lstc/error.hpp"
#include "lstc/invariants.hpp"
#include "lstc/rings.hpp"

namespace lstc {

bool CriterionResult::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
}

namespace {

std::string interval(int lo, std::optional<int> hi) {
  return "[" + std::to_string(lo) + "," + (hi ? std::to_string(*hi) : std::string("unbounded")) + "]";
}

void check_bound(CriterionResult& c, const std::string& expr, Invariant inv, int lo, int hi) {
  CheckLine line{std::string(invariant_name(inv)) + " " + expr, interval(lo, hi), "", false};
  try {
    BoundResult r = evaluate(parse_space_expr(expr), inv);
    line.actual = interval(r.lower, r.upper);
    line.ok = r.lower == lo && r.upper == hi;
  } catch (const Error& e) {
    line.actual = e.what();
  }
  c.checks.push_back(std::move(line));
}

void check_int(CriterionResult& c, const std::string& what, long expected, long actual) {
  c.checks.push_back({what, std::to_string(expected), std::to_string(actual), expected == actual});
}

// Coefficients of the Gaussian binomial [n choose d]_q via the product formula.
std::vector<long> gaussian_binomial(int n, int d) {
  std::vector<long> num{1};
  auto mul = [](const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  };
  auto one_minus_q = [](int k) {
    std::vector<long> v(static_cast<std::size_t>(k) + 1, 0);
    v[0] = 1;
    v[static_cast<std::size_t>(k)] = -1;
    return v;
  };
  std::vector<long> den{1};
  for (int i = 0; i < d; ++i) {
    num = mul(num, one_minus_q(n - i));
    den = mul(den, one_minus_q(i + 1));
  }
  // exact polynomial division num / den
  std::vector<long> quot(num.size() - den.size() + 1, 0);
  for (std::size_t i = 0; i < quot.size(); ++i) {
    quot[i] = num[i] / den[0];
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= quot[i] * den[j];
  }
  return quot;
}

CriterionResult criterion1() {
  CriterionResult c{1, "TC of the 2- and 3-dimensional Klein bottles", {}};
  check_bound(c, "K(2)", Invariant::TC, 5, 5);
  check_bound(c, "K(3)", Invariant::TC, 6, 6);
  return c;
}

CriterionResult criterion2() {
  CriterionResult c{2, "TC(K_n) intervals for n = 4..8", {}};
  for (int n = 4; n <= 8; ++n) {
    const int k = n / 2;
    check_bound(c, "K(" + std::to_string(n) + ")", Invariant::TC, n + 3, n % 2 ? 3 * k + 3 : 3 * k + 2);
  }
  return c;
}

CriterionResult criterion3() {
  CriterionResult c{3, "cat(X_g^{n-2}) = n+1 and cl_GF2 = n", {}};
  for (auto [g, n] : {std::pair{0, 3}, {1, 3}, {1, 4}, {2, 5}}) {
    const std::string e = "Xg(" + std::to_string(g) + "," + std::to_string(n) + ")";
    check_bound(c, e, Invariant::Cat, n + 1, n + 1);
    check_int(c, "cl_GF2 " + e, n, cup_length(xg_ring(g, n)).length);
  }
  return c;
}

CriterionResult criterion4() {
  CriterionResult c{4, "zero-divisor witness for X_1^1 and TC(X_g^1), TC(X_g^2)", {}};
  const GradedAlgebra a = xg_ring(1, 3);
  const ZeroDivisorResult z = zero_divisor_cup_length(a);
  c.checks.push_back({"zcl_GF2 Xg(1,3) witness length", ">= 6", std::to_string(z.length), z.length >= 6});
  // Basic divisors of x1 and y1 in the tensor square.
  const GradedAlgebra& t = z.square;
  const std::size_t ng = a.num_generators();
  auto divisor = [&](const std::string& name) {
    std::size_t i = 0;
    while (i < ng && a.generators()[i].name != name) ++i;
    return t.generator(i) - t.generator(ng + i);
  };
  const Element X1 = divisor("x1"), Y1 = divisor("y1");
  long cx = 0, cy = 0;
  for (const auto& f : z.witness.factors) {
    if (f == X1) ++cx;
    if (f == Y1) ++cy;
  }
  c.checks.push_back({"witness contains X1^3 Y1^3", "X1^3 Y1^3",
                      "X1^" + std::to_string(cx) + " Y1^" + std::to_string(cy), cx >= 3 && cy >= 3});
  check_bound(c, "Xg(1,3)", Invariant::TC, 7, 7);
  check_bound(c, "Xg(1,4)", Invariant::TC, 8, 8);
  return c;
}

CriterionResult criterion5() {
  CriterionResult c{5, "Grassmannian cup-length d(n-d) and dimension", {}};
  for (auto [d, n] : {std::pair{1, 2}, {1, 4}, {2, 4}, {2, 5}}) {
    const GradedAlgebra g = grassmann_ring(d, n, FieldTag::Rational);
    const std::string e = "Gr(" + std::to_string(d) + "," + std::to_string(n) + ")";
    check_int(c, "cl_Q " + e, d * (n - d), cup_length(g).length);
    long total = 0;
    for (long v : gaussian_binomial(n, d)) total += v;
    check_int(c, "dim " + e, total, static_cast<long>(g.dim()));
  }
  return c;
}

CriterionResult criterion6() {
  CriterionResult c{6, "cat of Dold manifolds of Grassmann type", {}};
  check_bound(c, "DG(2,4;[1])", Invariant::Cat, 6, 6);
  check_bound(c, "DG(2,4;[1,3])", Invariant::Cat, 7, 7);
  check_bound(c, "DG(1,3;[2,2])", Invariant::Cat, 6, 6);
  return c;
}

CriterionResult criterion7() {
  CriterionResult c{7, "cup-length of projective product spaces", {}};
  for (const auto& ns : {std::vector<int>{1, 3}, {2, 2}, {1, 1, 5}}) {
    const int r = static_cast<int>(ns.size());
    std::string e = "P(";
    for (std::size_t i = 0; i < ns.size(); ++i) e += (i ? "," : "") + std::to_string(ns[i]);
    e += ")";
    check_int(c, "cl_GF2 " + e, *std::min_element(ns.begin(), ns.end()) + r - 1, cup_length(pps_ring(ns)).length);
  }
  return c;
}

CriterionResult criterion8() {
  CriterionResult c{8, "rational zero-divisor cup-length of CP^n and spheres", {}};
  for (int n = 1; n <= 5; ++n)
    check_int(c, "zcl_Q CP(" + std::to_string(n) + ")", 2 * n,
              zero_divisor_cup_length(cp_ring(n, FieldTag::Rational)).length);
  check_int(c, "zcl_Q S(3)", 1, zero_divisor_cup_length(sphere_ring(3, FieldTag::Rational)).length);
  check_int(c, "zcl_Q S(2)", 2, zero_divisor_cup_length(sphere_ring(2, FieldTag::Rational)).length);
  return c;
}

CriterionResult criterion9() {
  CriterionResult c{9, "equivariant TC of CP^n and Gr_d(C^n) times spheres", {}};
  check_bound(c, "Z2[conj/antipodal]{CP(1)*S(3)}", Invariant::EqTC, 4, 4);
  check_bound(c, "Z2[conj/antipodal]{CP(2)*S(2)*S(3)}", Invariant::EqTC, 8, 8);
  check_bound(c, "Z2[conj/antipodal]{CP(3)*S(2)}", Invariant::EqTC, 9, 9);
  check_bound(c, "Z2[conj/antipodal]{Gr(2,4)*S(2)}", Invariant::EqTC, 11, 11);
  return c;
}

}  // namespace

std::vector<CriterionResult> run_replication() {
  std::vector<CriterionResult> out;
  for (auto* f : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8,
                  criterion9}) {
    try {
      out.push_back(f());
    } catch (const Error& e) {
      CriterionResult c{static_cast<int>(out.size()) + 1, "error", {}};
      c.checks.push_back({"evaluation", "no error", e.what(), false});
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::string format_criterion(const CriterionResult& c, bool verbose) {
  std::ostringstream out;
  out << "criterion " << c.id << ": " << (c.passed() ? "PASS" : "FAIL") << "  " << c.title << "\n";
  for (const auto& l : c.checks) {
    if (!verbose && l.ok) continue;
    out << "    " << (l.ok ? "ok   " : "FAIL ") << l.what << ": expected " << l.expected << ", got " << l.actual << "\n";
  }
  return out.str();
}

}  // namespace lstc
