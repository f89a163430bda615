#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "lstc/algebra.hpp"
#include "lstc/error.hpp"
#include "lstc/rings.hpp"
#include "lstc/serialize.hpp"

using namespace lstc;

namespace {

Presentation exterior(FieldTag field, int n) {
  Presentation p;
  p.field = field;
  for (int i = 0; i < n; ++i) p.generators.push_back({"e" + std::to_string(i + 1), 1, true});
  return p;
}

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::Internal;
}

int permutation_sign(std::vector<int> p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

}  // namespace

TEST_CASE("subspace reduce and canonical basis") {
  Subspace s(FieldTag::Rational, 4);
  CHECK(s.insert({{0, 2}, {1, 4}}));
  CHECK(s.insert({{1, 1}, {3, 1}}));
  CHECK_FALSE(s.insert({{0, 1}, {1, 3}, {3, 1}}));  // (1,2,0,0) + (0,1,0,1)
  CHECK(s.dim() == 2);
  // hand RREF of rows (1,2,0,0), (0,1,0,1): (1,0,0,-2), (0,1,0,1)
  auto b = s.basis();
  REQUIRE(b.size() == 2);
  CHECK(b[0] == SparseVector{{0, 1}, {3, -2}});
  CHECK(b[1] == SparseVector{{1, 1}, {3, 1}});
  Subspace t(FieldTag::Rational, 4);
  t.insert({{1, 1}, {3, 1}});
  t.insert({{0, 1}, {3, -2}});
  CHECK(s == t);
  CHECK(s.reduce({{0, 1}}) == SparseVector{{3, 2}});
}

TEST_CASE("subspace over GF2 reduces coefficients mod 2") {
  Subspace s(FieldTag::GF2, 3);
  CHECK(s.insert({{0, 1}, {1, 1}}));
  CHECK(s.insert({{1, 1}, {2, 1}}));
  CHECK(s.contains({{0, 1}, {2, 1}}));
  CHECK(s.contains({{0, 3}, {2, 5}}));
  CHECK_FALSE(s.contains({{0, 1}}));
}

TEST_CASE("matrix rank against hand elimination") {
  using R = std::vector<std::vector<Rational>>;
  CHECK(matrix_rank(FieldTag::Rational, R{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}) == 2);
  CHECK(matrix_rank(FieldTag::GF2, R{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}) == 2);
  CHECK(matrix_rank(FieldTag::Rational, R{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}) == 3);
}

TEST_CASE("rational parsing and field reduction") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_field(FieldTag::GF2, Rational(5)) == 1);
  CHECK(to_field(FieldTag::GF2, Rational(1, 3)) == 1);
  CHECK(code_of([] { to_field(FieldTag::GF2, Rational(1, 2)); }) == Errc::BadParameter);
}

TEST_CASE("exterior algebra over Q follows the Koszul sign rule") {
  const GradedAlgebra a = build_algebra(exterior(FieldTag::Rational, 3));
  CHECK(a.dim() == 8);
  const Element e[3] = {a.generator(0), a.generator(1), a.generator(2)};
  const Element top = e[0] * e[1] * e[2];
  REQUIRE_FALSE(top.is_zero());
  std::vector<int> perm{0, 1, 2};
  do {
    const Element prod = e[perm[0]] * e[perm[1]] * e[perm[2]];
    CHECK(prod == top.scaled(permutation_sign(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK((e[0] * e[0]).is_zero());
}

TEST_CASE("truncated polynomial ring over GF2") {
  Presentation p;
  p.generators = {{"a", 1, false}};
  p.relations = {{Term{1, {4}}}};
  const GradedAlgebra a = build_algebra(p);
  CHECK(a.dim() == 4);
  CHECK(a.top_degree() == 3);
  const Element x = a.generator(0);
  CHECK((x * x * x * x).is_zero());
  CHECK_FALSE((x * x * x).is_zero());
  CHECK((x + x).is_zero());
}

TEST_CASE("basis is sorted by degree") {
  const GradedAlgebra a = grassmann_ring(2, 5);
  for (std::uint32_t i = 1; i < a.dim(); ++i) CHECK(a.degree(i - 1) <= a.degree(i));
  CHECK(a.basis_monomial(0) == Monomial(a.num_generators(), 0));
}

TEST_CASE("relation with cross terms reduces to a unique normal form") {
  // GF2[x,y]/(x^2 + xy, y^2), |x| = |y| = 1: dim 3 in degrees 0,1,1 plus xy
  Presentation p;
  p.generators = {{"x", 1, false}, {"y", 1, false}};
  p.relations = {{Term{1, {2, 0}}, Term{1, {1, 1}}}, {Term{1, {0, 2}}}};
  const GradedAlgebra a = build_algebra(p);
  const Element x = a.generator(0), y = a.generator(1);
  CHECK(x * x == x * y);
  CHECK((y * y).is_zero());
  CHECK((x * x * x) == (x * x) * x);
  // x^3 = x^2 y = x y^2 = 0
  CHECK((x * x * x).is_zero());
  CHECK(a.dim() == 4);
}

TEST_CASE("error codes") {
  SUBCASE("non-homogeneous relation") {
    Presentation p;
    p.generators = {{"x", 1, false}};
    p.relations = {{Term{1, {2}}, Term{1, {1}}}};
    CHECK(code_of([&] { build_algebra(p); }) == Errc::NonHomogeneousRelation);
  }
  SUBCASE("infinite dimensional") {
    Presentation p;
    p.generators = {{"x", 2, false}};
    CHECK(code_of([&] { build_algebra(p); }) == Errc::InfiniteDimensional);
  }
  SUBCASE("mixed rational presentation") {
    Presentation p;
    p.field = FieldTag::Rational;
    p.generators = {{"x", 1, false}, {"y", 2, false}};
    p.relations = {{Term{1, {1, 1}}}, {Term{1, {0, 2}}}};
    CHECK(code_of([&] { build_algebra(p); }) == Errc::UnsupportedRationalPresentation);
  }
  SUBCASE("mixed ambient") {
    const GradedAlgebra a = sphere_ring(2), b = sphere_ring(2);
    CHECK(code_of([&] { (void)(a.generator(0) + b.generator(0)); }) == Errc::MixedAmbient);
  }
  SUBCASE("field mismatch") {
    CHECK(code_of([] { tensor(sphere_ring(2), sphere_ring(2, FieldTag::Rational)); }) == Errc::FieldMismatch);
    const GradedAlgebra q = cp_ring(2, FieldTag::Rational);
    CHECK(code_of([&] { steenrod_apply(q, q.generator(0)); }) == Errc::FieldMismatch);
  }
  SUBCASE("no steenrod data") {
    const GradedAlgebra g = grassmann_ring(2, 4);
    CHECK(code_of([&] { steenrod_apply(g, g.generator(0)); }) == Errc::NoSteenrodData);
  }
}

TEST_CASE("tensor product signs over Q") {
  const GradedAlgebra s = sphere_ring(1, FieldTag::Rational);
  const GradedAlgebra t = tensor(s, s);
  CHECK(t.dim() == 4);
  const Element left = t.generator(0), right = t.generator(1);
  CHECK(left * right == -(right * left));
  const auto idx = t.tensor_index(1, 1);
  REQUIRE(idx);
  CHECK((left * right).coefficient(*idx) == 1);
  CHECK((right * left).coefficient(*idx) == -1);
}

TEST_CASE("tensor product Poincare series multiplies") {
  const GradedAlgebra t = tensor(rp_ring(2), cp_ring(1));
  CHECK(t.dim() == 6);
  CHECK(t.top_degree() == 4);
  CHECK(t.has_steenrod());
}

TEST_CASE("Cartan formula on a product of classes") {
  const GradedAlgebra a = rp_ring(6);
  const Element x = a.generator(0);
  // Sq(a^k) = sum_i binom(k,i) a^{k+i}
  for (int k = 1; k <= 3; ++k) {
    Element p = a.one();
    for (int i = 0; i < k; ++i) p = p * x;
    Element expected = a.zero();
    for (int i = 0; i <= k; ++i) {
      if (k + i > 6) break;
      Element term = a.one();
      for (int j = 0; j < k + i; ++j) term = term * x;
      long b = 1;
      for (int j = 0; j < i; ++j) b = b * (k - j) / (j + 1);
      if (b % 2) expected = expected + term;
    }
    CHECK(steenrod_apply(a, p) == expected);
  }
}

TEST_CASE("multiplication kernel has dimension d^2 - d") {
  for (const GradedAlgebra& a : {sphere_ring(3), rp_ring(3), cp_ring(2, FieldTag::Rational)}) {
    const std::size_t d = a.dim();
    CHECK(multiplication_kernel(a).dim() == d * d - d);
  }
}

TEST_CASE("presentation JSON round trip") {
  const GradedAlgebra a = klein_ring(3);
  const Json j = presentation_to_json(a.presentation());
  const Presentation back = presentation_from_json(j);
  CHECK(back == a.presentation());
  const GradedAlgebra b = build_algebra(back);
  CHECK(b.dim() == a.dim());
  CHECK(algebra_to_json(a).dump() == algebra_to_json(b).dump());
  CHECK(code_of([] { presentation_from_json(Json::parse(R"({"field":"gf2"})")); }) == Errc::BadParameter);
}

TEST_CASE("algebra JSON carries the Poincare series") {
  const Json j = algebra_to_json(cp_ring(3), true);
  CHECK(j["dim"] == 4);
  CHECK(j["poincare"] == Json::parse("[1,0,1,0,1,0,1]"));
  CHECK(j.contains("products"));
}

TEST_CASE("polynomial round trip through an element") {
  const GradedAlgebra a = grassmann_ring(2, 4, FieldTag::Rational);
  const Element c1 = a.generator(0), c2 = a.generator(1);
  const Element x = c1 * c1 - c2.scaled(Rational(3, 2));
  CHECK(a.element(a.to_polynomial(x)) == x);
  CHECK(x.is_homogeneous());
  CHECK(x.degree() == 4);
}
