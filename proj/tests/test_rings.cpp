#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lstc/error.hpp"
#include "lstc/invariants.hpp"
#include "lstc/rings.hpp"
#include "oracles.hpp"

using namespace lstc;

namespace {

oracle::Series dims_of(const GradedAlgebra& a) {
  oracle::Series out;
  for (std::size_t v : degree_dims(a)) out.push_back(static_cast<long>(v));
  return out;
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

Element power(const Element& x, const GradedAlgebra& a, int k) {
  Element p = a.one();
  for (int i = 0; i < k; ++i) p = p * x;
  return p;
}

}  // namespace

TEST_CASE("classic rings have the expected Poincare series") {
  for (int n = 1; n <= 5; ++n) {
    CHECK(dims_of(sphere_ring(n)) == oracle::sphere(n));
    CHECK(dims_of(sphere_ring(n, FieldTag::Rational)) == oracle::sphere(n));
    CHECK(dims_of(rp_ring(n)) == oracle::truncated(n, 1));
    CHECK(dims_of(cp_ring(n)) == oracle::truncated(n, 2));
    oracle::Series torus{1};
    for (int i = 0; i < n; ++i) torus = oracle::multiply(torus, oracle::sphere(1));
    CHECK(dims_of(torus_ring(n)) == torus);
  }
  CHECK(dims_of(surface_orientable_ring(0)) == oracle::sphere(2));
  CHECK(dims_of(surface_orientable_ring(3, FieldTag::Rational)) == oracle::Series{1, 6, 1});
  CHECK(dims_of(surface_nonorientable_ring(4)) == oracle::Series{1, 4, 1});
}

TEST_CASE("Grassmannian Poincare series matches box partitions") {
  for (int n = 2; n <= 6; ++n)
    for (int d = 1; d < n; ++d) {
      CAPTURE(d);
      CAPTURE(n);
      const oracle::Series expected = oracle::grassmann(d, n);
      CHECK(dims_of(grassmann_ring(d, n)) == expected);
      CHECK(dims_of(grassmann_ring(d, n, FieldTag::Rational)) == expected);
    }
}

TEST_CASE("c1 to the top power counts standard tableaux of the rectangle") {
  for (auto [d, n] : {std::pair{1, 3}, {2, 4}, {2, 5}, {3, 6}, {2, 6}}) {
    CAPTURE(d);
    CAPTURE(n);
    const int top = d * (n - d);
    const std::uint64_t tableaux = oracle::rectangle_tableaux(d, n - d);
    const GradedAlgebra q = grassmann_ring(d, n, FieldTag::Rational);
    const Element cq = power(q.generator(0), q, top);
    const std::uint32_t last = static_cast<std::uint32_t>(q.dim() - 1);
    CHECK(cq == q.basis_element(last).scaled(Rational(static_cast<unsigned long>(tableaux))));
    const GradedAlgebra g = grassmann_ring(d, n);
    CHECK(power(g.generator(0), g, top).is_zero() == (tableaux % 2 == 0));
  }
}

TEST_CASE("generalized projective product square rule") {
  const GradedAlgebra base = rp_ring(2);  // base dimension <= n keeps Sq^3(b) = 0
  const Element a = base.generator(0);
  for (int p = 0; p <= 2; ++p) {
    CAPTURE(p);
    const GradedAlgebra x = gpps_ring(GppsSpec{base, a, {{2, p}}, "b"});
    CHECK(x.dim() == base.dim() * 2);
    const Element b = x.generator("b1"), alpha = x.generator("a");
    const Element expected = oracle::binom_mod2(3 - p, 2) ? alpha * alpha * b : x.zero();
    CHECK(b * b == expected);
    // Sq(b) = (1 + alpha)^{n+1-p} b
    const Element one_plus = x.one() + alpha;
    CHECK(steenrod_apply(x, b) == power(one_plus, x, 3 - p) * b);
  }
}

TEST_CASE("p = 0 factors are flagged as an extension") {
  const GradedAlgebra x = pps_ring({1, 3});
  bool flagged = false;
  for (const auto& n : x.notes()) flagged = flagged || n.find("extension") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("Klein bottle ring") {
  const GradedAlgebra k = klein_ring(2);
  CHECK(k.dim() == 4);
  const Element b = k.generator("b1"), a = k.generator("a");
  CHECK(b * b == b * a);
  CHECK((a * a).is_zero());
  // Sq^1 b = b^2 = ab
  CHECK(steenrod_apply(k, b).component(2) == a * b);
  CHECK(steenrod_apply(k, b) == b + b * a);
  for (int n = 2; n <= 6; ++n) CHECK(klein_ring(n).dim() == (std::size_t{1} << n));
}

TEST_CASE("X_g ring relations and series") {
  for (auto [g, n] : {std::pair{0, 3}, {1, 3}, {1, 4}, {2, 5}}) {
    CAPTURE(g);
    CAPTURE(n);
    const GradedAlgebra x = xg_ring(g, n);
    oracle::Series expected{1, g + 1, 1};
    for (int s = 0; s < n - 2; ++s) expected = oracle::multiply(expected, oracle::sphere(1));
    CHECK(dims_of(x) == expected);
    Element w1 = x.zero();
    for (int i = 1; i <= g + 1; ++i) w1 = w1 + x.generator("x" + std::to_string(i));
    const Element y = x.generator("y1");
    CHECK(y * y == w1 * y);
  }
  // w1 override: y^2 = x1 y
  Polynomial w1{Term{1, {1, 0}}};
  const GradedAlgebra x = xg_ring(1, 3, w1);
  CHECK(x.generator("y1") * x.generator("y1") == x.generator("x1") * x.generator("y1"));
}

TEST_CASE("Dold manifolds of Grassmann type") {
  const GradedAlgebra d = dold_grassmann_ring(2, 4, {1, 3});
  CHECK(d.dim() == 24);
  oracle::Series expected = oracle::multiply(oracle::grassmann(2, 4), oracle::multiply(oracle::truncated(1, 1), oracle::sphere(3)));
  CHECK(dims_of(d) == expected);
  CHECK(dold_grassmann_ring(1, 3, {2, 2}).dim() == 18);
}

TEST_CASE("projective product spaces") {
  CHECK(dims_of(pps_ring({3, 1})) == oracle::multiply(oracle::truncated(1, 1), oracle::sphere(3)));
  CHECK(dims_of(pps_ring({1, 1, 5})) ==
        oracle::multiply(oracle::truncated(1, 1), oracle::multiply(oracle::sphere(1), oracle::sphere(5))));
}

TEST_CASE("constructor parameter errors") {
  CHECK(code_of([] { klein_ring(1); }) == Errc::BadParameter);
  CHECK(code_of([] { grassmann_ring(3, 3); }) == Errc::BadParameter);
  CHECK(code_of([] { pps_ring({}); }) == Errc::BadParameter);
  CHECK(code_of([] { surface_nonorientable_ring(0); }) == Errc::BadParameter);
  CHECK(code_of([] { xg_ring(1, 3, Polynomial{Term{1, {2, 0}}}); }) == Errc::BadW1);
  const GradedAlgebra base = cp_ring(2);
  CHECK(code_of([&] { gpps_ring(GppsSpec{base, base.generator(0), {{1, 1}}, "b"}); }) == Errc::BadAlpha);
  const GradedAlgebra q = cp_ring(2, FieldTag::Rational);
  CHECK(code_of([&] { gpps_ring(GppsSpec{q, q.generator(0), {{1, 1}}, "b"}); }) == Errc::FieldMismatch);
  const GradedAlgebra rp = rp_ring(2);
  CHECK(code_of([&] { gpps_ring(GppsSpec{rp, rp.generator(0), {{2, 3}}, "b"}); }) == Errc::BadParameter);
  const GradedAlgebra rp3 = rp_ring(3);
  CHECK(code_of([&] { gpps_ring(GppsSpec{rp3, rp3.generator(0), {{2, 0}}, "b"}); }) == Errc::BadParameter);
}

TEST_CASE("rational rings of surfaces and CP^n") {
  const GradedAlgebra s = surface_orientable_ring(2, FieldTag::Rational);
  CHECK(duality_check(s, 2));
  const Element a1 = s.generator("a1"), b1 = s.generator("b1");
  CHECK(a1 * b1 == -(b1 * a1));
  CHECK_FALSE((a1 * b1).is_zero());
  CHECK((a1 * s.generator("b2")).is_zero());
}
