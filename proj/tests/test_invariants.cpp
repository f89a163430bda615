#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "lstc/invariants.hpp"
#include "lstc/rings.hpp"

using namespace lstc;

namespace {

// Longest nonzero product of positive-degree basis elements, by exhaustive search.
int brute_cup_length(const GradedAlgebra& a) {
  int best = 0;
  std::function<void(std::uint32_t, const Element&, int)> walk = [&](std::uint32_t from, const Element& acc, int len) {
    best = std::max(best, len);
    for (std::uint32_t i = from; i < a.dim(); ++i) {
      if (a.degree(i) == 0) continue;
      const Element next = acc * a.basis_element(i);
      if (!next.is_zero()) walk(i, next, len + 1);
    }
  };
  walk(0, a.one(), 0);
  return best;
}

// Powers of the whole multiplication kernel, iterated over a basis of it.
int kernel_power_length(const GradedAlgebra& a) {
  const GradedAlgebra t = tensor(a, a);
  const Subspace k = multiplication_kernel(a);
  std::vector<Element> kb;
  for (const auto& v : k.basis()) kb.push_back(t.element(v));
  std::vector<Element> current = kb;
  int length = 0;
  while (!current.empty()) {
    ++length;
    Subspace next(t.field(), t.dim());
    std::vector<Element> span;
    for (const auto& u : kb)
      for (const auto& s : current) {
        const Element p = u * s;
        if (next.insert(p.terms())) span.push_back(p);
      }
    current = span;
  }
  return length;
}

void check_witness(const GradedAlgebra& ambient, const WitnessProduct& w, int length) {
  CHECK(static_cast<int>(w.factors.size()) == length);
  Element p = ambient.one();
  for (const auto& f : w.factors) p = p * f;
  CHECK(p == w.value);
  if (length > 0) CHECK_FALSE(w.value.is_zero());
}

}  // namespace

TEST_CASE("cup-length agrees with exhaustive search") {
  for (const GradedAlgebra& a : {rp_ring(4), cp_ring(3, FieldTag::Rational), torus_ring(3), klein_ring(3), pps_ring({2, 3}),
                                 grassmann_ring(2, 4), grassmann_ring(2, 4, FieldTag::Rational), xg_ring(1, 3),
                                 surface_nonorientable_ring(3), surface_orientable_ring(2, FieldTag::Rational)}) {
    const CupLengthResult r = cup_length(a);
    CHECK(r.length == brute_cup_length(a));
    check_witness(a, r.witness, r.length);
  }
}

TEST_CASE("projective product space cup-length is n1 + r - 1") {
  for (const auto& ns : {std::vector<int>{1, 3}, {2, 2}, {1, 1, 5}, {2, 3, 4}, {3, 3}}) {
    const int r = static_cast<int>(ns.size());
    CHECK(cup_length(pps_ring(ns)).length == *std::min_element(ns.begin(), ns.end()) + r - 1);
  }
}

TEST_CASE("Grassmannian cup-length over Q is d(n-d)") {
  for (auto [d, n] : {std::pair{1, 2}, {1, 4}, {2, 4}, {2, 5}})
    CHECK(cup_length(grassmann_ring(d, n, FieldTag::Rational)).length == d * (n - d));
}

TEST_CASE("Dold manifold cup-length over GF2") {
  CHECK(cup_length(dold_grassmann_ring(2, 4, {1})).length == 4);
  CHECK(cup_length(dold_grassmann_ring(2, 4, {1, 3})).length == 5);
  CHECK(cup_length(dold_grassmann_ring(1, 3, {2, 2})).length == 5);
}

TEST_CASE("zero-divisors of spheres by hand") {
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const GradedAlgebra s = sphere_ring(n, FieldTag::Rational);
    const GradedAlgebra t = tensor(s, s);
    const Element u = t.generator(0) - t.generator(1);
    const auto xx = t.tensor_index(1, 1);
    REQUIRE(xx);
    // u^2 = -(1 + (-1)^n) x(x)x
    const int expected = n % 2 ? 0 : -2;
    CHECK((u * u).coefficient(*xx) == expected);
    const ZeroDivisorResult z = zero_divisor_cup_length(s);
    CHECK(z.length == (n % 2 ? 1 : 2));
    check_witness(z.square, z.witness, z.length);
  }
}

TEST_CASE("zcl over Q of CP^n is 2n") {
  for (int n = 1; n <= 5; ++n) CHECK(zero_divisor_cup_length(cp_ring(n, FieldTag::Rational)).length == 2 * n);
}

TEST_CASE("zcl agrees with powers of the full kernel") {
  for (const GradedAlgebra& a : {sphere_ring(1), rp_ring(3), klein_ring(3), surface_nonorientable_ring(2), xg_ring(1, 3),
                                 cp_ring(2, FieldTag::Rational), grassmann_ring(2, 4), torus_ring(2, FieldTag::Rational)}) {
    const ZeroDivisorResult z = zero_divisor_cup_length(a);
    CHECK(z.length == kernel_power_length(a));
    check_witness(z.square, z.witness, z.length);
    const Subspace k = multiplication_kernel(a);
    for (const auto& f : z.witness.factors) CHECK(k.contains(f.terms()));
  }
}

TEST_CASE("zcl of Klein bottles and X_g") {
  CHECK(zero_divisor_cup_length(klein_ring(2)).length == kernel_power_length(klein_ring(2)));
  CHECK(zero_divisor_cup_length(klein_ring(3)).length == 5);
  CHECK(zero_divisor_cup_length(klein_ring(4)).length == 6);
  CHECK(zero_divisor_cup_length(xg_ring(1, 3)).length == 5);
  CHECK(zero_divisor_cup_length(xg_ring(0, 3)).length == 5);
}

TEST_CASE("zcl is symmetric in the tensor factors") {
  const GradedAlgebra a = rp_ring(2), b = sphere_ring(3);
  CHECK(zero_divisor_cup_length(tensor(a, b)).length == zero_divisor_cup_length(tensor(b, a)).length);
  const GradedAlgebra c = cp_ring(1, FieldTag::Rational), d = sphere_ring(3, FieldTag::Rational);
  CHECK(zero_divisor_cup_length(tensor(c, d)).length == zero_divisor_cup_length(tensor(d, c)).length);
}

TEST_CASE("Poincare duality") {
  CHECK(duality_check(rp_ring(5), 5));
  CHECK(duality_check(klein_ring(4), 4));
  CHECK(duality_check(grassmann_ring(2, 5), 12));
  CHECK(duality_check(dold_grassmann_ring(2, 4, {1, 3}), 12));
  CHECK_FALSE(duality_check(rp_ring(5), 4));
  Presentation p;
  p.generators = {{"x", 1, true}, {"y", 1, true}};
  p.relations = {{Term{1, {1, 1}}}};
  CHECK_FALSE(duality_check(build_algebra(p), 1));
}

TEST_CASE("Poincare polynomial") {
  CHECK(poincare_polynomial(grassmann_ring(2, 4)) == std::vector<std::size_t>{1, 0, 1, 0, 2, 0, 1, 0, 1});
}
