#include "lstc/invariants.hpp"

#include <functional>

#include "lstc/error.hpp"
#include "lstc/rings.hpp"

namespace lstc {

namespace {

// Finds exponents e_i with sum = target and prod factors[i]^{e_i} != 0, trying
// high exponents of earlier factors first.
bool search_product(const GradedAlgebra& a, const std::vector<Element>& factors, int target,
                    std::vector<int>& exps) {
  const std::size_t n = factors.size();
  exps.assign(n, 0);
  std::function<bool(std::size_t, int, const Element&)> rec = [&](std::size_t i, int remaining,
                                                                  const Element& acc) -> bool {
    if (remaining == 0) return true;
    if (i == n) return false;
    std::vector<Element> powers{acc};
    while (static_cast<int>(powers.size()) <= remaining) {
      Element next = powers.back() * factors[i];
      if (next.is_zero()) break;
      powers.push_back(std::move(next));
    }
    for (int e = static_cast<int>(powers.size()) - 1; e >= 0; --e) {
      exps[i] = e;
      if (rec(i + 1, remaining - e, powers[e])) return true;
    }
    exps[i] = 0;
    return false;
  };
  return rec(0, target, a.one());
}

WitnessProduct build_witness(const GradedAlgebra& a, const std::vector<Element>& factors,
                             const std::vector<int>& exps) {
  WitnessProduct w{{}, a.one()};
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (int e = 0; e < exps[i]; ++e) {
      w.factors.push_back(factors[i]);
      w.value = w.value * factors[i];
    }
  return w;
}

template <class Step>
int power_length(Subspace current, Step step) {
  int t = 0;
  while (!current.empty()) {
    ++t;
    current = step(current);
  }
  return t;
}

}  // namespace

CupLengthResult cup_length(const GradedAlgebra& a) {
  const std::uint32_t n = static_cast<std::uint32_t>(a.dim());
  Subspace positive(a.field(), n);
  for (std::uint32_t i = 1; i < n; ++i) positive.insert({{i, Rational(1)}});

  const int k = power_length(positive, [&](const Subspace& s) {
    Subspace next(a.field(), n);
    for (const auto& v : s.basis()) {
      const Element x = a.element(v);
      for (std::uint32_t m = 1; m < n; ++m) {
        const Element y = a.basis_element(m) * x;
        if (!y.is_zero()) next.insert(y.terms());
      }
    }
    return next;
  });

  std::vector<Element> gens;
  for (std::size_t i = 0; i < a.num_generators(); ++i) gens.push_back(a.generator(i));
  std::vector<int> exps;
  if (!search_product(a, gens, k, exps)) throw Error(Errc::Internal, "no generator word realizes the cup-length");
  return CupLengthResult{k, build_witness(a, gens, exps)};
}

ZeroDivisorResult zero_divisor_cup_length(const GradedAlgebra& a) {
  const GradedAlgebra t = tensor(a, a);
  const std::size_t n = a.num_generators();
  const std::size_t dim = t.dim();
  const Subspace kernel = multiplication_kernel(a);

  std::vector<Element> divisors;
  for (std::size_t i = 0; i < n; ++i) divisors.push_back(t.generator(i) - t.generator(n + i));

  // The basic divisors generate the kernel as an ideal; confirm it before relying on it.
  Subspace generated(t.field(), dim);
  for (const auto& g : divisors)
    for (std::uint32_t m = 0; m < dim; ++m) {
      const Element y = g * t.basis_element(m);
      if (!y.is_zero()) generated.insert(y.terms());
    }
  if (!(generated == kernel)) throw Error(Errc::Internal, "basic divisors do not generate the kernel");

  const int k = power_length(kernel, [&](const Subspace& s) {
    Subspace next(t.field(), dim);
    for (const auto& v : s.basis()) {
      const Element x = t.element(v);
      for (const auto& g : divisors) {
        const Element y = g * x;
        if (!y.is_zero()) next.insert(y.terms());
      }
    }
    return next;
  });

  std::vector<int> exps;
  if (!search_product(t, divisors, k, exps))
    throw Error(Errc::Internal, "no product of basic divisors realizes the zero-divisor cup-length");
  return ZeroDivisorResult{k, build_witness(t, divisors, exps), t};
}

std::vector<std::size_t> poincare_polynomial(const GradedAlgebra& a) { return degree_dims(a); }

bool duality_check(const GradedAlgebra& a, int d) {
  if (d < 0 || a.top_degree() > d) return false;
  const auto [tlo, thi] = a.degree_range(d);
  if (thi - tlo != 1) return false;
  for (int k = 0; k <= d; ++k) {
    const auto [lo, hi] = a.degree_range(k);
    const auto [clo, chi] = a.degree_range(d - k);
    if (hi == lo) continue;
    std::vector<std::vector<Rational>> rows;
    for (std::uint32_t i = lo; i < hi; ++i) {
      std::vector<Rational> row;
      for (std::uint32_t j = clo; j < chi; ++j) {
        Rational c = 0;
        for (const auto& [idx, v] : a.multiply_basis(i, j))
          if (idx == tlo) c = v;
        row.push_back(c);
      }
      if (row.empty()) return false;
      rows.push_back(std::move(row));
    }
    if (matrix_rank(a.field(), rows) != hi - lo) return false;
  }
  return true;
}

}  // namespace lstc
