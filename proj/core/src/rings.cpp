#include "lstc/rings.hpp"

#include <algorithm>
#include <map>

#include "lstc/error.hpp"

namespace lstc {

namespace {

using PolyMap = std::map<Monomial, Rational>;

Monomial unit_exps(std::size_t n, std::size_t i, int e = 1) {
  Monomial m(n, 0);
  m[i] = e;
  return m;
}

Polynomial to_poly(const PolyMap& m) {
  Polynomial out;
  for (const auto& [mono, c] : m)
    if (!is_zero(c)) out.push_back(Term{c, mono});
  return out;
}

std::vector<std::size_t> multiply_series(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<std::size_t> sphere_series(int n) {
  std::vector<std::size_t> s(static_cast<std::size_t>(n) + 1, 0);
  s[0] = 1;
  s[n] += 1;
  return s;
}

void expect_dims(const GradedAlgebra& a, const std::vector<std::size_t>& expected, const std::string& what) {
  if (degree_dims(a) != expected)
    throw Error(Errc::Internal, what + ": Poincare polynomial does not match the expected one");
}

void require_gf2(FieldTag field, const std::string& what) {
  if (field != FieldTag::GF2) throw Error(Errc::FieldMismatch, what + " is only available over GF(2)");
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

GradedAlgebra truncated_ring(const std::string& name, int degree, int height, FieldTag field) {
  Presentation p;
  p.field = field;
  p.generators = {{name, degree, false}};
  p.relations = {{Term{1, {height + 1}}}};
  if (field == FieldTag::GF2) p.steenrod[name] = {Term{1, {1}}, Term{1, {2}}};
  p.top_degree = degree * height;
  return build_algebra(p);
}

}  // namespace

std::vector<std::size_t> degree_dims(const GradedAlgebra& a) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= a.top_degree(); ++d) {
    const auto [lo, hi] = a.degree_range(d);
    out.push_back(hi - lo);
  }
  return out;
}

GradedAlgebra sphere_ring(int n, FieldTag field) {
  if (n < 1) throw Error(Errc::BadParameter, "sphere dimension must be at least 1");
  Presentation p;
  p.field = field;
  p.generators = {{"x", n, true}};
  if (field == FieldTag::GF2) p.steenrod["x"] = {Term{1, {1}}};
  p.top_degree = n;
  GradedAlgebra a = build_algebra(p);
  expect_dims(a, sphere_series(n), "sphere");
  return a;
}

GradedAlgebra rp_ring(int n) {
  if (n < 1) throw Error(Errc::BadParameter, "RP^n needs n >= 1");
  GradedAlgebra a = truncated_ring("a", 1, n, FieldTag::GF2);
  expect_dims(a, std::vector<std::size_t>(static_cast<std::size_t>(n) + 1, 1), "RP^n");
  return a;
}

GradedAlgebra cp_ring(int n, FieldTag field) {
  if (n < 1) throw Error(Errc::BadParameter, "CP^n needs n >= 1");
  GradedAlgebra a = truncated_ring("c", 2, n, field);
  std::vector<std::size_t> expected(2 * static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i <= n; ++i) expected[2 * i] = 1;
  expect_dims(a, expected, "CP^n");
  return a;
}

GradedAlgebra torus_ring(int n, FieldTag field) {
  if (n < 1) throw Error(Errc::BadParameter, "torus dimension must be at least 1");
  Presentation p;
  p.field = field;
  for (int i = 1; i <= n; ++i) {
    const std::string name = "x" + std::to_string(i);
    p.generators.push_back({name, 1, true});
    if (field == FieldTag::GF2) p.steenrod[name] = {Term{1, unit_exps(n, i - 1)}};
  }
  p.top_degree = n;
  GradedAlgebra a = build_algebra(p);
  std::vector<std::size_t> expected{1};
  for (int i = 0; i < n; ++i) expected = multiply_series(expected, sphere_series(1));
  expect_dims(a, expected, "torus");
  return a;
}

GradedAlgebra surface_orientable_ring(int g, FieldTag field) {
  if (g < 0) throw Error(Errc::BadParameter, "genus must be non-negative");
  if (g == 0) return sphere_ring(2, field);
  const std::size_t n = 2 * static_cast<std::size_t>(g);
  Presentation p;
  p.field = field;
  for (int i = 1; i <= g; ++i) {
    p.generators.push_back({"a" + std::to_string(i), 1, true});
    p.generators.push_back({"b" + std::to_string(i), 1, true});
  }
  auto mono = [&](std::size_t i, std::size_t j) {
    Monomial m(n, 0);
    m[i] = 1;
    m[j] = 1;
    return m;
  };
  for (std::size_t i = 0; i < static_cast<std::size_t>(g); ++i) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(g); ++j) {
      if (i < j) {
        p.relations.push_back({Term{1, mono(2 * i, 2 * j)}});
        p.relations.push_back({Term{1, mono(2 * i + 1, 2 * j + 1)}});
      }
      if (i != j) p.relations.push_back({Term{1, mono(2 * i, 2 * j + 1)}});
    }
    if (i > 0) p.relations.push_back({Term{1, mono(2 * i, 2 * i + 1)}, Term{-1, mono(0, 1)}});
  }
  p.top_degree = 2;
  GradedAlgebra a = build_algebra(p);
  expect_dims(a, {1, n, 1}, "orientable surface");
  return a;
}

GradedAlgebra surface_nonorientable_ring(int h) {
  if (h < 1) throw Error(Errc::BadParameter, "N_h needs h >= 1");
  const std::size_t n = static_cast<std::size_t>(h);
  Presentation p;
  p.field = FieldTag::GF2;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string name = "x" + std::to_string(i + 1);
    p.generators.push_back({name, 1, false});
    p.steenrod[name] = {Term{1, unit_exps(n, i)}, Term{1, unit_exps(n, i, 2)}};
    for (std::size_t j = i + 1; j < n; ++j) {
      Monomial m(n, 0);
      m[i] = 1;
      m[j] = 1;
      p.relations.push_back({Term{1, m}});
    }
    if (i > 0) p.relations.push_back({Term{1, unit_exps(n, i, 2)}, Term{1, unit_exps(n, 0, 2)}});
    p.relations.push_back({Term{1, unit_exps(n, i, 3)}});
  }
  p.top_degree = 2;
  GradedAlgebra a = build_algebra(p);
  expect_dims(a, {1, n, 1}, "non-orientable surface");
  return a;
}

GradedAlgebra classic_ring(ClassicKind kind, int n, FieldTag field) {
  switch (kind) {
    case ClassicKind::Sphere:
      return sphere_ring(n, field);
    case ClassicKind::RP:
      require_gf2(field, "RP^n");
      return rp_ring(n);
    case ClassicKind::CP:
      return cp_ring(n, field);
    case ClassicKind::Torus:
      return torus_ring(n, field);
    case ClassicKind::SurfaceOrientable:
      return surface_orientable_ring(n, field);
    case ClassicKind::SurfaceNonorientable:
      require_gf2(field, "N_h");
      return surface_nonorientable_ring(n);
  }
  throw Error(Errc::Internal, "unknown classic ring");
}

GradedAlgebra grassmann_ring(int d, int n, FieldTag field) {
  if (d < 1 || d >= n) throw Error(Errc::BadParameter, "Gr(d,n) needs 1 <= d < n");
  const std::size_t k = static_cast<std::size_t>(d);
  Presentation p;
  p.field = field;
  for (int i = 1; i <= d; ++i) p.generators.push_back({"c" + std::to_string(i), 2 * i, false});

  // h_j = -(c_1 h_{j-1} + ... + c_d h_{j-d}), the degree-2j part of (1+c_1+...+c_d)^{-1}.
  std::vector<PolyMap> h(static_cast<std::size_t>(n) + 1);
  h[0][Monomial(k, 0)] = 1;
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= std::min(j, d); ++i) {
      for (const auto& [m, c] : h[j - i]) {
        Monomial t = m;
        ++t[i - 1];
        h[j][t] = to_field(field, h[j][t] - c);
      }
    }
    std::erase_if(h[j], [](const auto& e) { return is_zero(e.second); });
  }
  for (int j = n - d + 1; j <= n; ++j) p.relations.push_back(to_poly(h[j]));
  p.top_degree = 2 * d * (n - d);
  GradedAlgebra a = build_algebra(p);

  if (a.dim() != binomial(n, d) || a.top_degree() != 2 * d * (n - d))
    throw Error(Errc::Internal, "Grassmannian ring has the wrong dimension");
  if (field == FieldTag::Rational) {
    Element c1 = a.generator(0);
    Element power = a.one();
    for (int i = 0; i < d * (n - d); ++i) power = power * c1;
    if (power.is_zero()) throw Error(Errc::Internal, "top power of c1 vanishes over Q");
  }
  return a;
}

GradedAlgebra gpps_ring(const GppsSpec& spec) {
  const GradedAlgebra& base = spec.base;
  if (base.field() != FieldTag::GF2) throw Error(Errc::FieldMismatch, "generalized projective product rings are mod 2");
  if (!base.owns(spec.alpha)) throw Error(Errc::BadAlpha, "alpha does not belong to the base ring");
  if (spec.alpha.is_zero() || spec.alpha.degree() != 1)
    throw Error(Errc::BadAlpha, "alpha must be a nonzero homogeneous class of degree 1");

  std::vector<GppsFactor> factors = spec.factors;
  for (const auto& f : factors)
    if (f.n < 1 || f.p < 0 || f.p > f.n)
      throw Error(Errc::BadParameter, "each factor needs n >= 1 and 0 <= p <= n");
  for (const auto& f : factors) {
    if (f.p != 0) continue;
    Element a = spec.alpha;
    for (int i = 0; i < f.n && !a.is_zero(); ++i) a = a * spec.alpha;
    if (!a.is_zero()) throw Error(Errc::BadParameter, "a factor with p = 0 needs alpha^(n+1) = 0 in the base");
  }
  std::sort(factors.begin(), factors.end(),
            [](const GppsFactor& x, const GppsFactor& y) { return x.n != y.n ? x.n < y.n : x.p < y.p; });

  const std::size_t r = factors.size();
  const Presentation& bp = base.presentation();
  const std::size_t nb = bp.generators.size();
  const std::size_t n = r + nb;

  Presentation p;
  p.field = FieldTag::GF2;
  std::vector<std::string> fibre_names;
  for (std::size_t j = 0; j < r; ++j) {
    std::string name = spec.fibre_prefix + std::to_string(j + 1);
    for (const auto& g : bp.generators)
      if (g.name == name) throw Error(Errc::BadParameter, "fibre generator name clashes with the base");
    fibre_names.push_back(name);
    p.generators.push_back({name, factors[j].n, false});
  }
  for (const auto& g : bp.generators) p.generators.push_back(g);

  auto lift = [&](const Polynomial& poly) {
    Polynomial out;
    for (const auto& t : poly) {
      Monomial m(n, 0);
      std::copy(t.exponents.begin(), t.exponents.end(), m.begin() + static_cast<std::ptrdiff_t>(r));
      out.push_back(Term{t.coeff, std::move(m)});
    }
    return out;
  };
  auto times_beta = [&](Polynomial poly, std::size_t j) {
    for (auto& t : poly) ++t.exponents[j];
    return poly;
  };

  for (const auto& rel : bp.relations) p.relations.push_back(lift(rel));
  for (const auto& [name, poly] : bp.steenrod) p.steenrod[name] = lift(poly);

  bool extension = false;
  int top = base.top_degree();
  for (std::size_t j = 0; j < r; ++j) {
    const auto [nj, pj] = factors[j];
    top += nj;
    if (pj == 0) extension = true;
    Polynomial rel{Term{1, unit_exps(n, j, 2)}};
    if (binomial(nj + 1 - pj, nj) % 2 == 1) {
      Element power = base.one();
      for (int i = 0; i < nj; ++i) power = power * spec.alpha;
      for (auto& t : times_beta(lift(base.to_polynomial(power)), j)) rel.push_back(Term{-t.coeff, t.exponents});
    }
    p.relations.push_back(std::move(rel));

    Element total = base.one();
    const Element one_plus = base.one() + spec.alpha;
    for (int i = 0; i < nj + 1 - pj; ++i) total = total * one_plus;
    p.steenrod[fibre_names[j]] = times_beta(lift(base.to_polynomial(total)), j);
  }
  p.top_degree = top;

  GradedAlgebra a = build_algebra(p);
  std::vector<std::size_t> expected = degree_dims(base);
  for (const auto& f : factors) expected = multiply_series(expected, sphere_series(f.n));
  expect_dims(a, expected, "generalized projective product");
  if (extension) a = a.with_note("extension: p_j = 0 factors use the uniform binomial square rule");
  return a;
}

GradedAlgebra pps_ring(std::vector<int> ns) {
  if (ns.empty()) throw Error(Errc::BadParameter, "P(n_1,...,n_r) needs r >= 1");
  std::sort(ns.begin(), ns.end());
  if (ns.front() < 1) throw Error(Errc::BadParameter, "sphere dimensions must be at least 1");
  GradedAlgebra base = rp_ring(ns.front());
  std::vector<GppsFactor> factors;
  for (std::size_t j = 1; j < ns.size(); ++j) factors.push_back({ns[j], 0});
  Element alpha = base.generator(0);
  return gpps_ring(GppsSpec{base, alpha, factors, "b"});
}

GradedAlgebra klein_ring(int n) {
  if (n < 2) throw Error(Errc::BadParameter, "K_n needs n >= 2");
  GradedAlgebra base = rp_ring(1);
  Element alpha = base.generator(0);
  return gpps_ring(GppsSpec{base, alpha, std::vector<GppsFactor>(static_cast<std::size_t>(n) - 1, {1, 1}), "b"});
}

GradedAlgebra xg_ring(int g, int n, const std::optional<Polynomial>& w1) {
  if (g < 0 || n < 2) throw Error(Errc::BadParameter, "X_g^{n-2} needs g >= 0 and n >= 2");
  GradedAlgebra base = surface_nonorientable_ring(g + 1);
  Element alpha = base.zero();
  if (w1) {
    try {
      alpha = base.element(*w1);
    } catch (const Error& e) {
      throw Error(Errc::BadW1, std::string("w1 override is malformed: ") + e.what());
    }
    if (alpha.is_zero() || alpha.degree() != 1) throw Error(Errc::BadW1, "w1 must be homogeneous of degree 1");
  } else {
    for (std::size_t i = 0; i < base.num_generators(); ++i) alpha = alpha + base.generator(i);
  }
  if (n == 2) return base;
  return gpps_ring(GppsSpec{base, alpha, std::vector<GppsFactor>(static_cast<std::size_t>(n) - 2, {1, 1}), "y"});
}

GradedAlgebra product_model_ring(const GradedAlgebra& base, const GradedAlgebra& fibre) { return tensor(base, fibre); }

GradedAlgebra dold_grassmann_ring(int d, int n, std::vector<int> ns) {
  return product_model_ring(pps_ring(std::move(ns)), grassmann_ring(d, n, FieldTag::GF2));
}

}  // namespace lstc
