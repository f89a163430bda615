#include "lstc/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lstc/error.hpp"

namespace lstc {
namespace detail {

enum class Reducer { Groebner, Exterior, Tensor };

struct Poly {
  // Terms in decreasing monomial order; the leading coefficient is 1.
  std::vector<std::pair<Monomial, Rational>> terms;
  const Monomial& lead() const { return terms.front().first; }
};

struct AlgebraData {
  Presentation presentation;
  FieldTag field = FieldTag::GF2;
  std::vector<int> weights;
  std::vector<char> odd;  // anticommuting generators (odd degree over Q)
  Reducer reducer = Reducer::Groebner;

  std::vector<Poly> groebner;
  std::map<Monomial, SparseVector> exterior_rules;

  std::shared_ptr<const AlgebraData> left, right;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_of;
  std::vector<std::uint32_t> index_of_pair;

  std::vector<Monomial> basis;
  std::vector<int> basis_degree;
  std::map<Monomial, std::uint32_t> index;
  std::vector<std::uint32_t> degree_start;
  int top = 0;

  std::vector<SparseVector> table;
  std::vector<std::optional<SparseVector>> sq;
  std::vector<std::string> notes;

  std::size_t dim() const { return basis.size(); }
};

}  // namespace detail

namespace {

using detail::AlgebraData;
using detail::Poly;
using detail::Reducer;

constexpr std::size_t kTableLimit = 256;

int weighted_degree(const Monomial& m, const std::vector<int>& w) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * w[i];
  return d;
}

// Weighted degree first, then graded reverse lexicographic.
int compare_monomials(const Monomial& a, const Monomial& b, const std::vector<int>& w) {
  const int da = weighted_degree(a, w);
  const int db = weighted_degree(b, w);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

struct Descending {
  const std::vector<int>* weights;
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare_monomials(a, b, *weights) > 0;
  }
};

using Work = std::map<Monomial, Rational, Descending>;

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial mono_add(const Monomial& a, const Monomial& b) {
  Monomial out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Monomial mono_sub(const Monomial& a, const Monomial& b) {
  Monomial out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

// Sign of x^u * x^v against x^{u+v}; 0 when an anticommuting generator repeats.
int koszul_sign(const Monomial& u, const Monomial& v, const std::vector<char>& odd) {
  int swaps = 0;
  int odd_in_u_above = 0;
  for (std::size_t i = u.size(); i-- > 0;) {
    if (!odd[i]) continue;
    if (u[i] > 0 && v[i] > 0) return 0;
    if (v[i] > 0) swaps += odd_in_u_above;
    if (u[i] > 0) ++odd_in_u_above;
  }
  return swaps % 2 == 0 ? 1 : -1;
}

bool exterior_overflow(const Monomial& m, const std::vector<char>& odd) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (odd[i] && m[i] > 1) return true;
  return false;
}

void add_term(FieldTag field, Work& work, const Monomial& m, const Rational& c) {
  if (is_zero(c)) return;
  auto [it, inserted] = work.try_emplace(m, 0);
  it->second = to_field(field, it->second + c);
  if (is_zero(it->second)) work.erase(it);
}

const Poly* find_reducer(const std::vector<Poly>& gb, const Monomial& m) {
  for (const auto& g : gb)
    if (divides(g.lead(), m)) return &g;
  return nullptr;
}

// Full reduction; multipliers only involve commuting generators, so no signs arise.
Work reduce_full(FieldTag field, const std::vector<Poly>& gb, Work work) {
  Work rem(work.key_comp());
  while (!work.empty()) {
    auto it = work.begin();
    Monomial m = it->first;
    Rational c = it->second;
    work.erase(it);
    const Poly* g = find_reducer(gb, m);
    if (g == nullptr) {
      rem.emplace(std::move(m), std::move(c));
      continue;
    }
    const Monomial q = mono_sub(m, g->lead());
    for (std::size_t k = 1; k < g->terms.size(); ++k)
      add_term(field, work, mono_add(q, g->terms[k].first), -c * g->terms[k].second);
  }
  return rem;
}

Poly make_monic(FieldTag field, const Work& w) {
  Poly p;
  const Rational inv = 1 / w.begin()->second;
  for (const auto& [m, c] : w) p.terms.emplace_back(m, to_field(field, c * inv));
  return p;
}

int max_weight(const std::vector<int>& w) {
  int m = 1;
  for (int x : w) m = std::max(m, x);
  return m;
}

SparseVector sorted_vector(std::map<std::uint32_t, Rational> acc) {
  SparseVector out;
  out.reserve(acc.size());
  for (auto& [i, c] : acc)
    if (!is_zero(c)) out.emplace_back(i, std::move(c));
  return out;
}

SparseVector normal_form(const AlgebraData& a, const Monomial& m);

SparseVector coords_of(const AlgebraData& a, const Work& rem) {
  std::map<std::uint32_t, Rational> acc;
  for (const auto& [m, c] : rem) {
    auto it = a.index.find(m);
    if (it == a.index.end()) throw Error(Errc::Internal, "reduction left a non-standard monomial");
    acc[it->second] += c;
  }
  return sorted_vector(std::move(acc));
}

SparseVector normal_form(const AlgebraData& a, const Monomial& m) {
  if (auto it = a.index.find(m); it != a.index.end()) return {{it->second, Rational(1)}};
  switch (a.reducer) {
    case Reducer::Groebner: {
      if (exterior_overflow(m, a.odd)) return {};
      Work w(Descending{&a.weights});
      w.emplace(m, 1);
      return coords_of(a, reduce_full(a.field, a.groebner, std::move(w)));
    }
    case Reducer::Exterior: {
      if (exterior_overflow(m, a.odd)) return {};
      auto it = a.exterior_rules.find(m);
      if (it == a.exterior_rules.end()) return {};
      return it->second;
    }
    case Reducer::Tensor: {
      const std::size_t nl = a.left->weights.size();
      Monomial ml(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(nl));
      Monomial mr(m.begin() + static_cast<std::ptrdiff_t>(nl), m.end());
      const SparseVector l = normal_form(*a.left, ml);
      if (l.empty()) return {};
      const SparseVector r = normal_form(*a.right, mr);
      const std::size_t dr = a.right->dim();
      std::map<std::uint32_t, Rational> acc;
      for (const auto& [i, ci] : l)
        for (const auto& [j, cj] : r) acc[a.index_of_pair[i * dr + j]] += ci * cj;
      return sorted_vector(std::move(acc));
    }
  }
  return {};
}

SparseVector multiply_basis_impl(const AlgebraData& a, std::uint32_t i, std::uint32_t j) {
  const std::size_t n = a.dim();
  if (i >= n || j >= n) throw Error(Errc::Internal, "basis index out of range");
  if (!a.table.empty()) return a.table[static_cast<std::size_t>(i) * n + j];
  if (a.reducer == Reducer::Tensor) {
    const auto [l1, r1] = a.pair_of[i];
    const auto [l2, r2] = a.pair_of[j];
    const SparseVector l = multiply_basis_impl(*a.left, l1, l2);
    if (l.empty()) return {};
    const SparseVector r = multiply_basis_impl(*a.right, r1, r2);
    if (r.empty()) return {};
    int sign = 1;
    if (a.field == FieldTag::Rational && (a.right->basis_degree[r1] * a.left->basis_degree[l2]) % 2 != 0) sign = -1;
    const std::size_t dr = a.right->dim();
    std::map<std::uint32_t, Rational> acc;
    for (const auto& [p, cp] : l)
      for (const auto& [q, cq] : r) acc[a.index_of_pair[p * dr + q]] += sign * cp * cq;
    return sorted_vector(std::move(acc));
  }
  const int s = koszul_sign(a.basis[i], a.basis[j], a.odd);
  if (s == 0) return {};
  SparseVector v = normal_form(a, mono_add(a.basis[i], a.basis[j]));
  if (s < 0)
    for (auto& [k, c] : v) c = -c;
  return v;
}

SparseVector multiply_vectors(const AlgebraData& a, const SparseVector& x, const SparseVector& y) {
  std::map<std::uint32_t, Rational> acc;
  for (const auto& [i, ci] : x)
    for (const auto& [j, cj] : y)
      for (const auto& [k, ck] : multiply_basis_impl(a, i, j)) acc[k] += ci * cj * ck;
  for (auto& [k, c] : acc) c = to_field(a.field, c);
  return sorted_vector(std::move(acc));
}

SparseVector add_vectors(FieldTag field, SparseVector x, const SparseVector& y, const Rational& scale) {
  axpy(field, x, scale, y);
  return x;
}

SparseVector polynomial_coords(const AlgebraData& a, const Polynomial& p) {
  SparseVector out;
  for (const auto& t : p) {
    if (t.exponents.size() != a.weights.size())
      throw Error(Errc::BadParameter, "exponent vector has the wrong length");
    for (int e : t.exponents)
      if (e < 0) throw Error(Errc::BadParameter, "negative exponent");
    const Rational c = to_field(a.field, t.coeff);
    if (is_zero(c)) continue;
    axpy(a.field, out, c, normal_form(a, t.exponents));
  }
  return out;
}

void finalize(AlgebraData& a) {
  a.index.clear();
  a.basis_degree.clear();
  for (std::uint32_t i = 0; i < a.basis.size(); ++i) {
    a.index.emplace(a.basis[i], i);
    a.basis_degree.push_back(weighted_degree(a.basis[i], a.weights));
  }
  a.top = a.basis_degree.empty() ? 0 : a.basis_degree.back();
  a.degree_start.assign(static_cast<std::size_t>(a.top) + 2, 0);
  for (int d = 0; d <= a.top + 1; ++d) {
    a.degree_start[d] = static_cast<std::uint32_t>(
        std::lower_bound(a.basis_degree.begin(), a.basis_degree.end(), d) - a.basis_degree.begin());
  }
}

void fill_table(AlgebraData& a) {
  const std::size_t n = a.dim();
  if (n > kTableLimit || a.reducer == Reducer::Tensor) return;
  std::vector<SparseVector> table(n * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) table[i * n + j] = multiply_basis_impl(a, i, j);
  a.table = std::move(table);
}

void attach_steenrod(AlgebraData& a) {
  a.sq.assign(a.weights.size(), std::nullopt);
  for (const auto& [name, poly] : a.presentation.steenrod) {
    std::size_t i = 0;
    while (i < a.presentation.generators.size() && a.presentation.generators[i].name != name) ++i;
    if (i == a.presentation.generators.size())
      throw Error(Errc::BadParameter, "Steenrod data for unknown generator '" + name + "'");
    a.sq[i] = polynomial_coords(a, poly);
  }
}

void sort_basis(std::vector<Monomial>& basis, const std::vector<int>& w) {
  std::sort(basis.begin(), basis.end(), [&](const Monomial& x, const Monomial& y) {
    const int dx = weighted_degree(x, w);
    const int dy = weighted_degree(y, w);
    if (dx != dy) return dx < dy;
    return compare_monomials(x, y, w) > 0;
  });
}

struct Relation {
  Work terms;
  int degree;
};

void build_groebner(AlgebraData& a, std::vector<Relation> relations, int cap) {
  const std::size_t n = a.weights.size();
  const int maxw = max_weight(a.weights);
  std::map<int, std::vector<Work>> rel_by_degree;
  for (auto& r : relations) rel_by_degree[r.degree].push_back(std::move(r.terms));

  std::vector<Poly> gb;
  std::multimap<int, std::pair<std::size_t, std::size_t>> pairs;
  auto add_to_basis = [&](const Work& w) {
    gb.push_back(make_monic(a.field, w));
    const std::size_t h = gb.size() - 1;
    for (std::size_t g = 0; g < h; ++g) {
      if (coprime(gb[g].lead(), gb[h].lead())) continue;
      pairs.emplace(weighted_degree(mono_lcm(gb[g].lead(), gb[h].lead()), a.weights), std::make_pair(g, h));
    }
  };

  std::vector<std::vector<Monomial>> standard(1, std::vector<Monomial>{Monomial(n, 0)});
  int empty_run = 0;
  for (int d = 1;; ++d) {
    if (auto it = rel_by_degree.find(d); it != rel_by_degree.end()) {
      for (auto& r : it->second) {
        Work rem = reduce_full(a.field, gb, r);
        if (!rem.empty()) add_to_basis(rem);
      }
    }
    while (!pairs.empty() && pairs.begin()->first == d) {
      const auto [g, h] = pairs.begin()->second;
      pairs.erase(pairs.begin());
      const Monomial l = mono_lcm(gb[g].lead(), gb[h].lead());
      Work s(Descending{&a.weights});
      const Monomial qg = mono_sub(l, gb[g].lead());
      const Monomial qh = mono_sub(l, gb[h].lead());
      for (std::size_t k = 1; k < gb[g].terms.size(); ++k)
        add_term(a.field, s, mono_add(qg, gb[g].terms[k].first), gb[g].terms[k].second);
      for (std::size_t k = 1; k < gb[h].terms.size(); ++k)
        add_term(a.field, s, mono_add(qh, gb[h].terms[k].first), -gb[h].terms[k].second);
      Work rem = reduce_full(a.field, gb, std::move(s));
      if (!rem.empty()) add_to_basis(rem);
    }

    std::set<Monomial> found;
    for (std::size_t i = 0; i < n; ++i) {
      const int prev = d - a.weights[i];
      if (prev < 0) continue;
      for (const auto& m : standard[prev]) {
        Monomial next = m;
        ++next[i];
        if (a.odd[i] && next[i] > 1) continue;
        if (find_reducer(gb, next) == nullptr) found.insert(std::move(next));
      }
    }
    standard.emplace_back(found.begin(), found.end());
    if (!found.empty()) {
      if (d > cap)
        throw Error(Errc::InfiniteDimensional,
                    "normal-form monomials persist past degree " + std::to_string(cap));
      empty_run = 0;
    } else if (++empty_run >= maxw) {
      break;
    }
  }

  // Interreduce to the reduced basis.
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < gb.size() && !redundant; ++j) {
      if (i == j || !divides(gb[j].lead(), gb[i].lead())) continue;
      redundant = gb[j].lead() != gb[i].lead() || j < i;
    }
    if (!redundant) reduced.push_back(gb[i]);
  }
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < reduced.size(); ++j)
      if (j != i) others.push_back(reduced[j]);
    Work tail(Descending{&a.weights});
    for (std::size_t k = 1; k < reduced[i].terms.size(); ++k)
      tail.emplace(reduced[i].terms[k].first, reduced[i].terms[k].second);
    Work rem = reduce_full(a.field, others, std::move(tail));
    Poly p;
    p.terms.push_back(reduced[i].terms.front());
    for (auto& [m, c] : rem) p.terms.emplace_back(m, c);
    reduced[i] = std::move(p);
  }
  a.groebner = std::move(reduced);

  for (auto& level : standard)
    for (auto& m : level) a.basis.push_back(std::move(m));
  sort_basis(a.basis, a.weights);
}

void build_exterior(AlgebraData& a, const std::vector<Relation>& relations) {
  const std::size_t n = a.weights.size();
  if (n > 24) throw Error(Errc::UnsupportedRationalPresentation, "too many exterior generators");
  std::map<int, std::vector<Monomial>> by_degree;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Monomial m(n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<int>((mask >> i) & 1U);
    by_degree[weighted_degree(m, a.weights)].push_back(std::move(m));
  }
  for (auto& [d, monos] : by_degree) {
    std::sort(monos.begin(), monos.end(),
              [&](const Monomial& x, const Monomial& y) { return compare_monomials(x, y, a.weights) > 0; });
    std::map<Monomial, std::uint32_t> column;
    for (std::uint32_t i = 0; i < monos.size(); ++i) column.emplace(monos[i], i);
    Subspace ideal(a.field, monos.size());
    for (const auto& r : relations) {
      const int e = d - r.degree;
      if (e < 0) continue;
      auto mult = by_degree.find(e);
      if (mult == by_degree.end()) continue;
      for (const auto& q : mult->second) {
        std::map<std::uint32_t, Rational> acc;
        for (const auto& [t, c] : r.terms) {
          const int s = koszul_sign(q, t, a.odd);
          if (s == 0) continue;
          acc[column.at(mono_add(q, t))] += s * c;
        }
        ideal.insert(sorted_vector(std::move(acc)));
      }
    }
    std::vector<char> pivot(monos.size(), 0);
    for (const auto& row : ideal.basis()) {
      const std::uint32_t p = row.front().first;
      pivot[p] = 1;
      SparseVector rule;
      for (std::size_t k = 1; k < row.size(); ++k) rule.emplace_back(row[k].first, -row[k].second);
      // Column indices are rewritten to basis indices once the basis is known.
      a.exterior_rules.emplace(monos[p], std::move(rule));
    }
    for (std::uint32_t i = 0; i < monos.size(); ++i)
      if (!pivot[i]) a.basis.push_back(monos[i]);
  }
  sort_basis(a.basis, a.weights);
  std::map<Monomial, std::uint32_t> index;
  for (std::uint32_t i = 0; i < a.basis.size(); ++i) index.emplace(a.basis[i], i);
  for (auto& [m, rule] : a.exterior_rules) {
    const int d = weighted_degree(m, a.weights);
    const auto& monos = by_degree.at(d);
    std::map<std::uint32_t, Rational> acc;
    for (const auto& [col, c] : rule) acc[index.at(monos[col])] += c;
    rule = sorted_vector(std::move(acc));
  }
}

}  // namespace

GradedAlgebra build_algebra(const Presentation& p, const BuildOptions& options) {
  auto data = std::make_shared<AlgebraData>();
  AlgebraData& a = *data;
  a.presentation = p;
  a.field = p.field;
  const std::size_t n = p.generators.size();

  std::set<std::string> names;
  for (const auto& g : p.generators) {
    if (g.degree < 1) throw Error(Errc::BadParameter, "generator '" + g.name + "' must have positive degree");
    if (g.name.empty() || !names.insert(g.name).second)
      throw Error(Errc::BadParameter, "generator names must be non-empty and unique");
    a.weights.push_back(g.degree);
    a.odd.push_back(p.field == FieldTag::Rational && g.degree % 2 != 0);
  }

  std::vector<Relation> relations;
  bool touches_odd = false;
  for (const auto& rel : p.relations) {
    Relation r{Work(Descending{&a.weights}), -1};
    for (const auto& t : rel) {
      if (t.exponents.size() != n) throw Error(Errc::BadParameter, "relation exponent vector has the wrong length");
      for (int e : t.exponents)
        if (e < 0) throw Error(Errc::BadParameter, "negative exponent in relation");
      if (is_zero(t.coeff)) continue;
      const int d = weighted_degree(t.exponents, a.weights);
      if (r.degree >= 0 && d != r.degree) throw Error(Errc::NonHomogeneousRelation, "relation mixes degrees");
      r.degree = d;
      if (exterior_overflow(t.exponents, a.odd)) continue;
      for (std::size_t i = 0; i < n; ++i)
        if (a.odd[i] && t.exponents[i] > 0) touches_odd = true;
      add_term(a.field, r.terms, t.exponents, t.coeff);
    }
    if (!r.terms.empty()) relations.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.generators[i].square_zero || a.odd[i]) continue;
    Relation r{Work(Descending{&a.weights}), 2 * a.weights[i]};
    Monomial m(n, 0);
    m[i] = 2;
    r.terms.emplace(m, 1);
    relations.push_back(std::move(r));
  }

  if (touches_odd) {
    const bool all_odd = std::all_of(a.odd.begin(), a.odd.end(), [](char c) { return c != 0; });
    if (!all_odd)
      throw Error(Errc::UnsupportedRationalPresentation,
                  "rational relations may involve odd generators only when every generator is odd");
    a.reducer = Reducer::Exterior;
    build_exterior(a, relations);
  } else {
    int top = 0;
    if (p.top_degree) {
      top = *p.top_degree;
    } else {
      int max_rel = 0;
      for (const auto& r : relations) max_rel = std::max(max_rel, r.degree);
      for (std::size_t i = 0; i < n; ++i)
        top += (p.generators[i].square_zero || a.odd[i]) ? a.weights[i] : max_rel;
    }
    const int maxw = max_weight(a.weights);
    const int cap = options.degree_cap ? *options.degree_cap : std::max(4 * top, top + 2 * maxw);
    a.reducer = Reducer::Groebner;
    build_groebner(a, std::move(relations), cap);
  }

  finalize(a);
  fill_table(a);
  attach_steenrod(a);
  return GradedAlgebra(std::move(data));
}

GradedAlgebra unit_algebra(FieldTag field) {
  Presentation p;
  p.field = field;
  p.top_degree = 0;
  return build_algebra(p);
}

GradedAlgebra tensor(const GradedAlgebra& a, const GradedAlgebra& b) {
  const AlgebraData& A = *a.data_;
  const AlgebraData& B = *b.data_;
  if (A.field != B.field) throw Error(Errc::FieldMismatch, "tensor factors live over different fields");

  auto data = std::make_shared<AlgebraData>();
  AlgebraData& t = *data;
  t.field = A.field;
  t.reducer = Reducer::Tensor;
  t.left = a.data_;
  t.right = b.data_;

  const std::size_t na = A.weights.size();
  const std::size_t nb = B.weights.size();
  Presentation& p = t.presentation;
  p.field = A.field;
  std::set<std::string> names;
  for (const auto& g : A.presentation.generators) {
    p.generators.push_back(g);
    names.insert(g.name);
  }
  std::map<std::string, std::string> rename;
  for (const auto& g : B.presentation.generators) {
    GeneratorSpec h = g;
    while (names.count(h.name)) h.name += "'";
    names.insert(h.name);
    rename[g.name] = h.name;
    p.generators.push_back(h);
  }
  auto pad = [&](const Polynomial& poly, bool on_left) {
    Polynomial out;
    for (const auto& term : poly) {
      Monomial m(na + nb, 0);
      std::copy(term.exponents.begin(), term.exponents.end(),
                m.begin() + static_cast<std::ptrdiff_t>(on_left ? 0 : na));
      out.push_back(Term{term.coeff, std::move(m)});
    }
    return out;
  };
  for (const auto& r : A.presentation.relations) p.relations.push_back(pad(r, true));
  for (const auto& r : B.presentation.relations) p.relations.push_back(pad(r, false));
  for (const auto& [name, poly] : A.presentation.steenrod) p.steenrod[name] = pad(poly, true);
  for (const auto& [name, poly] : B.presentation.steenrod) p.steenrod[rename.at(name)] = pad(poly, false);
  p.top_degree = A.top + B.top;

  t.weights = A.weights;
  t.weights.insert(t.weights.end(), B.weights.begin(), B.weights.end());
  t.odd = A.odd;
  t.odd.insert(t.odd.end(), B.odd.begin(), B.odd.end());

  const std::size_t da = A.dim();
  const std::size_t db = B.dim();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(da * db);
  for (std::uint32_t i = 0; i < da; ++i)
    for (std::uint32_t j = 0; j < db; ++j) pairs.emplace_back(i, j);
  auto concat = [&](std::pair<std::uint32_t, std::uint32_t> ij) {
    Monomial m = A.basis[ij.first];
    m.insert(m.end(), B.basis[ij.second].begin(), B.basis[ij.second].end());
    return m;
  };
  std::vector<Monomial> monos;
  monos.reserve(pairs.size());
  for (const auto& ij : pairs) monos.push_back(concat(ij));
  std::vector<std::uint32_t> order(pairs.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    const int dx = weighted_degree(monos[x], t.weights);
    const int dy = weighted_degree(monos[y], t.weights);
    if (dx != dy) return dx < dy;
    return compare_monomials(monos[x], monos[y], t.weights) > 0;
  });
  t.index_of_pair.assign(da * db, 0);
  for (std::uint32_t k = 0; k < order.size(); ++k) {
    const auto ij = pairs[order[k]];
    t.basis.push_back(std::move(monos[order[k]]));
    t.pair_of.push_back(ij);
    t.index_of_pair[ij.first * db + ij.second] = k;
  }
  finalize(t);

  t.sq.assign(na + nb, std::nullopt);
  auto lift = [&](const SparseVector& v, bool on_left) {
    std::map<std::uint32_t, Rational> acc;
    for (const auto& [i, c] : v) acc[on_left ? t.index_of_pair[i * db] : t.index_of_pair[i]] += c;
    return sorted_vector(std::move(acc));
  };
  for (std::size_t i = 0; i < na; ++i)
    if (A.sq.size() > i && A.sq[i]) t.sq[i] = lift(*A.sq[i], true);
  for (std::size_t i = 0; i < nb; ++i)
    if (B.sq.size() > i && B.sq[i]) t.sq[na + i] = lift(*B.sq[i], false);

  t.notes = A.notes;
  for (const auto& note : B.notes)
    if (std::find(t.notes.begin(), t.notes.end(), note) == t.notes.end()) t.notes.push_back(note);
  return GradedAlgebra(std::move(data));
}

// ---- GradedAlgebra accessors ----

FieldTag GradedAlgebra::field() const { return data_->field; }
const Presentation& GradedAlgebra::presentation() const { return data_->presentation; }
const std::vector<GeneratorSpec>& GradedAlgebra::generators() const { return data_->presentation.generators; }
std::size_t GradedAlgebra::dim() const { return data_->dim(); }
int GradedAlgebra::top_degree() const { return data_->top; }

int GradedAlgebra::degree(std::uint32_t i) const {
  if (i >= dim()) throw Error(Errc::Internal, "basis index out of range");
  return data_->basis_degree[i];
}

const Monomial& GradedAlgebra::basis_monomial(std::uint32_t i) const {
  if (i >= dim()) throw Error(Errc::Internal, "basis index out of range");
  return data_->basis[i];
}

std::pair<std::uint32_t, std::uint32_t> GradedAlgebra::degree_range(int d) const {
  if (d < 0 || d > data_->top) return {0, 0};
  return {data_->degree_start[d], data_->degree_start[d + 1]};
}

std::optional<std::uint32_t> GradedAlgebra::index_of(const Monomial& m) const {
  auto it = data_->index.find(m);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

Element GradedAlgebra::zero() const { return Element(data_, {}); }
Element GradedAlgebra::one() const { return Element(data_, {{0, Rational(1)}}); }

Element GradedAlgebra::generator(std::size_t i) const {
  if (i >= num_generators()) throw Error(Errc::BadParameter, "generator index out of range");
  Monomial m(num_generators(), 0);
  m[i] = 1;
  return Element(data_, normal_form(*data_, m));
}

Element GradedAlgebra::generator(const std::string& name) const {
  const auto& gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return generator(i);
  throw Error(Errc::BadParameter, "no generator named '" + name + "'");
}

Element GradedAlgebra::basis_element(std::uint32_t i) const {
  if (i >= dim()) throw Error(Errc::Internal, "basis index out of range");
  return Element(data_, {{i, Rational(1)}});
}

Element GradedAlgebra::element(const SparseVector& terms) const {
  std::map<std::uint32_t, Rational> acc;
  for (const auto& [i, c] : terms) {
    if (i >= dim()) throw Error(Errc::BadParameter, "basis index out of range");
    acc[i] += c;
  }
  for (auto& [i, c] : acc) c = to_field(field(), c);
  return Element(data_, sorted_vector(std::move(acc)));
}

Element GradedAlgebra::element(const Polynomial& p) const { return Element(data_, polynomial_coords(*data_, p)); }

Polynomial GradedAlgebra::to_polynomial(const Element& x) const {
  if (!owns(x)) throw Error(Errc::MixedAmbient, "element belongs to another algebra");
  Polynomial out;
  for (const auto& [i, c] : x.terms()) out.push_back(Term{c, data_->basis[i]});
  return out;
}

SparseVector GradedAlgebra::multiply_basis(std::uint32_t i, std::uint32_t j) const {
  return multiply_basis_impl(*data_, i, j);
}

bool GradedAlgebra::owns(const Element& x) const { return x.ambient_ == data_; }

bool GradedAlgebra::has_steenrod() const {
  return std::all_of(data_->sq.begin(), data_->sq.end(), [](const auto& s) { return s.has_value(); });
}

std::optional<Element> GradedAlgebra::steenrod_of_generator(std::size_t i) const {
  if (i >= data_->sq.size() || !data_->sq[i]) return std::nullopt;
  return Element(data_, *data_->sq[i]);
}

std::string GradedAlgebra::render_monomial(const Monomial& m) const {
  std::string out;
  const auto& gens = generators();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += gens[i].name;
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string GradedAlgebra::render(const Element& x) const {
  if (!owns(x)) throw Error(Errc::MixedAmbient, "element belongs to another algebra");
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [i, c] : x.terms()) {
    const std::string mono = render_monomial(data_->basis[i]);
    const bool negative = sgn(c) < 0;
    const Rational mag = negative ? Rational(-c) : c;
    std::string piece;
    if (mag == 1) {
      piece = mono;
    } else {
      piece = to_string(mag);
      if (mono != "1") piece += "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + piece : piece;
    } else {
      out += negative ? " - " : " + ";
      out += piece;
    }
  }
  return out;
}

const std::vector<std::string>& GradedAlgebra::notes() const { return data_->notes; }

GradedAlgebra GradedAlgebra::with_note(std::string note) const {
  auto copy = std::make_shared<AlgebraData>(*data_);
  copy->notes.push_back(std::move(note));
  return GradedAlgebra(std::move(copy));
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> GradedAlgebra::tensor_pair(std::uint32_t i) const {
  if (data_->reducer != Reducer::Tensor || i >= dim()) return std::nullopt;
  return data_->pair_of[i];
}

std::optional<std::uint32_t> GradedAlgebra::tensor_index(std::uint32_t l, std::uint32_t r) const {
  if (data_->reducer != Reducer::Tensor) return std::nullopt;
  if (l >= data_->left->dim() || r >= data_->right->dim()) return std::nullopt;
  return data_->index_of_pair[l * data_->right->dim() + r];
}

// ---- Element ----

namespace {

void check_same(const std::shared_ptr<const AlgebraData>& a, const std::shared_ptr<const AlgebraData>& b) {
  if (a != b || !a) throw Error(Errc::MixedAmbient, "elements belong to different algebras");
}

}  // namespace

std::optional<int> Element::degree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return ambient_->basis_degree[terms_.front().first];
}

bool Element::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = ambient_->basis_degree[terms_.front().first];
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return ambient_->basis_degree[t.first] == d; });
}

Element Element::component(int d) const {
  SparseVector out;
  for (const auto& t : terms_)
    if (ambient_->basis_degree[t.first] == d) out.push_back(t);
  return Element(ambient_, std::move(out));
}

Rational Element::coefficient(std::uint32_t i) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                             [](const auto& t, std::uint32_t k) { return t.first < k; });
  if (it != terms_.end() && it->first == i) return it->second;
  return 0;
}

Element Element::operator+(const Element& other) const {
  check_same(ambient_, other.ambient_);
  return Element(ambient_, add_vectors(ambient_->field, terms_, other.terms_, 1));
}

Element Element::operator-(const Element& other) const {
  check_same(ambient_, other.ambient_);
  return Element(ambient_, add_vectors(ambient_->field, terms_, other.terms_, -1));
}

Element Element::operator-() const {
  if (!ambient_) return *this;
  return Element(ambient_, lstc::scaled(ambient_->field, terms_, -1));
}

Element Element::operator*(const Element& other) const {
  check_same(ambient_, other.ambient_);
  return Element(ambient_, multiply_vectors(*ambient_, terms_, other.terms_));
}

Element Element::scaled(const Rational& c) const {
  if (!ambient_) return *this;
  return Element(ambient_, lstc::scaled(ambient_->field, terms_, c));
}

bool operator==(const Element& a, const Element& b) { return a.ambient_ == b.ambient_ && a.terms_ == b.terms_; }

// ---- free operations ----

Element multiply(const GradedAlgebra& a, const Element& x, const Element& y) {
  if (!a.owns(x) || !a.owns(y)) throw Error(Errc::MixedAmbient, "factor belongs to another algebra");
  return x * y;
}

Subspace multiplication_kernel(const GradedAlgebra& a) {
  const GradedAlgebra t = tensor(a, a);
  const std::uint32_t n = static_cast<std::uint32_t>(a.dim());
  Subspace kernel(a.field(), t.dim());
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 1; j < n; ++j) {
      std::map<std::uint32_t, Rational> acc;
      acc[*t.tensor_index(i, j)] += 1;
      for (const auto& [k, c] : a.multiply_basis(i, j)) acc[*t.tensor_index(k, 0)] -= c;
      for (auto& [k, c] : acc) c = to_field(a.field(), c);
      kernel.insert(sorted_vector(std::move(acc)));
    }
  }
  return kernel;
}

Element steenrod_apply(const GradedAlgebra& a, const Element& x) {
  if (!a.owns(x)) throw Error(Errc::MixedAmbient, "element belongs to another algebra");
  if (a.field() != FieldTag::GF2) throw Error(Errc::FieldMismatch, "Steenrod squares are defined over GF(2) only");
  if (!a.has_steenrod()) throw Error(Errc::NoSteenrodData, "some generator has no Steenrod data");
  std::vector<Element> sq;
  for (std::size_t i = 0; i < a.num_generators(); ++i) sq.push_back(*a.steenrod_of_generator(i));

  Element result = a.zero();
  for (const auto& [i, c] : x.terms()) {
    Element prod = a.one();
    const Monomial& m = a.basis_monomial(i);
    for (std::size_t g = 0; g < m.size(); ++g)
      for (int e = 0; e < m[g]; ++e) prod = prod * sq[g];
    result = result + prod.scaled(c);
  }

  if (auto d = x.degree()) {
    if (!(result.component(*d) == x))
      throw Error(Errc::Internal, "Steenrod data violates Sq^0 = identity");
    if (!(result.component(2 * *d) == x * x))
      throw Error(Errc::Internal, "Steenrod data violates the unstable axiom");
    for (const auto& [k, c] : result.terms())
      if (a.degree(k) < *d || a.degree(k) > 2 * *d)
        throw Error(Errc::Internal, "Steenrod square outside the unstable range");
  }
  return result;
}

}  // namespace lstc
