#include "lstc/space_expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "lstc/error.hpp"

namespace lstc {

namespace {

struct Family {
  const char* name;
  SpaceKind kind;
};

constexpr Family kFamilies[] = {
    {"S", SpaceKind::Sphere},     {"RP", SpaceKind::RP},          {"CP", SpaceKind::CP},
    {"T", SpaceKind::Torus},      {"Gr", SpaceKind::Grassmann},   {"SigO", SpaceKind::SurfaceO},
    {"SigN", SpaceKind::SurfaceN}, {"P", SpaceKind::PPS},         {"K", SpaceKind::Klein},
    {"Xg", SpaceKind::Xg},        {"DG", SpaceKind::DoldGrassmann}, {"X", SpaceKind::Gpps},
};

const char* family_name(SpaceKind kind) {
  for (const auto& f : kFamilies)
    if (f.kind == kind) return f.name;
  return "?";
}

std::vector<std::string> term_starts() {
  std::vector<std::string> out;
  for (const auto& f : kFamilies) out.emplace_back(f.name);
  out.emplace_back("Z2");
  out.emplace_back("(");
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SpaceExpr parse() {
    SpaceExpr e = expr();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(pos_, {"*", "end of input"});
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) throw SyntaxError(pos_, {std::string(1, c)});
    ++pos_;
  }

  int integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError(start, {"integer"});
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc()) throw Error(Errc::ParameterError, "integer out of range at offset " + std::to_string(start));
    return value;
  }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  SpaceExpr expr() {
    SpaceExpr e = term();
    while (peek('*')) {
      ++pos_;
      e = make_product(std::move(e), term());
    }
    return e;
  }

  std::vector<int> int_list(char close) {
    std::vector<int> out{integer()};
    while (peek(',')) {
      ++pos_;
      out.push_back(integer());
    }
    expect(close);
    return out;
  }

  SpaceExpr term() {
    skip();
    const std::size_t start = pos_;
    if (peek('(')) {
      ++pos_;
      SpaceExpr e = expr();
      expect(')');
      return e;
    }
    const std::string name = identifier();
    if (name == "Z2") {
      expect('[');
      Z2Action action = actions();
      expect('{');
      SpaceExpr inner = expr();
      expect('}');
      return make_z2(std::move(inner), std::move(action));
    }
    const Family* fam = nullptr;
    for (const auto& f : kFamilies)
      if (name == f.name) fam = &f;
    if (!fam) throw SyntaxError(start, term_starts());
    expect('(');
    SpaceExpr e;
    e.kind = fam->kind;
    switch (fam->kind) {
      case SpaceKind::DoldGrassmann: {
        e.params.push_back(integer());
        expect(',');
        e.params.push_back(integer());
        expect(';');
        expect('[');
        for (int v : int_list(']')) e.params.push_back(v);
        expect(')');
        break;
      }
      case SpaceKind::Gpps: {
        e.children.push_back(expr());
        expect(';');
        do {
          if (!e.factors.empty()) ++pos_;
          expect('(');
          GppsFactor f;
          f.n = integer();
          expect(',');
          f.p = integer();
          expect(')');
          e.factors.push_back(f);
        } while (peek(','));
        expect(')');
        break;
      }
      default:
        e.params = int_list(')');
        break;
    }
    validate(e);
    return e;
  }

  Z2Action actions() {
    Z2Action a;
    do {
      if (!a.tags.empty()) ++pos_;
      skip();
      const std::size_t start = pos_;
      const std::string tag = identifier();
      ActionTag t;
      if (tag == "conj") {
        t.kind = ActionKind::Conjugation;
      } else if (tag == "antipodal") {
        t.kind = ActionKind::Antipodal;
      } else if (tag == "refl") {
        t.kind = ActionKind::Reflection;
        expect('(');
        t.params = int_list(')');
      } else {
        throw SyntaxError(start, {"conj", "antipodal", "refl"});
      }
      a.tags.push_back(std::move(t));
    } while (peek('/'));
    expect(']');
    return a;
  }
};

void param_error(const SpaceExpr& e, const std::string& what) {
  throw Error(Errc::ParameterError, render(e) + ": " + what);
}

void expect_arity(const SpaceExpr& e, std::size_t n) {
  if (e.params.size() != n) param_error(e, "expected " + std::to_string(n) + " parameter(s)");
}

std::string join_ints(const std::vector<int>& v, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < v.size(); ++i) out += (i > from ? "," : "") + std::to_string(v[i]);
  return out;
}

std::vector<int> tail(const std::vector<int>& v, std::size_t from) { return {v.begin() + static_cast<long>(from), v.end()}; }

Element base_alpha(const SpaceExpr& base, const GradedAlgebra& ring) {
  if (base.kind == SpaceKind::SurfaceN) {
    Element a = ring.zero();
    for (std::size_t i = 0; i < ring.num_generators(); ++i) a = a + ring.generator(i);
    return a;
  }
  return ring.generator("a");
}

}  // namespace

SpaceExpr make_space(SpaceKind kind, std::vector<int> params) {
  SpaceExpr e;
  e.kind = kind;
  e.params = std::move(params);
  return e;
}

SpaceExpr make_product(SpaceExpr a, SpaceExpr b) {
  SpaceExpr e;
  e.kind = SpaceKind::Product;
  e.children.push_back(std::move(a));
  e.children.push_back(std::move(b));
  return e;
}

SpaceExpr make_product(const std::vector<SpaceExpr>& factors) {
  if (factors.empty()) throw Error(Errc::ParameterError, "empty product");
  SpaceExpr e = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) e = make_product(std::move(e), factors[i]);
  return e;
}

SpaceExpr make_z2(SpaceExpr inner, Z2Action action) {
  SpaceExpr e;
  e.kind = SpaceKind::Z2Product;
  e.children.push_back(std::move(inner));
  e.action = std::move(action);
  return e;
}

SpaceExpr parse_space_expr(std::string_view text) { return Parser(text).parse(); }

std::string render(const Z2Action& a) {
  std::string out;
  for (std::size_t i = 0; i < a.tags.size(); ++i) {
    if (i) out += "/";
    switch (a.tags[i].kind) {
      case ActionKind::Conjugation: out += "conj"; break;
      case ActionKind::Antipodal: out += "antipodal"; break;
      case ActionKind::Reflection: out += "refl(" + join_ints(a.tags[i].params) + ")"; break;
    }
  }
  return out;
}

std::string render(const SpaceExpr& e) {
  switch (e.kind) {
    case SpaceKind::Product: {
      const SpaceExpr& r = e.children[1];
      std::string right = render(r);
      if (r.kind == SpaceKind::Product) right = "(" + right + ")";
      return render(e.children[0]) + "*" + right;
    }
    case SpaceKind::Z2Product:
      return "Z2[" + render(e.action) + "]{" + render(e.children[0]) + "}";
    case SpaceKind::DoldGrassmann:
      if (e.params.size() < 2) return "DG(" + join_ints(e.params) + ")";
      return "DG(" + std::to_string(e.params[0]) + "," + std::to_string(e.params[1]) + ";[" + join_ints(e.params, 2) + "])";
    case SpaceKind::Gpps: {
      std::string out = "X(" + (e.children.empty() ? std::string("?") : render(e.children[0])) + ";";
      for (std::size_t i = 0; i < e.factors.size(); ++i)
        out += (i ? ",(" : "(") + std::to_string(e.factors[i].n) + "," + std::to_string(e.factors[i].p) + ")";
      return out + ")";
    }
    default:
      return std::string(family_name(e.kind)) + "(" + join_ints(e.params) + ")";
  }
}

void validate(const SpaceExpr& e) {
  const auto& p = e.params;
  auto all_positive = [&](std::size_t from) {
    for (std::size_t i = from; i < p.size(); ++i)
      if (p[i] < 1) param_error(e, "dimensions must be at least 1");
  };
  switch (e.kind) {
    case SpaceKind::Sphere:
    case SpaceKind::RP:
    case SpaceKind::CP:
    case SpaceKind::Torus:
      expect_arity(e, 1);
      all_positive(0);
      break;
    case SpaceKind::Grassmann:
      expect_arity(e, 2);
      if (p[0] < 1 || p[0] >= p[1]) param_error(e, "needs 1 <= d < n");
      break;
    case SpaceKind::SurfaceO:
      expect_arity(e, 1);
      if (p[0] < 0) param_error(e, "genus must be >= 0");
      break;
    case SpaceKind::SurfaceN:
      expect_arity(e, 1);
      if (p[0] < 1) param_error(e, "needs h >= 1");
      break;
    case SpaceKind::PPS:
      if (p.empty()) param_error(e, "needs at least one sphere");
      all_positive(0);
      break;
    case SpaceKind::Klein:
      expect_arity(e, 1);
      if (p[0] < 2) param_error(e, "needs n >= 2");
      break;
    case SpaceKind::Xg:
      expect_arity(e, 2);
      if (p[0] < 0 || p[1] < 2) param_error(e, "needs g >= 0 and n >= 2");
      break;
    case SpaceKind::DoldGrassmann:
      if (p.size() < 3) param_error(e, "needs d, n and at least one sphere");
      if (p[0] < 1 || p[0] >= p[1]) param_error(e, "needs 1 <= d < n");
      all_positive(2);
      break;
    case SpaceKind::Gpps: {
      if (e.children.size() != 1) param_error(e, "needs a base");
      const SpaceKind b = e.children[0].kind;
      if (b != SpaceKind::RP && b != SpaceKind::SurfaceN && b != SpaceKind::PPS)
        param_error(e, "base must be RP, SigN or P");
      if (e.factors.empty()) param_error(e, "needs at least one factor");
      for (const auto& f : e.factors)
        if (f.n < 1 || f.p < 0 || f.p > f.n) param_error(e, "factors need n >= 1 and 0 <= p <= n");
      break;
    }
    case SpaceKind::Product:
      if (e.children.size() != 2) param_error(e, "product needs two factors");
      break;
    case SpaceKind::Z2Product:
      if (e.children.size() != 1 || e.action.tags.empty()) param_error(e, "Z2 product needs an action");
      for (const auto& t : e.action.tags)
        for (int v : t.params)
          if (v < 0) param_error(e, "reflection indices must be >= 0");
      break;
  }
}

int structural_dim(const SpaceExpr& e) {
  const auto& p = e.params;
  auto sum = [](const std::vector<int>& v, std::size_t from) {
    int s = 0;
    for (std::size_t i = from; i < v.size(); ++i) s += v[i];
    return s;
  };
  switch (e.kind) {
    case SpaceKind::Sphere:
    case SpaceKind::RP:
    case SpaceKind::Torus:
    case SpaceKind::Klein:
      return p[0];
    case SpaceKind::CP: return 2 * p[0];
    case SpaceKind::Grassmann: return 2 * p[0] * (p[1] - p[0]);
    case SpaceKind::SurfaceO:
    case SpaceKind::SurfaceN: return 2;
    case SpaceKind::PPS: return sum(p, 0);
    case SpaceKind::Xg: return p[1];
    case SpaceKind::DoldGrassmann: return 2 * p[0] * (p[1] - p[0]) + sum(p, 2);
    case SpaceKind::Gpps: {
      int d = structural_dim(e.children[0]);
      for (const auto& f : e.factors) d += f.n;
      return d;
    }
    case SpaceKind::Product: return structural_dim(e.children[0]) + structural_dim(e.children[1]);
    case SpaceKind::Z2Product: return structural_dim(e.children[0]);
  }
  return 0;
}

std::vector<SpaceExpr> flatten_product(const SpaceExpr& e) {
  if (e.kind != SpaceKind::Product) return {e};
  std::vector<SpaceExpr> out = flatten_product(e.children[0]);
  for (auto& f : flatten_product(e.children[1])) out.push_back(std::move(f));
  return out;
}

GradedAlgebra ring_for_expr(const SpaceExpr& e, FieldTag field) {
  const auto& p = e.params;
  auto gf2_only = [&] {
    if (field != FieldTag::GF2)
      throw Error(Errc::RingUnavailable, render(e) + " has no rational ring constructor");
  };
  switch (e.kind) {
    case SpaceKind::Sphere: return sphere_ring(p[0], field);
    case SpaceKind::CP: return cp_ring(p[0], field);
    case SpaceKind::Torus: return torus_ring(p[0], field);
    case SpaceKind::Grassmann: return grassmann_ring(p[0], p[1], field);
    case SpaceKind::SurfaceO: return surface_orientable_ring(p[0], field);
    case SpaceKind::RP: gf2_only(); return rp_ring(p[0]);
    case SpaceKind::SurfaceN: gf2_only(); return surface_nonorientable_ring(p[0]);
    case SpaceKind::PPS: gf2_only(); return pps_ring(p);
    case SpaceKind::Klein: gf2_only(); return klein_ring(p[0]);
    case SpaceKind::Xg: gf2_only(); return xg_ring(p[0], p[1]);
    case SpaceKind::DoldGrassmann: gf2_only(); return dold_grassmann_ring(p[0], p[1], tail(p, 2));
    case SpaceKind::Gpps: {
      gf2_only();
      GradedAlgebra base = ring_for_expr(e.children[0], FieldTag::GF2);
      Element alpha = base_alpha(e.children[0], base);
      std::vector<GppsFactor> factors = e.factors;
      std::stable_sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
      return gpps_ring(GppsSpec{base, alpha, factors, "z"});
    }
    case SpaceKind::Product:
      return tensor(ring_for_expr(e.children[0], field), ring_for_expr(e.children[1], field));
    case SpaceKind::Z2Product:
      throw Error(Errc::RingUnavailable, "no ring constructor for the Z2 space " + render(e));
  }
  throw Error(Errc::Internal, "unknown space kind");
}

}  // namespace lstc
