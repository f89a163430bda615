#include "lstc/bounds.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "lstc/error.hpp"
#include "lstc/invariants.hpp"

namespace lstc {

std::string_view invariant_name(Invariant inv) {
  switch (inv) {
    case Invariant::Cat: return "cat";
    case Invariant::TC: return "tc";
    case Invariant::EqCat: return "eqcat";
    case Invariant::EqTC: return "eqtc";
  }
  return "?";
}

Invariant parse_invariant(std::string_view text) {
  for (Invariant inv : {Invariant::Cat, Invariant::TC, Invariant::EqCat, Invariant::EqTC})
    if (text == invariant_name(inv)) return inv;
  throw Error(Errc::BadParameter, "unknown invariant '" + std::string(text) + "'");
}

const std::vector<RuleInfo>& list_rules() {
  static const std::vector<RuleInfo> rules = {
      {"L1", "lower", "cl_R(X)+1 <= cat(X)", "cup-length lower bound for category"},
      {"L2", "lower", "zcl_R(X)+1 <= TC(X)", "zero-divisor cup-length lower bound for TC"},
      {"L3", "lower", "cat(X) <= TC(X)", "chain cat <= TC <= cat(X x X) <= 2cat-1"},
      {"L4", "both", "exact or one-sided values from the facts table", "facts table"},
      {"U1", "upper", "cat(X) <= dim(X)+1", "dimension bound for category of a connected CW complex"},
      {"U2", "upper", "TC(X) <= 2cat(X)-1 (also TC_Z2 <= 2cat_Z2-1)",
       "chain cat <= TC <= cat(X x X) <= 2cat-1"},
      {"U3", "upper", "cat(X x Y) <= cat(X)+cat(Y)-1", "product inequality for category"},
      {"U4", "upper", "TC(X x Y) <= TC(X)+TC(Y)-1", "product inequality for TC"},
      {"U5", "upper", "cat(X(M,N)) <= q + cat(N/sigma)-1 for an invariant categorical cover of size q",
       "invariant categorical cover bound for X(M,N)"},
      {"U6", "upper", "TC(X(M,N)) <= q + cat(N/sigma x N/sigma)-1 for an invariant motion cover of size q",
       "invariant motion cover bound for X(M,N)"},
      {"U7", "both", "n+3 <= TC(K_n) <= 3k+3 (n=2k+1), 3k+2 (n=2k)",
       "TC of n-dimensional Klein bottles: TC(K_2)=5, TC(K_3)=6"},
      {"U8a", "both", "cl(N/sigma)+r+1 <= cat(X) <= cat(N/sigma)+r when 1 <= p_j <= n_j",
       "category of X((n_j,p_j),N) with 1 <= p_j <= n_j"},
      {"U8b", "both", "zcl(N/sigma)+r+1 <= TC(X) <= cat(N/sigma x N/sigma)+2r when n_j >= 2, p_j >= 2",
       "TC of X((n_j,p_j),N) with n_j, p_j >= 2"},
      {"U8c", "both", "cat(X) = r+3 and r+4 <= TC(X) <= 2r+5 over a non-orientable surface base",
       "X((n_j,p_j),Sigma_g): cat = r+3, TC in [r+4, 2r+5]"},
      {"U8d", "both", "cat(X_g^{n-2}) = n+1; n+4 <= TC(X_g^{n-2}) <= 3k+2 (n=2k), 3k+4 (n=2k+1)",
       "X_g^{n-2}: cat = n+1, TC in [n+4, 3k+2 | 3k+4]"},
      {"U8e", "both", "cat(DG(d,n;[n_1..n_r])) = d(n-d)+n_1+r", "category of Dold manifolds of Grassmann type"},
      {"U8f", "both", "zcl(Gr)+zcl(RP^{n_1})+r <= TC(DG) <= 2d(n-d)+2(n_1+r)-1",
       "TC of Dold manifolds of Grassmann type"},
      {"U8g", "both", "m+cl(P(n))+1 <= cat(X(CP^m,n)) <= m+cat(P(n))", "category of X(CP^m, n_1..n_r)"},
      {"U8h", "both", "zcl(CP^m)+r+zcl(RP^{n_1}) <= TC(X(CP^m,n)) <= 2(n_1+r+m)-1",
       "TC of X(CP^m, n_1..n_r)"},
      {"U9", "upper", "TC(X) <= cat(X x X)", "chain cat <= TC <= cat(X x X) <= 2cat-1"},
      {"E1", "both", "cl(N/sigma)+r+1 <= cat_Z2(S^{n_1} x .. x S^{n_r} x N) <= cat(N/sigma)+r",
       "equivariant category of S^{n_1} x .. x S^{n_r} x N, N free"},
      {"E2", "both",
       "r+k+zl_Q(N)+1 <= TC_Z2(S^{n_1} x .. x S^{n_r} x N) <= r+k+TC_Z2(N) (p_i=0), 2r+TC_Z2(N) (p_i>=2)",
       "equivariant TC of S^{n_1} x .. x S^{n_r} x N"},
      {"E3", "both", "TC_Z2(CP^n x prod S^{n_i}) = r+k+2n+1; TC_Z2(Gr_d(C^n) x prod S^{n_i}) = 2d(n-d)+r+k+1",
       "equivariant TC of CP^n or Gr_d(C^n) times spheres"},
      {"I1", "info", "TC(E) <= TC(B)+TC*_G(F)-1", "fibre bundle sum bound via strongly equivariant TC of the fibre"},
      {"I2", "info", "TC(E) <= TC(F) cat(B x B)", "fibre bundle product bound (Farber-Grant)"},
  };
  return rules;
}

const std::vector<FactInfo>& list_facts() {
  static const std::vector<FactInfo> facts = {
      {"F1", "TC(CP^n) = 2n+1", "Farber-Tabachnikov-Yuzvinsky: TC(CP^n) = 2n+1"},
      {"F2", "TC(K_n) >= n+3", "Davis, n-dimensional Klein bottles, Proposition 5.2"},
      {"F3", "cat(P(n_1,...,n_r)) = n_1+r", "Davis, projective product spaces: cat(P(m_1..m_k)) = m_1+k"},
      {"F4", "TC(S^n) = 2 (n odd), 3 (n even)", "Farber: TC(S^n) = 2 for n odd, 3 for n even"},
      {"F5", "TC_Z2(S^n) = 2 (n odd), 3 (n even), antipodal action", "Grant, equivariant TC of spheres: TC_Z2(S^n) = 2 | 3"},
      {"F6", "cat(S^n) = 2", "two-set cover of a sphere"},
      {"F7", "cat(Gr_d(C^n)) = d(n-d)+1", "cup-length and dimension: cat(Gr_d(C^n)) = d(n-d)+1"},
      {"F8", "cat_Z2(CP^n) = n+1 under conjugation", "conjugation-invariant cover of CP^n: cat_Z2 = n+1"},
      {"F9", "cat(N_h) = 3", "closed surfaces other than S^2: cat = 3"},
      {"F10", "TC*_Z2(S^1) = infinity", "strongly equivariant TC of the conjugated circle is infinite"},
      {"C1", "(S^1)^1 with conjugation: motion cover of size 3", "cover catalog: S^1 conj, motion cover of 3 sets"},
      {"C2", "(S^1)^2 with conjugation: motion cover of size 4", "cover catalog: (S^1)^2 conj, motion cover of 4 sets"},
      {"C3", "(S^1)^{2k} with conjugation: motion cover of size 3k+1",
       "cover catalog: (S^1)^{2k} conj, motion cover of 3k+1 sets"},
      {"C4", "(S^1)^{2k-1} with conjugation: motion cover of size 3k", "cover catalog: (S^1)^{2k-1} conj, motion cover of 3k sets"},
      {"C5", "S^{n_1} x .. x S^{n_r} with all p_i >= 2: motion cover of size 2r+1", "cover catalog: sphere products with p_i >= 2, motion cover of 2r+1 sets"},
      {"C6", "CP^n with conjugation: motion cover of size 2n+1",
       "cover catalog: CP^n conj, motion cover of 2n+1 sets"},
      {"C7", "Gr_d(C^n) with conjugation: motion cover of size 2d(n-d)+1",
       "cover catalog: Gr_d(C^n) conj, motion cover of 2d(n-d)+1 sets"},
      {"C8", "Gr_d(C^n) with conjugation: categorical cover of size d(n-d)+1",
       "cover catalog: Gr_d(C^n) conj, categorical cover of d(n-d)+1 sets"},
      {"C9", "S^{n_1} x .. x S^{n_r} with 1 <= p_i <= n_i: categorical cover of size r+1",
       "cover catalog: sphere products with 1 <= p_i <= n_i, categorical cover of r+1 sets"},
  };
  return facts;
}

namespace {

const std::string& rule_cite(const std::string& id) {
  for (const auto& r : list_rules())
    if (r.id == id) return r.citation;
  throw Error(Errc::Internal, "unknown rule " + id);
}

const std::string& fact_cite(const std::string& id) {
  for (const auto& f : list_facts())
    if (f.id == id) return f.citation;
  throw Error(Errc::Internal, "unknown fact " + id);
}

// Fibre of a generalized projective product space, as seen by the cover catalog.
struct Fibre {
  bool grassmann = false;
  int d = 0, n = 0;                 // Gr_d(C^n) with conjugation
  std::vector<GppsFactor> spheres;  // S^{n_j} with p_j reflected coordinates
};

struct GppsView {
  Fibre fibre;
  SpaceExpr base;
  SpaceExpr fibre_expr;
  int r() const { return static_cast<int>(fibre.spheres.size()); }
};

std::string fibre_label(const Fibre& f) {
  if (f.grassmann) return "Gr(" + std::to_string(f.d) + "," + std::to_string(f.n) + ") conj";
  std::string out;
  for (std::size_t i = 0; i < f.spheres.size(); ++i)
    out += (i ? " x " : "") + std::string("S^") + std::to_string(f.spheres[i].n) + "[p=" +
           std::to_string(f.spheres[i].p) + "]";
  return out;
}

struct CoverFact {
  int q;
  std::string fact;
};

CoverFact fibre_cover(const Fibre& f, CoverKind kind) {
  const int r = static_cast<int>(f.spheres.size());
  if (f.grassmann) {
    const int dim = f.d * (f.n - f.d);
    if (kind == CoverKind::Categorical) return {dim + 1, "C8"};
    return {2 * dim + 1, f.d == 1 ? "C6" : "C7"};
  }
  if (r == 0) throw Error(Errc::NotInCatalog, "empty fibre");
  if (kind == CoverKind::Categorical) {
    bool ok = std::all_of(f.spheres.begin(), f.spheres.end(), [](auto s) { return s.p >= 1 && s.p <= s.n; });
    if (ok) return {r + 1, "C9"};
    throw Error(Errc::NotInCatalog, "no invariant categorical cover catalogued for " + fibre_label(f));
  }
  if (std::all_of(f.spheres.begin(), f.spheres.end(), [](auto s) { return s.n == 1 && s.p == 1; })) {
    if (r == 1) return {3, "C1"};
    if (r == 2) return {4, "C2"};
    if (r % 2 == 0) return {3 * (r / 2) + 1, "C3"};
    return {3 * ((r + 1) / 2), "C4"};
  }
  if (std::all_of(f.spheres.begin(), f.spheres.end(), [](auto s) { return s.n >= 2 && s.p >= 2; }))
    return {2 * r + 1, "C5"};
  throw Error(Errc::NotInCatalog, "no invariant motion cover catalogued for " + fibre_label(f));
}

std::optional<GppsView> gpps_view(const SpaceExpr& e) {
  GppsView v;
  const auto& p = e.params;
  switch (e.kind) {
    case SpaceKind::Klein:
      v.fibre.spheres.assign(static_cast<std::size_t>(p[0] - 1), {1, 1});
      v.base = make_space(SpaceKind::RP, {1});
      break;
    case SpaceKind::Xg:
      if (p[1] < 3) return std::nullopt;
      v.fibre.spheres.assign(static_cast<std::size_t>(p[1] - 2), {1, 1});
      v.base = make_space(SpaceKind::SurfaceN, {p[0] + 1});
      break;
    case SpaceKind::PPS: {
      if (p.size() < 2) return std::nullopt;
      std::vector<int> ns = p;
      std::sort(ns.begin(), ns.end());
      for (std::size_t j = 1; j < ns.size(); ++j) v.fibre.spheres.push_back({ns[j], 0});
      v.base = make_space(SpaceKind::RP, {ns[0]});
      break;
    }
    case SpaceKind::Gpps:
      v.fibre.spheres = e.factors;
      v.base = e.children[0];
      break;
    case SpaceKind::DoldGrassmann:
      v.fibre.grassmann = true;
      v.fibre.d = p[0];
      v.fibre.n = p[1];
      v.base = make_space(SpaceKind::PPS, {p.begin() + 2, p.end()});
      break;
    default:
      return std::nullopt;
  }
  if (v.fibre.grassmann) {
    v.fibre_expr = make_space(SpaceKind::Grassmann, {v.fibre.d, v.fibre.n});
  } else {
    std::vector<SpaceExpr> parts;
    for (const auto& s : v.fibre.spheres) parts.push_back(make_space(SpaceKind::Sphere, {s.n}));
    v.fibre_expr = make_product(parts);
  }
  return v;
}

// Z2 spaces: every factor gets one of the catalogued involutions.
enum class Act { Conj, Refl, Antipodal };

struct EqFactor {
  SpaceExpr space;
  Act act = Act::Conj;
  int p = 0;  // reflected coordinates, for spheres
};

std::vector<EqFactor> assign_action(const SpaceExpr& z) {
  bool conj = false, antipodal = false;
  std::deque<int> refl;
  for (const auto& t : z.action.tags) {
    if (t.kind == ActionKind::Conjugation) conj = true;
    if (t.kind == ActionKind::Antipodal) antipodal = true;
    if (t.kind == ActionKind::Reflection) refl.insert(refl.end(), t.params.begin(), t.params.end());
  }
  std::vector<EqFactor> out;
  for (const auto& f : flatten_product(z.children[0])) {
    EqFactor ef{f};
    bool ok = false;
    switch (f.kind) {
      case SpaceKind::CP:
      case SpaceKind::Grassmann:
      case SpaceKind::Torus:
        ok = conj;
        ef.act = Act::Conj;
        break;
      case SpaceKind::Sphere:
        if (!refl.empty()) {
          ef.act = Act::Refl;
          ef.p = refl.front();
          refl.pop_front();
          if (ef.p > f.params[0])
            throw Error(Errc::ParameterError, "reflection index exceeds the dimension of " + render(f));
          ok = true;
        } else if (f.params[0] == 1 && conj) {
          ef.act = Act::Refl;
          ef.p = 1;
          ok = true;
        } else if (antipodal) {
          ef.act = Act::Antipodal;
          ok = true;
        }
        break;
      case SpaceKind::SurfaceO:
        ef.act = Act::Antipodal;
        ok = antipodal;
        break;
      default:
        break;
    }
    if (!ok)
      throw Error(Errc::UnsupportedCombination, "no catalogued involution for factor " + render(f) + " in " + render(z));
    out.push_back(std::move(ef));
  }
  if (!refl.empty()) throw Error(Errc::ParameterError, "more reflection indices than sphere factors in " + render(z));
  return out;
}

Fibre fibre_of(const std::vector<EqFactor>& fs) {
  Fibre f;
  if (fs.size() == 1 && fs[0].act == Act::Conj) {
    const SpaceExpr& s = fs[0].space;
    if (s.kind == SpaceKind::CP) {
      f.grassmann = true;
      f.d = 1;
      f.n = s.params[0] + 1;
      return f;
    }
    if (s.kind == SpaceKind::Grassmann) {
      f.grassmann = true;
      f.d = s.params[0];
      f.n = s.params[1];
      return f;
    }
  }
  for (const auto& ef : fs) {
    if (ef.space.kind == SpaceKind::Torus && ef.act == Act::Conj) {
      for (int i = 0; i < ef.space.params[0]; ++i) f.spheres.push_back({1, 1});
    } else if (ef.space.kind == SpaceKind::Sphere) {
      f.spheres.push_back({ef.space.params[0], ef.act == Act::Antipodal ? 0 : ef.p});
    } else {
      throw Error(Errc::NotInCatalog, "no cover catalogued for " + render(ef.space));
    }
  }
  return f;
}

std::size_t binom(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

// Total dimension of the cohomology, without building the ring.
std::size_t estimated_dim(const SpaceExpr& e) {
  const auto& p = e.params;
  auto pow2 = [](std::size_t k) { return std::size_t{1} << std::min<std::size_t>(k, 40); };
  switch (e.kind) {
    case SpaceKind::Sphere: return 2;
    case SpaceKind::RP:
    case SpaceKind::CP: return static_cast<std::size_t>(p[0]) + 1;
    case SpaceKind::Torus:
    case SpaceKind::Klein: return pow2(static_cast<std::size_t>(p[0]));
    case SpaceKind::Grassmann: return binom(p[1], p[0]);
    case SpaceKind::SurfaceO: return 2 * static_cast<std::size_t>(p[0]) + 2;
    case SpaceKind::SurfaceN: return static_cast<std::size_t>(p[0]) + 2;
    case SpaceKind::PPS: return (static_cast<std::size_t>(*std::min_element(p.begin(), p.end())) + 1) * pow2(p.size() - 1);
    case SpaceKind::Xg: return static_cast<std::size_t>(p[0] + 3) * pow2(static_cast<std::size_t>(p[1] - 2));
    case SpaceKind::DoldGrassmann:
      return binom(p[1], p[0]) * (static_cast<std::size_t>(*std::min_element(p.begin() + 2, p.end())) + 1) *
             pow2(p.size() - 3);
    case SpaceKind::Gpps: return estimated_dim(e.children[0]) * pow2(e.factors.size());
    case SpaceKind::Product: return estimated_dim(e.children[0]) * estimated_dim(e.children[1]);
    case SpaceKind::Z2Product: return estimated_dim(e.children[0]);
  }
  return 0;
}

bool rational_ring_exists(const SpaceExpr& e) {
  switch (e.kind) {
    case SpaceKind::Sphere:
    case SpaceKind::CP:
    case SpaceKind::Torus:
    case SpaceKind::Grassmann:
    case SpaceKind::SurfaceO: return true;
    case SpaceKind::Product: return rational_ring_exists(e.children[0]) && rational_ring_exists(e.children[1]);
    default: return false;
  }
}

std::string field_label(FieldTag f) { return f == FieldTag::GF2 ? "GF2" : "Q"; }

std::string target(std::string_view what, const SpaceExpr& e) { return std::string(what) + "(" + render(e) + ")"; }

struct Measured {
  int value;
  std::string note;
};

class Engine {
 public:
  explicit Engine(const EvalOptions& opts) : opts_(opts) {}

  BoundResult eval(const SpaceExpr& e, Invariant inv) {
    const std::string key = std::string(invariant_name(inv)) + ":" + render(e);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!active_.insert(key).second) throw Error(Errc::Internal, "cyclic rule dependency at " + key);
    BoundResult r = compute(e, inv);
    active_.erase(key);
    memo_.emplace(key, r);
    return r;
  }

 private:
  const EvalOptions& opts_;
  std::map<std::string, BoundResult> memo_;
  std::set<std::string> active_;
  std::map<std::string, std::optional<Measured>> cl_cache_, zcl_cache_;
  std::vector<DerivationNode> cands_;
  std::string target_;

  bool enabled(const std::string& id) const { return !opts_.disabled_rules.contains(id); }

  DerivationNode node(const std::string& rule, LeafKind kind, Side side, std::optional<int> value,
                      std::string note = {}, std::vector<DerivationNode> children = {}) {
    DerivationNode n;
    n.rule = rule;
    n.cite = rule_cite(rule);
    n.kind = kind;
    n.side = side;
    n.value = value;
    n.target = target_;
    n.note = std::move(note);
    n.children = std::move(children);
    return n;
  }

  DerivationNode fact_leaf(const std::string& fact, std::optional<int> value, std::string note = {}) {
    DerivationNode n;
    n.rule = fact;
    n.cite = fact_cite(fact);
    n.kind = LeafKind::Cited;
    n.side = Side::Info;
    n.value = value;
    n.note = std::move(note);
    return n;
  }

  void add(DerivationNode n) { cands_.push_back(std::move(n)); }

  void both(const std::string& rule, LeafKind kind, int lo, int hi, const std::string& note = {},
            std::vector<DerivationNode> lo_children = {}, std::vector<DerivationNode> hi_children = {}) {
    add(node(rule, kind, Side::Lower, lo, note, std::move(lo_children)));
    add(node(rule, kind, Side::Upper, hi, note, std::move(hi_children)));
  }

  static std::vector<DerivationNode> side_nodes(const BoundResult& r, Side s) {
    std::vector<DerivationNode> out;
    for (const auto& n : r.derivation)
      if (n.side == s) out.push_back(n);
    return out;
  }

  // Saves and restores the per-evaluation candidate list around recursive calls.
  BoundResult sub(const SpaceExpr& e, Invariant inv) {
    auto saved = std::move(cands_);
    auto saved_target = target_;
    cands_.clear();
    BoundResult r;
    try {
      r = eval(e, inv);
    } catch (...) {
      cands_ = std::move(saved);
      target_ = std::move(saved_target);
      throw;
    }
    cands_ = std::move(saved);
    target_ = std::move(saved_target);
    return r;
  }

  std::optional<Measured> ring_invariant(const SpaceExpr& e, FieldTag field, bool zcl) {
    auto& cache = zcl ? zcl_cache_ : cl_cache_;
    const std::string key = field_label(field) + ":" + render(e);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::optional<Measured> out;
    const std::size_t limit = zcl ? opts_.max_zcl_dim : opts_.max_cl_dim;
    const std::string what = std::string(zcl ? "zcl_" : "cl_") + field_label(field) + "(" + render(e) + ")";
    const bool split = e.kind == SpaceKind::Product && (!zcl || estimated_dim(e) > limit);
    if (field == FieldTag::Rational && !rational_ring_exists(e)) {
      out = std::nullopt;
    } else if (!split && estimated_dim(e) <= limit) {
      try {
        GradedAlgebra a = ring_for_expr(e, field);
        int v = zcl ? zero_divisor_cup_length(a).length : cup_length(a).length;
        out = Measured{v, what + " = " + std::to_string(v)};
      } catch (const Error& err) {
        if (err.code() != Errc::RingUnavailable) throw;
      }
    } else if (split) {
      auto a = ring_invariant(e.children[0], field, zcl);
      auto b = ring_invariant(e.children[1], field, zcl);
      if (a && b) {
        // cl is additive over a field; for zcl the sum is only a lower bound.
        out = Measured{a->value + b->value, what + (zcl ? " >= " : " = ") + std::to_string(a->value + b->value) +
                                                " from the factors (" + a->note + "; " + b->note + ")"};
      }
    }
    cache.emplace(key, out);
    return out;
  }

  std::optional<Measured> cl(const SpaceExpr& e, FieldTag f) { return ring_invariant(e, f, false); }
  std::optional<Measured> zcl(const SpaceExpr& e, FieldTag f) { return ring_invariant(e, f, true); }

  BoundResult compute(const SpaceExpr& e, Invariant inv) {
    const bool eq = inv == Invariant::EqCat || inv == Invariant::EqTC;
    if (eq != (e.kind == SpaceKind::Z2Product))
      throw Error(Errc::UnsupportedCombination, std::string(invariant_name(inv)) + " is not defined for " + render(e));
    if (!eq) {
      for (const auto& f : flatten_product(e))
        if (f.kind == SpaceKind::Z2Product)
          throw Error(Errc::UnsupportedCombination, "Z2 factor inside a non-equivariant expression: " + render(e));
    }
    cands_.clear();
    switch (inv) {
      case Invariant::Cat: target_ = target("cat", e); cat_rules(e); break;
      case Invariant::TC: target_ = target("TC", e); tc_rules(e); break;
      case Invariant::EqCat: target_ = target("cat_Z2", e); eqcat_rules(e); break;
      case Invariant::EqTC: target_ = target("TC_Z2", e); eqtc_rules(e); break;
    }
    BoundResult r;
    r.invariant = inv;
    r.expr = render(e);
    for (const auto& c : cands_) {
      if (c.side == Side::Lower && c.value) r.lower = std::max(r.lower, *c.value);
      if (c.side == Side::Upper && c.value) r.upper = r.upper ? std::min(*r.upper, *c.value) : *c.value;
    }
    if (r.upper && *r.upper < r.lower)
      throw Error(Errc::Internal, "inconsistent bounds for " + target_ + ": lower " + std::to_string(r.lower) +
                                      " > upper " + std::to_string(*r.upper));
    for (auto& c : cands_) {
      const bool keep = c.side == Side::Info || (c.side == Side::Lower && c.value == r.lower) ||
                        (c.side == Side::Upper && r.upper && c.value == r.upper);
      if (keep) r.derivation.push_back(std::move(c));
    }
    cands_.clear();
    return r;
  }

  // ---- cat ----

  void cat_rules(const SpaceExpr& e) {
    const auto& p = e.params;
    if (enabled("L1")) {
      for (FieldTag f : {FieldTag::GF2, FieldTag::Rational})
        if (auto m = cl(e, f)) add(node("L1", LeafKind::Computed, Side::Lower, m->value + 1, m->note));
    }
    if (enabled("L4")) {
      auto exact = [&](const std::string& fact, int v) {
        add(node("L4", LeafKind::Cited, Side::Lower, v, {}, {fact_leaf(fact, v)}));
        add(node("L4", LeafKind::Cited, Side::Upper, v, {}, {fact_leaf(fact, v)}));
      };
      if (e.kind == SpaceKind::Sphere) exact("F6", 2);
      if (e.kind == SpaceKind::PPS) exact("F3", *std::min_element(p.begin(), p.end()) + static_cast<int>(p.size()));
      if (e.kind == SpaceKind::Grassmann) exact("F7", p[0] * (p[1] - p[0]) + 1);
      if (e.kind == SpaceKind::CP) exact("F7", p[0] + 1);
      if (e.kind == SpaceKind::SurfaceN) exact("F9", 3);
      if (e.kind == SpaceKind::Xg && p[1] == 2) exact("F9", 3);
    }
    if (enabled("U1")) {
      const int d = structural_dim(e);
      add(node("U1", LeafKind::Computed, Side::Upper, d + 1, "dim = " + std::to_string(d)));
    }
    if (enabled("U3")) {
      if (e.kind == SpaceKind::Product) {
        BoundResult a = sub(e.children[0], Invariant::Cat), b = sub(e.children[1], Invariant::Cat);
        if (a.upper && b.upper) {
          auto ch = side_nodes(a, Side::Upper);
          for (auto& n : side_nodes(b, Side::Upper)) ch.push_back(std::move(n));
          add(node("U3", LeafKind::Computed, Side::Upper, *a.upper + *b.upper - 1, {}, std::move(ch)));
        }
      } else if (e.kind == SpaceKind::Torus && p[0] >= 2) {
        product_split(e, Invariant::Cat, "U3");
      }
    }
    auto view = gpps_view(e);
    if (view && enabled("U5")) {
      try {
        CoverFact q = fibre_cover(view->fibre, CoverKind::Categorical);
        BoundResult b = sub(view->base, Invariant::Cat);
        if (b.upper) {
          auto ch = side_nodes(b, Side::Upper);
          ch.insert(ch.begin(), fact_leaf(q.fact, q.q, "q = " + std::to_string(q.q)));
          add(node("U5", LeafKind::Computed, Side::Upper, q.q + *b.upper - 1, {}, std::move(ch)));
        }
      } catch (const Error& err) {
        if (err.code() != Errc::NotInCatalog) throw;
        add(node("U5", LeafKind::Computed, Side::Info, std::nullopt, std::string("skipped: ") + err.what()));
      }
    }
    if (view && !view->fibre.grassmann && enabled("U8a")) {
      const auto& s = view->fibre.spheres;
      if (std::all_of(s.begin(), s.end(), [](auto f) { return f.p >= 1 && f.p <= f.n; })) {
        auto c = cl(view->base, FieldTag::GF2);
        BoundResult b = sub(view->base, Invariant::Cat);
        if (c) add(node("U8a", LeafKind::Computed, Side::Lower, c->value + view->r() + 1, c->note));
        if (b.upper)
          add(node("U8a", LeafKind::Computed, Side::Upper, *b.upper + view->r(), {}, side_nodes(b, Side::Upper)));
      }
    }
    if (view && enabled("U8c") && sigma_base(*view)) {
      const int r = view->r();
      both("U8c", LeafKind::Cited, r + 3, r + 3, "r = " + std::to_string(r));
    }
    if (e.kind == SpaceKind::Xg && p[1] >= 3 && enabled("U8d")) {
      both("U8d", LeafKind::Cited, p[1] + 1, p[1] + 1, "n = " + std::to_string(p[1]));
    }
    if (e.kind == SpaceKind::DoldGrassmann) {
      const int d = p[0], n = p[1], r = static_cast<int>(p.size()) - 2;
      const int n1 = *std::min_element(p.begin() + 2, p.end());
      if (enabled("U8e")) both("U8e", LeafKind::Cited, d * (n - d) + n1 + r, d * (n - d) + n1 + r);
      if (d == 1 && enabled("U8g")) {
        const int m = n - 1;
        auto c = cl(view->base, FieldTag::GF2);
        BoundResult b = sub(view->base, Invariant::Cat);
        if (c) add(node("U8g", LeafKind::Computed, Side::Lower, m + c->value + 1, c->note));
        if (b.upper) add(node("U8g", LeafKind::Computed, Side::Upper, m + *b.upper, {}, side_nodes(b, Side::Upper)));
      }
    }
  }

  static bool sigma_base(const GppsView& v) {
    if (v.fibre.grassmann || v.base.kind != SpaceKind::SurfaceN || v.fibre.spheres.empty()) return false;
    return std::all_of(v.fibre.spheres.begin(), v.fibre.spheres.end(), [](auto f) { return f.n >= 2 && f.p >= 2; });
  }

  // T(n) = T(n-1) x S^1 for the product inequalities.
  void product_split(const SpaceExpr& e, Invariant inv, const std::string& rule) {
    SpaceExpr a = e.params[0] == 2 ? make_space(SpaceKind::Sphere, {1}) : make_space(SpaceKind::Torus, {e.params[0] - 1});
    BoundResult ra = sub(a, inv), rb = sub(make_space(SpaceKind::Sphere, {1}), inv);
    if (!ra.upper || !rb.upper) return;
    auto ch = side_nodes(ra, Side::Upper);
    for (auto& n : side_nodes(rb, Side::Upper)) ch.push_back(std::move(n));
    add(node(rule, LeafKind::Computed, Side::Upper, *ra.upper + *rb.upper - 1, "T(n) = T(n-1) x S^1", std::move(ch)));
  }

  // ---- TC ----

  void tc_rules(const SpaceExpr& e) {
    const auto& p = e.params;
    if (enabled("L2")) {
      for (FieldTag f : {FieldTag::GF2, FieldTag::Rational})
        if (auto m = zcl(e, f)) add(node("L2", LeafKind::Computed, Side::Lower, m->value + 1, m->note));
    }
    BoundResult c = sub(e, Invariant::Cat);
    if (enabled("L3")) add(node("L3", LeafKind::Computed, Side::Lower, c.lower, {}, side_nodes(c, Side::Lower)));
    if (enabled("L4")) {
      auto exact = [&](const std::string& fact, int v) {
        add(node("L4", LeafKind::Cited, Side::Lower, v, {}, {fact_leaf(fact, v)}));
        add(node("L4", LeafKind::Cited, Side::Upper, v, {}, {fact_leaf(fact, v)}));
      };
      if (e.kind == SpaceKind::CP) exact("F1", 2 * p[0] + 1);
      if (e.kind == SpaceKind::Sphere) exact("F4", p[0] % 2 ? 2 : 3);
      if (e.kind == SpaceKind::Klein) add(node("L4", LeafKind::Cited, Side::Lower, p[0] + 3, {}, {fact_leaf("F2", p[0] + 3)}));
    }
    if (enabled("U2") && c.upper)
      add(node("U2", LeafKind::Computed, Side::Upper, 2 * *c.upper - 1, {}, side_nodes(c, Side::Upper)));
    if (enabled("U9")) {
      BoundResult sq = sub(make_product(e, e), Invariant::Cat);
      if (sq.upper) add(node("U9", LeafKind::Computed, Side::Upper, *sq.upper, {}, side_nodes(sq, Side::Upper)));
    }
    if (enabled("U4")) {
      if (e.kind == SpaceKind::Product) {
        BoundResult a = sub(e.children[0], Invariant::TC), b = sub(e.children[1], Invariant::TC);
        if (a.upper && b.upper) {
          auto ch = side_nodes(a, Side::Upper);
          for (auto& n : side_nodes(b, Side::Upper)) ch.push_back(std::move(n));
          add(node("U4", LeafKind::Computed, Side::Upper, *a.upper + *b.upper - 1, {}, std::move(ch)));
        }
      } else if (e.kind == SpaceKind::Torus && p[0] >= 2) {
        product_split(e, Invariant::TC, "U4");
      }
    }
    if (e.kind == SpaceKind::Klein && enabled("U7")) {
      const int n = p[0], k = n / 2;
      add(node("U7", LeafKind::Cited, Side::Lower, n + 3, "n = " + std::to_string(n)));
      add(node("U7", LeafKind::Cited, Side::Upper, n % 2 ? 3 * k + 3 : 3 * k + 2,
               "n = " + std::to_string(n) + ", k = " + std::to_string(k)));
    }
    auto view = gpps_view(e);
    if (!view) return;
    std::optional<BoundResult> base_sq;
    auto base_square = [&]() -> const BoundResult& {
      if (!base_sq) base_sq = sub(make_product(view->base, view->base), Invariant::Cat);
      return *base_sq;
    };
    if (enabled("U6")) {
      try {
        CoverFact q = fibre_cover(view->fibre, CoverKind::MotionPlanning);
        const BoundResult& b = base_square();
        if (b.upper) {
          auto ch = side_nodes(b, Side::Upper);
          ch.insert(ch.begin(), fact_leaf(q.fact, q.q, "q = " + std::to_string(q.q)));
          add(node("U6", LeafKind::Computed, Side::Upper, q.q + *b.upper - 1, {}, std::move(ch)));
        }
      } catch (const Error& err) {
        if (err.code() != Errc::NotInCatalog) throw;
        add(node("U6", LeafKind::Computed, Side::Info, std::nullopt, std::string("skipped: ") + err.what()));
      }
    }
    const int r = view->r();
    const auto& s = view->fibre.spheres;
    if (!view->fibre.grassmann && enabled("U8b") && r > 0 &&
        std::all_of(s.begin(), s.end(), [](auto f) { return f.n >= 2 && f.p >= 2; })) {
      if (auto z = zcl(view->base, FieldTag::GF2)) add(node("U8b", LeafKind::Computed, Side::Lower, z->value + r + 1, z->note));
      const BoundResult& b = base_square();
      if (b.upper) add(node("U8b", LeafKind::Computed, Side::Upper, *b.upper + 2 * r, {}, side_nodes(b, Side::Upper)));
    }
    if (enabled("U8c") && sigma_base(*view)) both("U8c", LeafKind::Cited, r + 4, 2 * r + 5, "r = " + std::to_string(r));
    if (e.kind == SpaceKind::Xg && enabled("U8d")) {
      const int n = p[1], k = n / 2;
      std::string note = "n = " + std::to_string(n) + ", k = " + std::to_string(k);
      if (auto z = zcl(e, FieldTag::GF2); z && z->value + 1 < n + 4)
        note += "; computed " + z->note + " gives only " + std::to_string(z->value + 1);
      both("U8d", LeafKind::Cited, n + 4, n % 2 ? 3 * k + 4 : 3 * k + 2, note);
    }
    if (e.kind == SpaceKind::DoldGrassmann) {
      const int d = p[0], n = p[1];
      const int n1 = *std::min_element(p.begin() + 2, p.end());
      const int rr = static_cast<int>(p.size()) - 2;
      const SpaceExpr rp = make_space(SpaceKind::RP, {n1});
      const auto zr = zcl(rp, FieldTag::GF2);
      if (enabled("U8f")) {
        const auto zg = zcl(make_space(SpaceKind::Grassmann, {d, n}), FieldTag::GF2);
        if (zg && zr)
          add(node("U8f", LeafKind::Computed, Side::Lower, zg->value + zr->value + rr, zg->note + "; " + zr->note));
        add(node("U8f", LeafKind::Cited, Side::Upper, 2 * d * (n - d) + 2 * (n1 + rr) - 1));
      }
      if (d == 1 && enabled("U8h")) {
        const int m = n - 1;
        const std::string k_note = "the accompanying count k of even n_i does not enter the inequality";
        const auto zc = zcl(make_space(SpaceKind::CP, {m}), FieldTag::GF2);
        if (zc && zr)
          add(node("U8h", LeafKind::Computed, Side::Lower, zc->value + rr + zr->value,
                   zc->note + "; " + zr->note + "; " + k_note));
        add(node("U8h", LeafKind::Cited, Side::Upper, 2 * (n1 + rr + m) - 1, k_note));
      }
    }
    if (enabled("I1") && !view->fibre.grassmann &&
        std::any_of(s.begin(), s.end(), [](auto f) { return f.n == 1 && f.p == 1; })) {
      add(node("I1", LeafKind::Cited, Side::Info, std::nullopt,
               "fibre contains a conjugated circle, TC*_Z2(S^1) is infinite: no finite bound",
               {fact_leaf("F10", std::nullopt)}));
    }
    if (enabled("I2")) {
      BoundResult f = sub(view->fibre_expr, Invariant::TC);
      const BoundResult& b = base_square();
      if (f.upper && b.upper) {
        auto ch = side_nodes(f, Side::Upper);
        for (auto& n : side_nodes(b, Side::Upper)) ch.push_back(n);
        add(node("I2", LeafKind::Computed, Side::Info, *f.upper * *b.upper,
                 "TC(F) <= " + std::to_string(*f.upper) + ", cat(B x B) <= " + std::to_string(*b.upper), std::move(ch)));
      }
    }
  }

  // ---- equivariant ----

  void eqcat_rules(const SpaceExpr& e) {
    const auto fs = assign_action(e);
    if (enabled("L4") && fs.size() == 1 && fs[0].space.kind == SpaceKind::CP && fs[0].act == Act::Conj) {
      const int v = fs[0].space.params[0] + 1;
      add(node("L4", LeafKind::Cited, Side::Lower, v, {}, {fact_leaf("F8", v)}));
      add(node("L4", LeafKind::Cited, Side::Upper, v, {}, {fact_leaf("F8", v)}));
    }
    if (!enabled("E1")) return;
    int r = 0;
    std::vector<int> free_spheres;
    std::vector<int> surfaces;
    for (const auto& f : fs) {
      if (f.act == Act::Refl && f.space.kind == SpaceKind::Sphere) {
        ++r;
      } else if (f.act == Act::Antipodal && f.space.kind == SpaceKind::Sphere) {
        free_spheres.push_back(f.space.params[0]);
      } else if (f.act == Act::Antipodal && f.space.kind == SpaceKind::SurfaceO) {
        surfaces.push_back(f.space.params[0]);
      } else {
        return;
      }
    }
    SpaceExpr quotient;
    if (surfaces.size() == 1 && free_spheres.empty()) {
      quotient = make_space(SpaceKind::SurfaceN, {surfaces[0] + 1});
    } else if (surfaces.empty() && !free_spheres.empty()) {
      quotient = make_space(SpaceKind::PPS, free_spheres);
    } else {
      return;
    }
    const std::string note = "N/sigma = " + render(quotient) + ", r = " + std::to_string(r);
    if (auto c = cl(quotient, FieldTag::GF2)) add(node("E1", LeafKind::Computed, Side::Lower, c->value + r + 1, note + "; " + c->note));
    BoundResult b = sub(quotient, Invariant::Cat);
    if (b.upper) add(node("E1", LeafKind::Computed, Side::Upper, *b.upper + r, note, side_nodes(b, Side::Upper)));
  }

  void eqtc_rules(const SpaceExpr& e) {
    const auto fs = assign_action(e);
    if (enabled("L4") && fs.size() == 1 && fs[0].space.kind == SpaceKind::Sphere && fs[0].act == Act::Antipodal) {
      const int v = fs[0].space.params[0] % 2 ? 2 : 3;
      add(node("L4", LeafKind::Cited, Side::Lower, v, {}, {fact_leaf("F5", v)}));
      add(node("L4", LeafKind::Cited, Side::Upper, v, {}, {fact_leaf("F5", v)}));
    }
    if (enabled("U2")) {
      BoundResult c = sub(e, Invariant::EqCat);
      if (c.upper) add(node("U2", LeafKind::Computed, Side::Upper, 2 * *c.upper - 1, {}, side_nodes(c, Side::Upper)));
    }
    // Split into sphere factors and the remaining space N.
    std::vector<EqFactor> spheres, rest;
    for (const auto& f : fs) (f.space.kind == SpaceKind::Sphere ? spheres : rest).push_back(f);
    if (rest.empty()) return;
    const int r = static_cast<int>(spheres.size());
    int k = 0;
    bool big = true, all_p0 = true, all_p2 = true;
    for (const auto& s : spheres) {
      const int n = s.space.params[0];
      if (n % 2 == 0) ++k;
      if (n < 2) big = false;
      const int pp = s.act == Act::Antipodal ? 0 : s.p;
      if (pp != 0) all_p0 = false;
      if (pp < 2) all_p2 = false;
    }
    if (!big || (!all_p0 && !all_p2)) return;
    std::vector<SpaceExpr> nparts;
    Z2Action naction;
    bool has_conj = false, has_anti = false;
    for (const auto& f : rest) {
      nparts.push_back(f.space);
      (f.act == Act::Conj ? has_conj : has_anti) = true;
    }
    if (has_conj) naction.tags.push_back({ActionKind::Conjugation, {}});
    if (has_anti) naction.tags.push_back({ActionKind::Antipodal, {}});
    const SpaceExpr n_plain = make_product(nparts);
    const SpaceExpr n_z2 = make_z2(n_plain, naction);
    const std::string counts = "r = " + std::to_string(r) + ", k = " + std::to_string(k) + ", N = " + render(n_z2);

    if (enabled("E2")) {
      if (auto z = zcl(n_plain, FieldTag::Rational)) {
        add(node("E2", LeafKind::Computed, Side::Lower, r + k + z->value + 1, counts + "; " + z->note));
      }
      if (r > 0) {
        BoundResult nt = sub(n_z2, Invariant::EqTC);
        if (nt.upper) {
          const int v = all_p0 ? r + k + *nt.upper : 2 * r + *nt.upper;
          add(node("E2", LeafKind::Computed, Side::Upper, v, counts + (all_p0 ? ", p_i = 0" : ", p_i >= 2"),
                   side_nodes(nt, Side::Upper)));
        }
      }
    }
    if (enabled("E3") && all_p0 && rest.size() == 1 && rest[0].act == Act::Conj) {
      const SpaceExpr& m = rest[0].space;
      if (m.kind == SpaceKind::CP) {
        const int v = r + k + 2 * m.params[0] + 1;
        both("E3", LeafKind::Cited, v, v, counts);
      } else if (m.kind == SpaceKind::Grassmann) {
        const int v = 2 * m.params[0] * (m.params[1] - m.params[0]) + r + k + 1;
        both("E3", LeafKind::Cited, v, v, counts);
      }
    }
  }
};

Json value_json(const std::optional<int>& v) { return v ? Json(*v) : Json("unbounded"); }

Json node_json(const DerivationNode& n) {
  Json j;
  j["rule"] = n.rule;
  j["cite"] = n.cite;
  j["kind"] = n.kind == LeafKind::Computed ? "COMPUTED" : "CITED";
  j["side"] = n.side == Side::Lower ? "lower" : n.side == Side::Upper ? "upper" : "info";
  j["value"] = value_json(n.value);
  if (!n.target.empty()) j["target"] = n.target;
  if (!n.note.empty()) j["note"] = n.note;
  j["children"] = Json::array();
  for (const auto& c : n.children) j["children"].push_back(node_json(c));
  return j;
}

void format_node(std::ostringstream& out, const DerivationNode& n, int depth) {
  out << std::string(static_cast<std::size_t>(2 * depth), ' ');
  out << (n.side == Side::Lower ? ">= " : n.side == Side::Upper ? "<= " : "~  ");
  out << (n.value ? std::to_string(*n.value) : std::string("inf")) << "  " << n.rule;
  if (!n.target.empty()) out << "  " << n.target;
  out << "  [" << (n.kind == LeafKind::Computed ? "COMPUTED" : "CITED") << "] " << n.cite;
  if (!n.note.empty()) out << "  (" << n.note << ")";
  out << "\n";
  for (const auto& c : n.children) format_node(out, c, depth + 1);
}

}  // namespace

BoundResult evaluate(const SpaceExpr& e, Invariant inv, const EvalOptions& opts) {
  validate(e);
  Engine engine(opts);
  return engine.eval(e, inv);
}

CoverEntry cover_size(const SpaceExpr& z2space, CoverKind kind) {
  if (z2space.kind != SpaceKind::Z2Product)
    throw Error(Errc::NotInCatalog, "covers are catalogued for Z2 spaces only: " + render(z2space));
  std::vector<EqFactor> fs;
  try {
    fs = assign_action(z2space);
  } catch (const Error& err) {
    if (err.code() == Errc::UnsupportedCombination) throw Error(Errc::NotInCatalog, err.what());
    throw;
  }
  const CoverFact c = fibre_cover(fibre_of(fs), kind);
  return {c.q, fact_cite(c.fact)};
}

Json bound_to_json(const BoundResult& r) {
  Json j;
  j["invariant"] = std::string(invariant_name(r.invariant));
  j["expr"] = r.expr;
  j["lower"] = r.lower;
  j["upper"] = value_json(r.upper);
  j["exact"] = r.exact();
  j["derivation"] = Json::array();
  for (const auto& n : r.derivation) j["derivation"].push_back(node_json(n));
  return j;
}

std::string format_bound(const BoundResult& r) {
  std::ostringstream out;
  out << invariant_name(r.invariant) << "(" << r.expr << ") in [" << r.lower << ", "
      << (r.upper ? std::to_string(*r.upper) : std::string("unbounded")) << "]" << (r.exact() ? " exact" : "") << "\n";
  for (const auto& n : r.derivation) format_node(out, n, 1);
  return out.str();
}

}  // namespace lstc
