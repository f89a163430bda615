#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lstc/algebra.hpp"
#include "lstc/rings.hpp"

namespace lstc {

enum class SpaceKind {
  Sphere,         // S(n)
  RP,             // RP(n)
  CP,             // CP(n)
  Torus,          // T(n)
  Grassmann,      // Gr(d,n)
  SurfaceO,       // SigO(g)
  SurfaceN,       // SigN(h)
  PPS,            // P(n1,...,nr)
  Klein,          // K(n)
  Xg,             // Xg(g,n)
  DoldGrassmann,  // DG(d,n;[n1,...,nr])
  Gpps,           // X(base; (n1,p1),...)
  Product,        // a*b
  Z2Product,      // Z2[action]{expr}
};

enum class ActionKind { Conjugation, Antipodal, Reflection };

struct ActionTag {
  ActionKind kind = ActionKind::Conjugation;
  std::vector<int> params;  // reflection indices p_1..p_r
  friend bool operator==(const ActionTag&, const ActionTag&) = default;
};

/// Tags are matched to factors: conj acts on CP, Gr, T and S(1); refl(p..) hands its
/// p values to sphere factors in order; antipodal covers the remaining spheres and SigO.
struct Z2Action {
  std::vector<ActionTag> tags;
  friend bool operator==(const Z2Action&, const Z2Action&) = default;
};

struct SpaceExpr {
  SpaceKind kind = SpaceKind::Sphere;
  std::vector<int> params;          // DG: d, n, n1..nr
  std::vector<GppsFactor> factors;  // Gpps only
  std::vector<SpaceExpr> children;  // Gpps: base; Product: two; Z2Product: one
  Z2Action action;                  // Z2Product only

  friend bool operator==(const SpaceExpr&, const SpaceExpr&) = default;
};

SpaceExpr parse_space_expr(std::string_view text);
std::string render(const SpaceExpr& e);
std::string render(const Z2Action& a);

/// Parameter ranges; throws ParameterError.
void validate(const SpaceExpr& e);

/// Manifold dimension computed from the expression structure.
int structural_dim(const SpaceExpr& e);

/// Cohomology ring of the space; RingUnavailable when no constructor applies.
GradedAlgebra ring_for_expr(const SpaceExpr& e, FieldTag field);

/// Leaves of nested products, left to right.
std::vector<SpaceExpr> flatten_product(const SpaceExpr& e);

/// Convenience builders.
SpaceExpr make_space(SpaceKind kind, std::vector<int> params);
SpaceExpr make_product(SpaceExpr a, SpaceExpr b);
SpaceExpr make_product(const std::vector<SpaceExpr>& factors);
SpaceExpr make_z2(SpaceExpr e, Z2Action action);

}  // namespace lstc
