#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lstc/serialize.hpp"
#include "lstc/space_expr.hpp"

namespace lstc {

enum class Invariant { Cat, TC, EqCat, EqTC };

std::string_view invariant_name(Invariant inv);
Invariant parse_invariant(std::string_view text);

enum class Side { Lower, Upper, Info };
enum class LeafKind { Computed, Cited };

struct DerivationNode {
  std::string rule;
  std::string cite;
  LeafKind kind = LeafKind::Computed;
  Side side = Side::Lower;
  std::optional<int> value;  // nullopt = unbounded
  std::string target;        // e.g. "TC(K(3))"
  std::string note;
  std::vector<DerivationNode> children;
};

struct BoundResult {
  Invariant invariant = Invariant::Cat;
  std::string expr;
  int lower = 1;
  std::optional<int> upper;  // nullopt = unbounded
  bool exact() const { return upper && *upper == lower; }
  std::vector<DerivationNode> derivation;
};

struct EvalOptions {
  std::set<std::string> disabled_rules;
  std::size_t max_cl_dim = 4096;
  std::size_t max_zcl_dim = 32;
};

BoundResult evaluate(const SpaceExpr& e, Invariant inv, const EvalOptions& opts = {});

struct RuleInfo {
  std::string id;
  std::string direction;  // lower, upper, both, info
  std::string statement;
  std::string citation;
};

/// Stable-ordered inventory of inference rules.
const std::vector<RuleInfo>& list_rules();

struct FactInfo {
  std::string id;
  std::string statement;
  std::string citation;
};

/// External results and cover cardinalities consumed as cited values.
const std::vector<FactInfo>& list_facts();

enum class CoverKind { Categorical, MotionPlanning };

struct CoverEntry {
  int q = 1;
  std::string citation;
};

/// Size of the invariant cover for a Z2 space such as Z2[conj]{T(4)}; NotInCatalog otherwise.
CoverEntry cover_size(const SpaceExpr& z2space, CoverKind kind = CoverKind::MotionPlanning);

Json bound_to_json(const BoundResult& r);
std::string format_bound(const BoundResult& r);

}  // namespace lstc
