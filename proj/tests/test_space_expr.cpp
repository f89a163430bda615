#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lstc/error.hpp"
#include "lstc/rings.hpp"
#include "lstc/space_expr.hpp"

using namespace lstc;

namespace {

std::size_t syntax_position(const std::string& text) {
  try {
    parse_space_expr(text);
  } catch (const SyntaxError& e) {
    return e.position();
  }
  FAIL("no syntax error for " << text);
  return 0;
}

Errc code_of(const std::string& text) {
  try {
    parse_space_expr(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for " << text);
  return Errc::Internal;
}

}  // namespace

TEST_CASE("families") {
  const SpaceExpr k = parse_space_expr("K(3)");
  CHECK(k.kind == SpaceKind::Klein);
  CHECK(k.params == std::vector<int>{3});

  const SpaceExpr x = parse_space_expr("X(RP(1); (1,1),(1,1))");
  CHECK(x.kind == SpaceKind::Gpps);
  REQUIRE(x.children.size() == 1);
  CHECK(x.children[0] == make_space(SpaceKind::RP, {1}));
  CHECK(x.factors == std::vector<GppsFactor>{{1, 1}, {1, 1}});

  const SpaceExpr dg = parse_space_expr("DG(2,4;[1,3])");
  CHECK(dg.kind == SpaceKind::DoldGrassmann);
  CHECK(dg.params == std::vector<int>{2, 4, 1, 3});

  const SpaceExpr z = parse_space_expr("Z2[conj/antipodal]{CP(2)*S(2)*S(3)}");
  CHECK(z.kind == SpaceKind::Z2Product);
  CHECK(z.action.tags.size() == 2);
  CHECK(flatten_product(z.children[0]).size() == 3);
}

TEST_CASE("products are left-associative and whitespace is ignored") {
  const SpaceExpr p = parse_space_expr(" S(1) * S(2)*S( 3 ) ");
  REQUIRE(p.kind == SpaceKind::Product);
  CHECK(p.children[0].kind == SpaceKind::Product);
  CHECK(p.children[1] == make_space(SpaceKind::Sphere, {3}));
  CHECK(render(p) == "S(1)*S(2)*S(3)");
  CHECK(render(parse_space_expr("S(1)*(S(2)*S(3))")) == "S(1)*(S(2)*S(3))");
}

TEST_CASE("parse, render, parse round trip") {
  for (const char* text :
       {"S(3)", "RP(4)", "CP(2)", "T(3)", "Gr(2,5)", "SigO(2)", "SigN(3)", "P(1,1,5)", "K(4)", "Xg(1,3)",
        "DG(1,3;[2,2])", "X(SigN(3);(2,2),(3,2))", "X(P(1,2);(2,0))", "CP(2)*(S(2)*S(3))", "(RP(2)*RP(3))*K(2)",
        "Z2[refl(1,2)/antipodal]{S(1)*S(2)*SigO(2)}", "Z2[conj]{T(4)}"}) {
    CAPTURE(text);
    const SpaceExpr e = parse_space_expr(text);
    const SpaceExpr again = parse_space_expr(render(e));
    CHECK(again == e);
    CHECK(render(again) == render(e));
  }
}

TEST_CASE("syntax errors report the offset") {
  CHECK(syntax_position("K(") == 2);
  CHECK(syntax_position("Q(3)") == 0);
  CHECK(syntax_position("S(3)*") == 5);
  CHECK(syntax_position("S(3) S(2)") == 5);
  CHECK(syntax_position("DG(2,4,[1])") == 6);
  CHECK(syntax_position("Z2[flip]{S(2)}") == 3);
  try {
    parse_space_expr("K(");
  } catch (const SyntaxError& e) {
    CHECK(e.expected() == std::vector<std::string>{"integer"});
  }
}

TEST_CASE("parameter errors") {
  CHECK(code_of("K(1)") == Errc::ParameterError);
  CHECK(code_of("Gr(3,3)") == Errc::ParameterError);
  CHECK(code_of("S(0)") == Errc::ParameterError);
  CHECK(code_of("Xg(1,1)") == Errc::ParameterError);
  CHECK(code_of("X(S(2);(1,1))") == Errc::ParameterError);
  CHECK(code_of("X(RP(2);(2,3))") == Errc::ParameterError);
  CHECK(code_of("Gr(2,4,1)") == Errc::ParameterError);
}

TEST_CASE("structural dimension") {
  CHECK(structural_dim(parse_space_expr("Gr(2,5)")) == 12);
  CHECK(structural_dim(parse_space_expr("DG(2,4;[1,3])")) == 12);
  CHECK(structural_dim(parse_space_expr("X(SigN(3);(2,2),(3,2))")) == 7);
  CHECK(structural_dim(parse_space_expr("Z2[conj/antipodal]{CP(2)*S(2)*S(3)}")) == 9);
  CHECK(structural_dim(parse_space_expr("Xg(2,5)")) == 5);
}

TEST_CASE("rings from expressions") {
  CHECK(ring_for_expr(parse_space_expr("X(RP(1);(1,1),(1,1))"), FieldTag::GF2).dim() == klein_ring(3).dim());
  CHECK(ring_for_expr(parse_space_expr("Gr(2,4)"), FieldTag::Rational).dim() == 6);
  CHECK(ring_for_expr(parse_space_expr("CP(2)*S(3)"), FieldTag::Rational).dim() == 6);
  CHECK(ring_for_expr(parse_space_expr("X(P(1,2);(2,0))"), FieldTag::GF2).dim() == 8);
  CHECK(ring_for_expr(parse_space_expr("X(SigN(3);(2,2))"), FieldTag::GF2).dim() == 10);
  try {
    ring_for_expr(parse_space_expr("K(3)"), FieldTag::Rational);
    FAIL("expected RingUnavailable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RingUnavailable);
  }
}
