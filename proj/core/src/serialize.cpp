#include "lstc/serialize.hpp"

#include "lstc/error.hpp"

namespace lstc {

namespace {

Json term_to_json(const Rational& c, const Monomial& m) {
  Json t = Json::array();
  t.push_back(to_string(c));
  t.push_back(m);
  return t;
}

}  // namespace

Json polynomial_to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& t : p) out.push_back(term_to_json(t.coeff, t.exponents));
  return out;
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw Error(Errc::BadParameter, "polynomial must be a JSON array");
  Polynomial out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[1].is_array())
      throw Error(Errc::BadParameter, "term must be [coeff, exponents]");
    Rational c = t[0].is_string() ? parse_rational(t[0].get<std::string>()) : Rational(t[0].get<long>());
    out.push_back(Term{std::move(c), t[1].get<Monomial>()});
  }
  return out;
}

Json presentation_to_json(const Presentation& p) {
  Json j;
  j["field"] = std::string(field_name(p.field));
  Json gens = Json::array();
  for (const auto& g : p.generators) {
    Json e;
    e["name"] = g.name;
    e["degree"] = g.degree;
    e["square_zero"] = g.square_zero;
    gens.push_back(std::move(e));
  }
  j["generators"] = std::move(gens);
  Json rels = Json::array();
  for (const auto& r : p.relations) rels.push_back(polynomial_to_json(r));
  j["relations"] = std::move(rels);
  Json sq = Json::object();
  for (const auto& [name, poly] : p.steenrod) sq[name] = polynomial_to_json(poly);
  j["steenrod"] = std::move(sq);
  if (p.top_degree) j["top_degree"] = *p.top_degree;
  return j;
}

Presentation presentation_from_json(const Json& j) {
  try {
    Presentation p;
    p.field = parse_field(j.at("field").get<std::string>());
    for (const auto& g : j.at("generators")) {
      p.generators.push_back(GeneratorSpec{g.at("name").get<std::string>(), g.at("degree").get<int>(),
                                           g.value("square_zero", false)});
    }
    for (const auto& r : j.at("relations")) p.relations.push_back(polynomial_from_json(r));
    if (j.contains("steenrod"))
      for (const auto& [name, poly] : j.at("steenrod").items()) p.steenrod[name] = polynomial_from_json(poly);
    if (j.contains("top_degree")) p.top_degree = j.at("top_degree").get<int>();
    return p;
  } catch (const Json::exception& e) {
    throw Error(Errc::BadParameter, std::string("malformed presentation: ") + e.what());
  }
}

Json element_to_json(const GradedAlgebra& a, const Element& x) { return polynomial_to_json(a.to_polynomial(x)); }

Json algebra_to_json(const GradedAlgebra& a, bool with_table) {
  Json j;
  j["field"] = std::string(field_name(a.field()));
  j["dim"] = a.dim();
  j["top_degree"] = a.top_degree();
  Json poincare = Json::array();
  for (int d = 0; d <= a.top_degree(); ++d) {
    const auto [lo, hi] = a.degree_range(d);
    poincare.push_back(hi - lo);
  }
  j["poincare"] = std::move(poincare);
  Json basis = Json::array();
  for (std::uint32_t i = 0; i < a.dim(); ++i) {
    Json b;
    b["index"] = i;
    b["degree"] = a.degree(i);
    b["monomial"] = a.render_monomial(a.basis_monomial(i));
    b["exponents"] = a.basis_monomial(i);
    basis.push_back(std::move(b));
  }
  j["basis"] = std::move(basis);
  if (with_table) {
    Json table = Json::array();
    for (std::uint32_t i = 0; i < a.dim(); ++i)
      for (std::uint32_t k = 0; k < a.dim(); ++k) {
        const Element p = a.element(a.multiply_basis(i, k));
        if (p.is_zero()) continue;
        Json row = Json::array();
        row.push_back(i);
        row.push_back(k);
        row.push_back(a.render(p));
        table.push_back(std::move(row));
      }
    j["products"] = std::move(table);
  }
  j["presentation"] = presentation_to_json(a.presentation());
  if (!a.notes().empty()) j["notes"] = a.notes();
  return j;
}

}  // namespace lstc
