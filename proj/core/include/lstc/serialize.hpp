#pragma once

#include <string>

#include <json.hpp>

#include "lstc/algebra.hpp"

namespace lstc {

using Json = nlohmann::ordered_json;

/// {field, generators:[{name,degree,square_zero}], relations:[[[coeff, exps]...]...],
///  steenrod:{name: [[coeff, exps]...]}, top_degree?}. Coefficients are strings.
Json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

/// Term map of an element as [[coeff, exps]...] over basis monomials.
Json element_to_json(const GradedAlgebra& a, const Element& x);

/// Basis, per-degree dimensions and the presentation; optionally the product table.
Json algebra_to_json(const GradedAlgebra& a, bool with_table = false);

}  // namespace lstc
