#include "lstc/rational.hpp"

#include "lstc/error.hpp"

namespace lstc {

std::string_view field_name(FieldTag field) { return field == FieldTag::GF2 ? "gf2" : "q"; }

FieldTag parse_field(std::string_view text) {
  if (text == "gf2" || text == "GF2" || text == "z2" || text == "Z2") return FieldTag::GF2;
  if (text == "q" || text == "Q" || text == "rational" || text == "Rational") return FieldTag::Rational;
  throw Error(Errc::BadParameter, "unknown field '" + std::string(text) + "'");
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational value;
  const std::string s(text);
  if (s.empty() || value.set_str(s, 10) != 0 || value.get_den() == 0) {
    throw Error(Errc::BadParameter, "not a rational number: '" + s + "'");
  }
  value.canonicalize();
  return value;
}

Rational to_field(FieldTag field, const Rational& value) {
  if (field == FieldTag::Rational) return value;
  if (mpz_even_p(value.get_den().get_mpz_t())) {
    throw Error(Errc::BadParameter, "coefficient " + to_string(value) + " has no image in GF(2)");
  }
  return mpz_odd_p(value.get_num().get_mpz_t()) ? Rational(1) : Rational(0);
}

}  // namespace lstc
