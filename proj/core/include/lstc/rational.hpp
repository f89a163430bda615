#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lstc {

using Rational = mpq_class;

enum class FieldTag { GF2, Rational };

std::string_view field_name(FieldTag field);
FieldTag parse_field(std::string_view text);

/// Canonical text form: "p" or "p/q" in lowest terms.
std::string to_string(const Rational& value);
Rational parse_rational(std::string_view text);

/// Maps a rational into the field: identity over Q, reduction mod 2 over GF(2).
/// Throws BadParameter for an even denominator over GF(2).
Rational to_field(FieldTag field, const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace lstc
