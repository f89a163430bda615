#include "lstc/error.hpp"

#include <sstream>

namespace lstc {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NonHomogeneousRelation: return "NonHomogeneousRelation";
    case Errc::InfiniteDimensional: return "InfiniteDimensional";
    case Errc::UnsupportedRationalPresentation: return "UnsupportedRationalPresentation";
    case Errc::MixedAmbient: return "MixedAmbient";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NoSteenrodData: return "NoSteenrodData";
    case Errc::BadParameter: return "BadParameter";
    case Errc::BadAlpha: return "BadAlpha";
    case Errc::BadW1: return "BadW1";
    case Errc::UnsupportedCombination: return "UnsupportedCombination";
    case Errc::RingUnavailable: return "RingUnavailable";
    case Errc::NotInCatalog: return "NotInCatalog";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::ParameterError: return "ParameterError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

namespace {
std::string syntax_message(std::size_t position, const std::vector<std::string>& expected) {
  std::ostringstream out;
  out << "at offset " << position << ", expected ";
  if (expected.size() == 1) {
    out << expected.front();
  } else {
    out << "one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) out << (i ? ", " : "") << expected[i];
    out << "}";
  }
  return out.str();
}
}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected)
    : Error(Errc::SyntaxError, syntax_message(position, expected)),
      position_(position),
      expected_(std::move(expected)) {}

}  // namespace lstc
