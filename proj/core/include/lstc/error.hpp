#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lstc {

enum class Errc {
  NonHomogeneousRelation,
  InfiniteDimensional,
  UnsupportedRationalPresentation,
  MixedAmbient,
  FieldMismatch,
  NoSteenrodData,
  BadParameter,
  BadAlpha,
  BadW1,
  UnsupportedCombination,
  RingUnavailable,
  NotInCatalog,
  SyntaxError,
  ParameterError,
  Internal,
};

std::string_view errc_name(Errc code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by the space-expression parser.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected);
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

}  // namespace lstc
