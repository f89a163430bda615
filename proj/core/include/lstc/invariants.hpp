#pragma once

#include <cstddef>
#include <vector>

#include "lstc/algebra.hpp"

namespace lstc {

struct WitnessProduct {
  std::vector<Element> factors;
  Element value;  // product of the factors, nonzero unless factors is empty
};

struct CupLengthResult {
  int length = 0;
  WitnessProduct witness;
};

struct ZeroDivisorResult {
  int length = 0;
  WitnessProduct witness;  // elements of `square`
  GradedAlgebra square;    // tensor(A, A)
};

/// Largest t with (A+)^t != 0, with a product of t generators as witness.
CupLengthResult cup_length(const GradedAlgebra& a);

/// Largest t with Z^t != 0 for Z = ker(A (x) A -> A). The witness is a product of
/// basic divisors x (x) 1 - 1 (x) x over generators x.
ZeroDivisorResult zero_divisor_cup_length(const GradedAlgebra& a);

std::vector<std::size_t> poincare_polynomial(const GradedAlgebra& a);

/// dim H^d = 1, nothing above d, and every pairing H^k x H^{d-k} -> H^d has no left kernel.
bool duality_check(const GradedAlgebra& a, int d);

}  // namespace lstc
