#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lstc/linalg.hpp"
#include "lstc/rational.hpp"

namespace lstc {

struct GeneratorSpec {
  std::string name;
  int degree = 1;
  bool square_zero = false;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Exponent vector, one entry per generator. Over Q the monomial stands for the
/// ordered product x_1^{e_1} ... x_n^{e_n}.
using Monomial = std::vector<int>;

struct Term {
  Rational coeff;
  Monomial exponents;

  friend bool operator==(const Term& a, const Term& b) {
    return a.coeff == b.coeff && a.exponents == b.exponents;
  }
};

/// Polynomial in the free graded-commutative algebra on the generators.
using Polynomial = std::vector<Term>;

struct Presentation {
  FieldTag field = FieldTag::GF2;
  std::vector<GeneratorSpec> generators;
  std::vector<Polynomial> relations;
  /// Total Steenrod square of each generator, keyed by generator name.
  std::map<std::string, Polynomial> steenrod;
  /// Expected top degree; bounds the completion (see BuildOptions).
  std::optional<int> top_degree;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

struct BuildOptions {
  /// Completion gives up once a normal-form monomial appears above this degree.
  /// Defaults to 4x the declared (or implied) top degree.
  std::optional<int> degree_cap;
};

namespace detail {
struct AlgebraData;
}

class GradedAlgebra;

/// A finite formal sum of basis monomials of one algebra.
class Element {
 public:
  Element() = default;

  bool is_zero() const noexcept { return terms_.empty(); }
  const SparseVector& terms() const noexcept { return terms_; }
  /// Degree when homogeneous and nonzero.
  std::optional<int> degree() const;
  bool is_homogeneous() const;
  /// Degree-d part.
  Element component(int d) const;
  /// Coefficient of basis element i.
  Rational coefficient(std::uint32_t i) const;

  Element operator+(const Element& other) const;
  Element operator-(const Element& other) const;
  Element operator-() const;
  Element operator*(const Element& other) const;
  Element scaled(const Rational& c) const;

  bool same_ambient(const Element& other) const noexcept { return ambient_ == other.ambient_; }
  friend bool operator==(const Element& a, const Element& b);

 private:
  friend class GradedAlgebra;
  Element(std::shared_ptr<const detail::AlgebraData> ambient, SparseVector terms)
      : ambient_(std::move(ambient)), terms_(std::move(terms)) {}

  std::shared_ptr<const detail::AlgebraData> ambient_;
  SparseVector terms_;
};

/// A finite-dimensional graded(-commutative) algebra with a monomial basis.
///
/// Immutable after construction; copies share the same underlying data, and
/// elements remember which algebra they belong to.
class GradedAlgebra {
 public:
  FieldTag field() const;
  const Presentation& presentation() const;
  const std::vector<GeneratorSpec>& generators() const;
  std::size_t num_generators() const { return generators().size(); }

  std::size_t dim() const;
  int top_degree() const;
  int degree(std::uint32_t basis_index) const;
  const Monomial& basis_monomial(std::uint32_t basis_index) const;
  /// Half-open index range of basis elements in degree d (empty outside 0..top).
  std::pair<std::uint32_t, std::uint32_t> degree_range(int d) const;
  std::optional<std::uint32_t> index_of(const Monomial& m) const;

  Element zero() const;
  Element one() const;
  Element generator(std::size_t i) const;
  Element generator(const std::string& name) const;
  Element basis_element(std::uint32_t i) const;
  Element element(const SparseVector& terms) const;
  /// Normal form of a polynomial in the generators.
  Element element(const Polynomial& p) const;
  /// Lifts an element back to a polynomial over basis monomials.
  Polynomial to_polynomial(const Element& x) const;

  /// Product of two basis elements, as coordinates.
  SparseVector multiply_basis(std::uint32_t i, std::uint32_t j) const;

  bool owns(const Element& x) const;
  bool has_steenrod() const;
  /// Total square of generator i, if known.
  std::optional<Element> steenrod_of_generator(std::size_t i) const;

  std::string render(const Element& x) const;
  std::string render_monomial(const Monomial& m) const;

  /// Free-form notes attached by constructors (e.g. extensions used).
  const std::vector<std::string>& notes() const;
  GradedAlgebra with_note(std::string note) const;

  /// For algebras built by tensor(): the basis pair of index i.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> tensor_pair(std::uint32_t i) const;
  std::optional<std::uint32_t> tensor_index(std::uint32_t left, std::uint32_t right) const;

  friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) { return a.data_ == b.data_; }

 private:
  friend GradedAlgebra build_algebra(const Presentation&, const BuildOptions&);
  friend GradedAlgebra tensor(const GradedAlgebra&, const GradedAlgebra&);
  explicit GradedAlgebra(std::shared_ptr<const detail::AlgebraData> data) : data_(std::move(data)) {}

  std::shared_ptr<const detail::AlgebraData> data_;
};

GradedAlgebra build_algebra(const Presentation& p, const BuildOptions& options = {});

/// Cup product. Throws MixedAmbient when x or y belongs to another algebra.
Element multiply(const GradedAlgebra& a, const Element& x, const Element& y);

/// Graded tensor product with Koszul signs; generators of b are renamed with a
/// trailing ' when they clash with names in a.
GradedAlgebra tensor(const GradedAlgebra& a, const GradedAlgebra& b);

/// Kernel of the multiplication map A (x) A -> A, in the coordinates of tensor(a, a).
Subspace multiplication_kernel(const GradedAlgebra& a);

/// Total Steenrod square, extended from generator data by the Cartan formula.
Element steenrod_apply(const GradedAlgebra& a, const Element& x);

/// The ground field viewed as an algebra.
GradedAlgebra unit_algebra(FieldTag field);

}  // namespace lstc
