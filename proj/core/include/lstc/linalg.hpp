#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "lstc/rational.hpp"

namespace lstc {

/// Sparse coordinate vector, sorted by index, no zero entries.
using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;

/// a += scale * b, in the given field.
void axpy(FieldTag field, SparseVector& a, const Rational& scale, const SparseVector& b);
SparseVector scaled(FieldTag field, const SparseVector& v, const Rational& scale);

/// A linear subspace of field^n kept in echelon form.
///
/// Rows are stored semi-reduced (distinct leading columns, leading coefficient 1);
/// basis() returns the canonical reduced row echelon form, which is what equality
/// and serialization use. Membership and reduction are exact.
class Subspace {
 public:
  Subspace(FieldTag field, std::size_t ambient_dim);

  FieldTag field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  /// Returns true when v was not already in the span.
  bool insert(const SparseVector& v);

  /// Canonical remainder of v: no entries at pivot columns.
  SparseVector reduce(const SparseVector& v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  std::vector<SparseVector> basis() const;
  std::vector<std::uint32_t> pivots() const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  FieldTag field_;
  std::size_t ambient_;
  std::map<std::uint32_t, SparseVector> rows_;
};

/// Rank of a dense matrix over the field (used for small pairing matrices).
std::size_t matrix_rank(FieldTag field, std::vector<std::vector<Rational>> rows);

}  // namespace lstc
