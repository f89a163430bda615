#include "lstc/linalg.hpp"

#include <algorithm>

#include "lstc/error.hpp"

namespace lstc {

void axpy(FieldTag field, SparseVector& a, const Rational& scale, const SparseVector& b) {
  if (is_zero(scale) || b.empty()) return;
  SparseVector out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(std::move(*ia++));
    } else if (ia == a.end() || ib->first < ia->first) {
      Rational c = to_field(field, scale * ib->second);
      if (!is_zero(c)) out.emplace_back(ib->first, std::move(c));
      ++ib;
    } else {
      Rational c = to_field(field, ia->second + scale * ib->second);
      if (!is_zero(c)) out.emplace_back(ia->first, std::move(c));
      ++ia;
      ++ib;
    }
  }
  a = std::move(out);
}

SparseVector scaled(FieldTag field, const SparseVector& v, const Rational& scale) {
  SparseVector out;
  if (is_zero(scale)) return out;
  out.reserve(v.size());
  for (const auto& [i, c] : v) {
    Rational s = to_field(field, c * scale);
    if (!is_zero(s)) out.emplace_back(i, std::move(s));
  }
  return out;
}

Subspace::Subspace(FieldTag field, std::size_t ambient_dim) : field_(field), ambient_(ambient_dim) {}

SparseVector Subspace::reduce(const SparseVector& v) const {
  std::map<std::uint32_t, Rational> acc;
  for (const auto& [i, c] : v) {
    if (i >= ambient_) throw Error(Errc::Internal, "vector index outside the ambient space");
    Rational f = to_field(field_, c);
    if (!is_zero(f)) acc.emplace(i, std::move(f));
  }
  auto it = acc.begin();
  while (it != acc.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const std::uint32_t col = it->first;
    const Rational factor = it->second;
    // Row entries sit at columns >= col, so later iterator positions stay valid.
    for (const auto& [j, c] : row->second) {
      if (j == col) continue;
      auto [pos, inserted] = acc.try_emplace(j, 0);
      pos->second = to_field(field_, pos->second - factor * c);
      if (is_zero(pos->second)) acc.erase(pos);
    }
    it = acc.erase(it);
  }
  return SparseVector(acc.begin(), acc.end());
}

bool Subspace::insert(const SparseVector& v) {
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  if (r.front().second != 1) {
    const Rational inv = 1 / r.front().second;
    for (auto& [i, c] : r) c *= inv;
  }
  const std::uint32_t pivot = r.front().first;
  rows_.emplace(pivot, std::move(r));
  return true;
}

std::vector<SparseVector> Subspace::basis() const {
  std::map<std::uint32_t, SparseVector> reduced;
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    SparseVector row = it->second;
    const SparseVector snapshot = row;
    for (const auto& [j, c] : snapshot) {
      if (j == it->first) continue;
      auto other = reduced.find(j);
      if (other == reduced.end()) continue;
      Rational coeff = 0;
      for (const auto& [k, d] : row) {
        if (k == j) {
          coeff = d;
          break;
        }
      }
      axpy(field_, row, -coeff, other->second);
    }
    reduced.emplace(it->first, std::move(row));
  }
  std::vector<SparseVector> out;
  out.reserve(reduced.size());
  for (auto& [p, row] : reduced) out.push_back(std::move(row));
  return out;
}

std::vector<std::uint32_t> Subspace::pivots() const {
  std::vector<std::uint32_t> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

bool operator==(const Subspace& a, const Subspace& b) {
  if (a.field_ != b.field_ || a.ambient_ != b.ambient_ || a.dim() != b.dim()) return false;
  if (a.pivots() != b.pivots()) return false;
  return a.basis() == b.basis();
}

std::size_t matrix_rank(FieldTag field, std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (auto& r : rows)
    for (auto& c : r) c = to_field(field, c);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && is_zero(rows[pivot][col])) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const Rational inv = 1 / rows[rank][col];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || is_zero(rows[r][col])) continue;
      const Rational f = rows[r][col] * inv;
      for (std::size_t c = col; c < cols; ++c) rows[r][c] = to_field(field, rows[r][c] - f * rows[rank][c]);
    }
    ++rank;
  }
  return rank;
}

}  // namespace lstc
