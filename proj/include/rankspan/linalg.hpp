#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rankspan/field.hpp"

namespace rankspan {

using Vec = std::vector<Elem>;

/// Incrementally maintained reduced row echelon basis of a subspace of F_q^m.
///
/// Rows are kept sorted by pivot column, each pivot equal to 1 and every other
/// row zero in that column, so the row list is the unique canonical basis.
class RowEchelon {
 public:
  RowEchelon(Fq field, std::size_t width);

  const Fq& field() const noexcept { return field_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<Vec>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Adds v to the span; returns false if v was already in it.
  bool insert(std::span<const Elem> v);
  bool contains(std::span<const Elem> v) const;
  /// Canonical coset representative of v modulo the span (zero at every pivot).
  Vec reduce(std::span<const Elem> v) const;

 private:
  Fq field_;
  std::size_t width_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Canonical reduced echelon basis of span(vectors).
std::vector<Vec> canonical_basis(Fq field, std::size_t width, const std::vector<Vec>& vectors);

/// Basis of { x : <row, x> = 0 for every row }, in canonical form.
std::vector<Vec> null_space(Fq field, std::size_t width, const std::vector<Vec>& rows);

/// Coefficients c with sum_i c_i * generators[i] = target, if any.
std::optional<Vec> solve_combination(Fq field, const std::vector<Vec>& generators, std::span<const Elem> target);

Elem dot(const Fq& field, std::span<const Elem> a, std::span<const Elem> b);
/// y += c * x.
void axpy(const Fq& field, std::span<Elem> y, Elem c, std::span<const Elem> x);

}  // namespace rankspan
