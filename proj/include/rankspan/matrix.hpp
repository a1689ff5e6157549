#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rankspan/field.hpp"

namespace rankspan {

/// Dense n x p matrix over F_q, entries stored row-major.
///
/// Row-major order is also the vectorization Mat_{n,p} -> F_q^{np} used by
/// every subspace in the library.
class FqMat {
 public:
  /// Zero matrix.
  FqMat(Fq field, std::size_t rows, std::size_t cols);
  /// Takes ownership of `entries`; throws InvalidArgument on a size mismatch
  /// or a value outside [0, q).
  FqMat(Fq field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

  /// Convenience for literals; integers are reduced mod q.
  static FqMat from_rows(Fq field, const std::vector<std::vector<int>>& rows);

  const Fq& field() const noexcept { return field_; }
  unsigned q() const noexcept { return field_.q(); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_zero() const noexcept;

  Elem operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }
  Elem at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Elem v);

  std::span<const Elem> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  /// Row-major vectorization.
  std::span<const Elem> entries() const noexcept { return entries_; }
  std::vector<Elem>& mutable_entries() noexcept { return entries_; }

  friend bool operator==(const FqMat&, const FqMat&) = default;

 private:
  Fq field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> entries_;
};

FqMat zero_matrix(Fq field, std::size_t rows, std::size_t cols);
FqMat identity(Fq field, std::size_t n);
/// E_{i,j}: single 1 at (i, j), 0-based.
FqMat elementary(Fq field, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);
/// J_k = [[I_k, 0], [0, 0]] in Mat_{n,p}.
FqMat block_identity(Fq field, std::size_t rows, std::size_t cols, std::size_t k);

FqMat transpose(const FqMat& m);
FqMat operator+(const FqMat& a, const FqMat& b);
FqMat operator-(const FqMat& a, const FqMat& b);
FqMat operator*(const FqMat& a, const FqMat& b);
FqMat scale(Elem c, const FqMat& m);

std::size_t rank(const FqMat& m);
Elem det(const FqMat& m);
/// Reduced row echelon form.
FqMat rref(const FqMat& m);
bool is_invertible(const FqMat& m);
/// Throws InvalidArgument when singular.
FqMat inverse(const FqMat& m);

/// { lambda in F_q : det(M - lambda I) = 0 }, ascending.
std::vector<Elem> spectrum_in_field(const FqMat& m);
/// Sp(M) is a subset of {0}.
bool has_zero_spectrum(const FqMat& m);

}  // namespace rankspan
