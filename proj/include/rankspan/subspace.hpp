#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "rankspan/linalg.hpp"
#include "rankspan/matrix.hpp"

namespace rankspan {

/// Linear subspace of Mat_{n,p}(F_q).
///
/// Stored as the reduced echelon basis of the row-major vectorizations, so
/// two subspaces are equal exactly when their bases compare equal. The
/// annihilator (a basis of the linear forms vanishing on V) is kept alongside
/// for O(codim) membership tests.
class MatSubspace {
 public:
  static MatSubspace from_basis(Fq field, std::size_t rows, std::size_t cols, std::span<const FqMat> mats);
  static MatSubspace from_vectors(Fq field, std::size_t rows, std::size_t cols, const std::vector<Vec>& vectors);
  static MatSubspace zero(Fq field, std::size_t rows, std::size_t cols);
  static MatSubspace full(Fq field, std::size_t rows, std::size_t cols);

  const Fq& field() const noexcept { return field_; }
  unsigned q() const noexcept { return field_.q(); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t ambient_dim() const noexcept { return rows_ * cols_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t codim() const noexcept { return ambient_dim() - dim(); }

  const std::vector<Vec>& basis_vectors() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  const std::vector<Vec>& annihilator() const noexcept { return annihilator_; }
  std::vector<FqMat> basis() const;
  FqMat basis_matrix(std::size_t i) const;

  bool contains(const FqMat& m) const;
  bool contains_vector(std::span<const Elem> v) const;
  bool contains(const MatSubspace& other) const;
  /// sum_i coeffs[i] * basis[i].
  FqMat element(std::span<const Elem> coeffs) const;
  /// Canonical representative of m modulo V.
  FqMat reduce(const FqMat& m) const;

  bool same_ambient(const MatSubspace& other) const noexcept {
    return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const MatSubspace& a, const MatSubspace& b) {
    return a.same_ambient(b) && a.basis_ == b.basis_;
  }

 private:
  MatSubspace(Fq field, std::size_t rows, std::size_t cols, RowEchelon echelon);

  Fq field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
  std::vector<Vec> annihilator_;
};

MatSubspace intersect(const MatSubspace& a, const MatSubspace& b);
MatSubspace sum(const MatSubspace& a, const MatSubspace& b);

/// { P M Q : M in V } for invertible P (n x n) and Q (p x p).
MatSubspace equiv_act(const FqMat& p, const MatSubspace& v, const FqMat& q);

/// Orthogonal of V for the trace form (A, B) -> tr(AB); square ambient only.
MatSubspace trace_orthogonal(const MatSubspace& v);

/// Matrices supported on the listed coordinates (row-major positions).
MatSubspace coordinate_subspace(Fq field, std::size_t rows, std::size_t cols, std::span<const std::size_t> positions);

/// R_i(V): elements of V whose rows other than i vanish. 0-based i.
MatSubspace row_restriction(const MatSubspace& v, std::size_t i);

/// { M in Mat_{n,r} : [M | 0] in V }.
MatSubspace column_restriction(const MatSubspace& v, std::size_t r);

enum class HyperplaneClass { Sl2, T2Plus };
std::string_view to_string(HyperplaneClass c);

/// Equivalence class of a hyperplane of Mat_2(F_2), read off the rank of the
/// unique non-zero matrix of its trace-orthogonal.
HyperplaneClass classify_hyperplane_2x2_f2(const MatSubspace& h);

// Named spaces.
MatSubspace sl2_f2();
/// Trace-zero matrices of Mat_n.
MatSubspace trace_zero(Fq field, std::size_t n);
/// T_n^+: upper triangular.
MatSubspace upper_triangular(Fq field, std::size_t n);
/// T_k^{++}: strictly upper triangular.
MatSubspace strictly_upper_triangular(Fq field, std::size_t k);
/// T_n^-: lower triangular.
MatSubspace lower_triangular(Fq field, std::size_t n);

struct NamedSpaceParams {
  unsigned q = 2;
  std::size_t n = 2;
  std::size_t p = 0;  // 0 means square (p = n)
};

/// Dispatches on "sl2_f2", "t_upper", "t_strict_upper", "t_lower", "sl", "full", "zero".
MatSubspace named_space(std::string_view name, const NamedSpaceParams& params);

}  // namespace rankspan
