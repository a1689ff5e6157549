#pragma once

#include <cstdint>

#include "rankspan/strata.hpp"
#include "rankspan/subspace.hpp"
#include "rankspan/verdict.hpp"

namespace rankspan {

/// Coset M_0 + H in Mat_{n,p}(F_q).
///
/// The stored point is the canonical representative of the coset (reduced
/// modulo H), so equal cosets compare equal member-wise.
class AffineMatSubspace {
 public:
  AffineMatSubspace(const FqMat& point, MatSubspace direction);

  const FqMat& point() const noexcept { return point_; }
  const MatSubspace& direction() const noexcept { return direction_; }
  const Fq& field() const noexcept { return direction_.field(); }
  std::size_t rows() const noexcept { return direction_.rows(); }
  std::size_t cols() const noexcept { return direction_.cols(); }
  std::size_t dim() const noexcept { return direction_.dim(); }
  std::size_t codim() const noexcept { return direction_.codim(); }

  bool is_linear() const noexcept { return point_.is_zero(); }
  bool contains(const FqMat& m) const;
  /// Vect(A): span of the direction and the point.
  MatSubspace linear_span() const;

  friend bool operator==(const AffineMatSubspace& a, const AffineMatSubspace& b) {
    return a.direction_ == b.direction_ && a.point_ == b.point_;
  }

 private:
  FqMat point_;
  MatSubspace direction_;
};

/// Applies M -> P M Q to point and direction.
AffineMatSubspace equiv_act(const FqMat& p, const AffineMatSubspace& a, const FqMat& q);

std::size_t min_rank(const AffineMatSubspace& a, std::uint64_t budget = default_budget());

/// np - C(k+1, 2).
std::size_t h_value(std::size_t n, std::size_t p, std::size_t k);

/// J_k + { [[T, *], [*, *]] : T strictly upper triangular k x k }.
///
/// When the coset is small enough to enumerate, its minimum rank is
/// re-checked on construction.
AffineMatSubspace extremal_affine(std::size_t n, std::size_t p, std::size_t k, Fq field,
                                  std::uint64_t budget = default_budget());

/// Vect(extremal_affine(n, p, r + 1)): codimension C(r+2, 2) - 1 and not
/// spanned by its rank-r matrices (re-checked when enumerable).
MatSubspace unspanned_subspace(std::size_t n, std::size_t p, std::size_t r, Fq field,
                               std::uint64_t budget = default_budget());

/// C(r+2, 2) - 1 < n, i.e. the construction sits where codim V < n.
bool unspanned_in_theorem_regime(std::size_t n, std::size_t r);

/// Flanders-type check for cosets avoiding rank p.
Verdict check_flanders(const AffineMatSubspace& a, std::uint64_t budget = default_budget());

enum class HBoundMode { Construct, Exhaustive };

/// CONSTRUCT checks the extremal coset reaches h(n,p,k) with min rank >= k;
/// EXHAUSTIVE scans every coset of dimension h + 1 for one with min rank >= k.
/// `scan_budget` caps the number of cosets in EXHAUSTIVE mode.
Verdict check_h_bound(std::size_t n, std::size_t p, std::size_t k, Fq field, HBoundMode mode,
                      std::uint64_t budget = default_budget(), std::uint64_t scan_budget = kDefaultBudget);

/// Number of cosets of dimension d in Mat_{n,p}(F_q): Gaussian binomial times q^(np-d).
std::uint64_t coset_count(std::size_t m, std::size_t d, unsigned q);

}  // namespace rankspan
