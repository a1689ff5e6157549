#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rankspan/random.hpp"
#include "rankspan/strata.hpp"
#include "rankspan/subspace.hpp"
#include "rankspan/verdict.hpp"

namespace rankspan {

/// Every element of V has in-field spectrum inside {0}. FAIL carries the
/// offending element and eigenvalue.
Verdict has_zero_spectrum_property(const MatSubspace& v, std::uint64_t budget = default_budget());

/// Index i (0-based) with R_i(V) = {0}.
struct ZeroRowWitness {
  std::size_t index;
  MatSubspace restriction;
};

/// Smallest i with R_i(V) = {0}; pure linear algebra. Throws NoZeroRowIndex.
ZeroRowWitness find_zero_row_index(const MatSubspace& v);

/// Cycle of a map f with E_{f(k),k} in V, and the matrix sum_k E_{f(i_k), i_k}.
struct CycleWitness {
  std::vector<std::size_t> f;
  std::vector<std::size_t> cycle;
  FqMat matrix;
};

/// Follows f from `start` until an index repeats and assembles the cycle
/// matrix. Throws InvalidArgument if some E_{f(k),k} is not in V.
CycleWitness build_cycle_witness(const MatSubspace& v, std::span<const std::size_t> f, std::size_t start = 0);

/// Checks every stated invariant: f closes the cycle, indices are distinct,
/// the matrix is the cycle matrix, lies in V, and has 1 as an eigenvalue
/// (the indicator vector of the cycle is fixed by it).
bool verify_cycle_witness(const MatSubspace& v, const CycleWitness& w);

/// M = [[A, 0], [L, alpha]] with A square of order n-1.
struct BlockDecomposition {
  FqMat a;
  FqMat l;
  Elem alpha;
};

/// Requires the last column of M to vanish above the diagonal.
BlockDecomposition decompose_last_column(const FqMat& m);
FqMat assemble(const BlockDecomposition& b);
/// K(M) for M whose last row vanishes: the top-left (n-1) x (n-1) block.
FqMat compress_last_row_zero(const FqMat& m);

/// W: elements of V whose last column vanishes above the diagonal.
MatSubspace last_column_constrained(const MatSubspace& v);
/// A(W) in Mat_{n-1}: image of W under the top-left block map.
MatSubspace top_left_image(const MatSubspace& w);

/// PASS iff dim V <= C(n, 2). Caller establishes the zero-spectrum property.
Verdict check_gerstenhaber_bound(const MatSubspace& v);

/// order[a] is the original index placed at position a; the conjugate
/// P V P^{-1} has entries M[order[a]][order[b]].
MatSubspace conjugate(const MatSubspace& v, const Permutation& order);
FqMat permutation_matrix(Fq field, const Permutation& order);

/// (P V P^{-1}) meets the lower triangular matrices only in 0.
bool triangularizes(const MatSubspace& v, const Permutation& order);

enum class TriangularizeMode { Recursive, Exhaustive };

struct Triangularization {
  Permutation order;
  /// Recursive mode had to fall back to the exhaustive scan.
  bool fell_back = false;
};

/// Throws NotFound when no permutation works (exhaustive needs n <= 8).
Triangularization triangularizing_permutation(const MatSubspace& v, TriangularizeMode mode);

}  // namespace rankspan
