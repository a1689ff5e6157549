#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rankspan/linalg.hpp"

namespace rankspan {

/// Number of d-dimensional subspaces of F_q^m; throws InvalidArgument on
/// 64-bit overflow.
std::uint64_t gaussian_binomial(std::size_t m, std::size_t d, unsigned q);

/// All increasing d-subsets of {0..m-1}, lexicographic.
std::vector<std::vector<std::size_t>> pivot_patterns(std::size_t m, std::size_t d);

/// Number of reduced echelon matrices with the given pivot columns.
std::uint64_t pattern_cardinality(std::size_t m, const std::vector<std::size_t>& pivots, unsigned q);

/// Visitor receives the canonical reduced echelon rows of one subspace; the
/// buffer is reused between calls. Returning false stops the scan.
using SubspaceVisitor = std::function<bool(const std::vector<Vec>& rows)>;

/// Visits every subspace whose echelon pivots are exactly `pivots`, exactly
/// once. Returns false if the visitor stopped the scan.
bool for_each_subspace_with_pivots(Fq field, std::size_t m, const std::vector<std::size_t>& pivots,
                                   const SubspaceVisitor& visit);

/// Visits every d-dimensional subspace of F_q^m exactly once.
bool for_each_subspace(Fq field, std::size_t m, std::size_t d, const SubspaceVisitor& visit);

/// Coset representatives of F_q^m / H, where H has the given pivots: all
/// vectors supported off the pivot columns. Returning false stops the scan.
bool for_each_transversal(Fq field, std::size_t m, const std::vector<std::size_t>& pivots,
                          const std::function<bool(const Vec&)>& visit);

}  // namespace rankspan
