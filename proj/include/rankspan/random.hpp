#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "rankspan/subspace.hpp"

namespace rankspan {

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Mixes a base seed with a path of integers (suite id, parameter point,
/// trial index) into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

/// mt19937_64 with a portable bounded draw (plain modulo; the bias is
/// irrelevant for falsification sampling and keeps streams identical across
/// standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
};

using Permutation = std::vector<std::size_t>;

FqMat random_matrix(Fq field, std::size_t rows, std::size_t cols, Rng& rng);
FqMat random_invertible(Fq field, std::size_t n, Rng& rng);
Permutation random_permutation(std::size_t n, Rng& rng);

/// Joint kernel of `codim` random linearly independent forms on F_q^{np}.
MatSubspace random_subspace(Fq field, std::size_t rows, std::size_t cols, std::size_t codim, Rng& rng);
/// Random `dim`-dimensional subspace of `v` (dim <= dim v).
MatSubspace random_subspace_of(const MatSubspace& v, std::size_t dim, Rng& rng);

}  // namespace rankspan
