#include "rankspan/random.hpp"

#include <utility>

namespace rankspan {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t state = seed;
  std::uint64_t out = splitmix64(state);
  for (std::uint64_t p : path) {
    state ^= p + 0x632be59bd9b4e019ULL + (out << 6) + (out >> 2);
    out = splitmix64(state);
  }
  return out;
}

FqMat random_matrix(Fq field, std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<Elem> e(rows * cols);
  for (auto& x : e) x = Elem(rng.below(field.q()));
  return FqMat(field, rows, cols, std::move(e));
}

FqMat random_invertible(Fq field, std::size_t n, Rng& rng) {
  for (;;) {
    FqMat m = random_matrix(field, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

MatSubspace random_subspace(Fq field, std::size_t rows, std::size_t cols, std::size_t codim, Rng& rng) {
  const std::size_t m = rows * cols;
  if (codim > m) throw InvalidArgument("codimension exceeds the ambient dimension");
  RowEchelon forms(field, m);
  while (forms.rank() < codim) {
    Vec f(m);
    for (auto& x : f) x = Elem(rng.below(field.q()));
    forms.insert(f);
  }
  return MatSubspace::from_vectors(field, rows, cols, null_space(field, m, forms.rows()));
}

MatSubspace random_subspace_of(const MatSubspace& v, std::size_t dim, Rng& rng) {
  if (dim > v.dim()) throw InvalidArgument("requested dimension exceeds the parent subspace");
  RowEchelon coords(v.field(), v.dim());
  while (coords.rank() < dim) {
    Vec c(v.dim());
    for (auto& x : c) x = Elem(rng.below(v.q()));
    coords.insert(c);
  }
  std::vector<FqMat> gens;
  for (const auto& c : coords.rows()) gens.push_back(v.element(c));
  return MatSubspace::from_basis(v.field(), v.rows(), v.cols(), gens);
}

}  // namespace rankspan
