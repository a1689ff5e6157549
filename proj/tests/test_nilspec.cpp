#include "doctest.h"
#include "oracles.hpp"
#include "rankspan/json_io.hpp"
#include "rankspan/nilspec.hpp"
#include "rankspan/random.hpp"

using namespace rankspan;

namespace {

const Fq f2(2), f3(3);

FqMat E(std::size_t n, std::size_t i, std::size_t j, Fq f = Fq(2)) { return elementary(f, n, n, i - 1, j - 1); }

bool oracle_zero_spectrum(const MatSubspace& v) {
  for (auto& m : oracle::elements(v))
    for (Elem l : oracle::spectrum(m))
      if (l != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("zero-spectrum property") {
  for (std::size_t n = 1; n <= 4; ++n) CHECK(has_zero_spectrum_property(strictly_upper_triangular(f3, n)).status == Status::Pass);
  MatSubspace swap = MatSubspace::from_basis(f2, 2, 2, std::vector<FqMat>{E(2, 1, 2), E(2, 2, 1)});
  Verdict v = has_zero_spectrum_property(swap);
  REQUIRE(v.status == Status::Fail);
  const json& ce = v.witness.at("counterexample");
  CHECK(entries_from_json(f2, 2, 2, ce.at("element")) == E(2, 1, 2) + E(2, 2, 1));
  CHECK(ce.at("eigenvalue") == 1);

  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    Permutation perm = random_permutation(3, rng);
    CHECK(has_zero_spectrum_property(conjugate(strictly_upper_triangular(f2, 3), perm)).status == Status::Pass);
  }
  for (int t = 0; t < 60; ++t) {
    Fq f = t % 2 ? f3 : f2;
    MatSubspace w = random_subspace(f, 2, 2, 1 + rng.below(4), rng);
    CHECK((has_zero_spectrum_property(w).status == Status::Pass) == oracle_zero_spectrum(w));
  }
}

TEST_CASE("zero row index") {
  CHECK(find_zero_row_index(strictly_upper_triangular(f2, 3)).index == 2);
  CHECK(find_zero_row_index(MatSubspace::zero(f3, 2, 2)).index == 0);
  CHECK(find_zero_row_index(MatSubspace::from_basis(f2, 2, 2, std::vector<FqMat>{E(2, 1, 2)})).index == 1);
  CHECK_THROWS_AS(find_zero_row_index(MatSubspace::full(f2, 2, 2)), NoZeroRowIndex);
  CHECK_THROWS_AS(find_zero_row_index(MatSubspace::full(f2, 2, 3)), InvalidArgument);

  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(4);
    Fq f = t % 2 ? f3 : f2;
    MatSubspace base = strictly_upper_triangular(f, n);
    MatSubspace v = conjugate(random_subspace_of(base, rng.below(base.dim() + 1), rng), random_permutation(n, rng));
    ZeroRowWitness w = find_zero_row_index(v);
    CHECK(w.restriction.dim() == 0);
    for (std::size_t i = 0; i < w.index; ++i) CHECK(row_restriction(v, i).dim() > 0);
  }
}

TEST_CASE("cycle witnesses") {
  // f = (1->2, 2->3, 3->1).
  std::vector<std::size_t> f{1, 2, 0};
  MatSubspace v = MatSubspace::from_basis(f2, 3, 3, std::vector<FqMat>{E(3, 2, 1), E(3, 3, 2), E(3, 1, 3)});
  CycleWitness w = build_cycle_witness(v, f);
  CHECK(w.matrix == E(3, 1, 3) + E(3, 2, 1) + E(3, 3, 2));
  CHECK(w.cycle.size() == 3);
  CHECK(verify_cycle_witness(v, w));
  auto spec = oracle::spectrum(w.matrix);
  CHECK(std::find(spec.begin(), spec.end(), Elem(1)) != spec.end());

  std::vector<std::size_t> fixed{0, 0};
  MatSubspace v2 = MatSubspace::from_basis(f2, 2, 2, std::vector<FqMat>{E(2, 1, 1), E(2, 1, 2)});
  CycleWitness w2 = build_cycle_witness(v2, fixed);
  CHECK(w2.cycle == std::vector<std::size_t>{0});
  CHECK(w2.matrix == E(2, 1, 1));
  CHECK(verify_cycle_witness(v2, w2));

  // f = (1->3, 2->4, 3->1, 4->2) from 2 gives the cycle (2, 4) over F_3.
  std::vector<std::size_t> f4{2, 3, 0, 1};
  std::vector<FqMat> gens;
  for (std::size_t k = 0; k < 4; ++k) gens.push_back(elementary(f3, 4, 4, f4[k], k));
  MatSubspace v4 = MatSubspace::from_basis(f3, 4, 4, gens);
  CycleWitness w4 = build_cycle_witness(v4, f4, 1);
  CHECK(w4.cycle == std::vector<std::size_t>{1, 3});
  CHECK(w4.matrix == E(4, 2, 4, f3) + E(4, 4, 2, f3));
  CHECK(verify_cycle_witness(v4, w4));
  FqMat shifted = w4.matrix - identity(f3, 4);
  CHECK(oracle::det(shifted) == 0);

  CycleWitness broken = w4;
  broken.matrix = zero_matrix(f3, 4, 4);
  CHECK_FALSE(verify_cycle_witness(v4, broken));
  broken = w4;
  broken.cycle = {1};
  CHECK_FALSE(verify_cycle_witness(v4, broken));
  CHECK_THROWS_AS(build_cycle_witness(strictly_upper_triangular(f2, 3), f), InvalidArgument);
}

TEST_CASE("block decomposition") {
  Rng rng(43);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.below(3);
    FqMat m = random_matrix(f3, n, n, rng);
    for (std::size_t i = 0; i + 1 < n; ++i) m.set(i, n - 1, 0);
    BlockDecomposition b = decompose_last_column(m);
    CHECK(assemble(b) == m);
    CHECK(b.alpha == m(n - 1, n - 1));
    FqMat z(m);
    for (std::size_t j = 0; j < n; ++j) z.set(n - 1, j, 0);
    CHECK(compress_last_row_zero(z) == b.a);
  }
  CHECK_THROWS_AS(decompose_last_column(identity(f2, 2) + E(2, 1, 2)), InvalidArgument);
  CHECK_THROWS_AS(compress_last_row_zero(identity(f2, 2)), InvalidArgument);
}

TEST_CASE("dimension bound and the induction step") {
  for (std::size_t n = 1; n <= 5; ++n) CHECK(check_gerstenhaber_bound(strictly_upper_triangular(f2, n)).status == Status::Pass);
  Rng rng(44);
  MatSubspace t4 = strictly_upper_triangular(f3, 4);
  MatSubspace sub = random_subspace_of(t4, 4, rng);
  CHECK(sub.dim() == 4);
  CHECK(check_gerstenhaber_bound(sub).status == Status::Pass);
  CHECK(check_gerstenhaber_bound(MatSubspace::full(f2, 2, 2)).status == Status::Fail);

  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.below(3);
    MatSubspace base = strictly_upper_triangular(f2, n);
    MatSubspace v = conjugate(random_subspace_of(base, rng.below(base.dim() + 1), rng), random_permutation(n, rng));
    const std::size_t i = find_zero_row_index(v).index;
    Permutation order;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    order.push_back(i);
    MatSubspace w = last_column_constrained(conjugate(v, order));
    CHECK(v.dim() <= n - 1 + w.dim());
    MatSubspace a = top_left_image(w);
    CHECK(a.dim() == w.dim());
    CHECK(oracle_zero_spectrum(a));
  }
}

TEST_CASE("permutation conventions") {
  Rng rng(45);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng.below(3);
    Permutation order = random_permutation(n, rng);
    FqMat p = permutation_matrix(f3, order);
    MatSubspace v = random_subspace(f3, n, n, rng.below(n * n), rng);
    CHECK(conjugate(v, order) == equiv_act(p, v, inverse(p)));
  }
  CHECK_THROWS_AS(conjugate(MatSubspace::zero(f2, 2, 2), Permutation{0, 0}), InvalidArgument);
}

TEST_CASE("triangularizing permutations") {
  MatSubspace t3 = strictly_upper_triangular(f2, 3);
  for (auto mode : {TriangularizeMode::Recursive, TriangularizeMode::Exhaustive}) {
    Triangularization tr = triangularizing_permutation(t3, mode);
    CHECK(tr.order == Permutation{0, 1, 2});
    const MatSubspace zero = MatSubspace::zero(f2, 3, 3);
    CHECK(triangularizes(zero, triangularizing_permutation(zero, mode).order));
  }
  MatSubspace swapped = conjugate(t3, Permutation{1, 0, 2});
  for (auto mode : {TriangularizeMode::Recursive, TriangularizeMode::Exhaustive}) {
    Triangularization tr = triangularizing_permutation(swapped, mode);
    MatSubspace c = conjugate(swapped, tr.order);
    for (auto& m : oracle::elements(c)) {
      bool lower = true;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) lower = lower && m(i, j) == 0;
      CHECK((lower == m.is_zero()));
    }
  }
  CHECK_THROWS_AS(triangularizing_permutation(MatSubspace::full(f2, 2, 2), TriangularizeMode::Exhaustive), NotFound);
}
