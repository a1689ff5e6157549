#include "doctest.h"
#include "oracles.hpp"
#include "rankspan/affine.hpp"
#include "rankspan/grassmannian.hpp"
#include "rankspan/json_io.hpp"
#include "rankspan/random.hpp"

using namespace rankspan;

namespace {

const Fq f2(2), f3(3);

FqMat E(std::size_t n, std::size_t p, std::size_t i, std::size_t j, Fq f = Fq(2)) {
  return elementary(f, n, p, i - 1, j - 1);
}

std::size_t oracle_min_rank(const AffineMatSubspace& a) {
  std::size_t best = std::min(a.rows(), a.cols());
  for (auto& d : oracle::elements(a.direction())) best = std::min(best, oracle::rank(a.point() + d));
  return best;
}

}  // namespace

TEST_CASE("affine basics") {
  MatSubspace dir = MatSubspace::from_basis(f2, 2, 2, std::vector<FqMat>{E(2, 2, 1, 1)});
  AffineMatSubspace a(identity(f2, 2) + E(2, 2, 1, 1), dir);
  CHECK(a == AffineMatSubspace(identity(f2, 2), dir));
  CHECK(a.contains(identity(f2, 2)));
  CHECK_FALSE(a.is_linear());
  CHECK(a.linear_span().dim() == 2);
  CHECK(AffineMatSubspace(E(2, 2, 1, 1), dir).is_linear());
  CHECK(affine_from_json(affine_to_json(a)) == a);
  CHECK(is_affine_document(affine_to_json(a)));
  CHECK_FALSE(is_affine_document(subspace_to_json(dir)));
}

TEST_CASE("min rank examples") {
  Rng rng(31);
  CHECK(min_rank(AffineMatSubspace(zero_matrix(f3, 2, 2), random_subspace(f3, 2, 2, 1, rng))) == 0);
  for (std::size_t k = 1; k <= 3; ++k) {
    CHECK(min_rank(AffineMatSubspace(block_identity(f2, 3, 3, k), MatSubspace::zero(f2, 3, 3))) == k);
  }
  CHECK(min_rank(extremal_affine(2, 2, 2, f2)) == 2);
}

TEST_CASE("min rank matches the oracle and is equivalence invariant") {
  Rng rng(32);
  for (int t = 0; t < 60; ++t) {
    Fq f = t % 2 ? f3 : f2;
    MatSubspace dir = random_subspace(f, 3, 2, 2 + rng.below(5), rng);
    AffineMatSubspace a(random_matrix(f, 3, 2, rng), dir);
    CHECK(min_rank(a) == oracle_min_rank(a));
    FqMat p = random_invertible(f, 3, rng), q = random_invertible(f, 2, rng);
    AffineMatSubspace b = equiv_act(p, a, q);
    CHECK(min_rank(b) == min_rank(a));
    CHECK(b.dim() == a.dim());
  }
}

TEST_CASE("extremal affine construction") {
  AffineMatSubspace a = extremal_affine(2, 2, 2, f2);
  CHECK(a.dim() == 1);
  std::set<Vec> els;
  for (auto& d : oracle::elements(a.direction())) els.insert(oracle::vec_of(a.point() + d));
  CHECK(els == std::set<Vec>{{1, 0, 0, 1}, {1, 1, 0, 1}});

  AffineMatSubspace b = extremal_affine(3, 3, 2, f2);
  CHECK(b.codim() == 3);
  CHECK(b.dim() == 6);
  CHECK(oracle_min_rank(b) == 2);

  for (auto [n, p] : {std::pair<std::size_t, std::size_t>{2, 1}, {3, 2}, {4, 4}}) {
    AffineMatSubspace c = extremal_affine(n, p, 1, f3);
    CHECK(c.codim() == 1);
    CHECK(min_rank(c) == 1);
  }
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t p = 1; p <= n; ++p)
      for (std::size_t k = 1; k <= p; ++k) {
        AffineMatSubspace e = extremal_affine(n, p, k, f2);
        CHECK(e.dim() == h_value(n, p, k));
        CHECK(min_rank(e) >= k);
      }
  CHECK_THROWS_AS(extremal_affine(2, 2, 3, f2), InvalidArgument);
  CHECK_THROWS_AS(extremal_affine(2, 3, 1, f2), InvalidArgument);
}

TEST_CASE("unspanned construction") {
  MatSubspace v = unspanned_subspace(3, 3, 1, f2);
  CHECK(v.dim() == 7);
  CHECK(v.codim() == 2);
  CHECK(oracle::elements(v).size() == 128);
  CHECK(oracle::stratum_span_dim(v, 1) < 7);
  CHECK(check_condsuff(v, 1).status == Status::HypothesisNotMet);
  CHECK(span_of_rank(v, 1) != v);

  MatSubspace w = unspanned_subspace(4, 4, 1, f2);
  CHECK(w.codim() == 2);
  CHECK(span_of_rank(w, 1) != w);
  CHECK(unspanned_in_theorem_regime(4, 1));
  CHECK_FALSE(unspanned_in_theorem_regime(3, 2));

  for (std::size_t r = 1; r <= 2; ++r) {
    MatSubspace u = unspanned_subspace(3, 3, r, f2);
    CHECK(u.codim() + 1 == extremal_affine(3, 3, r + 1, f2).codim());
  }
}

TEST_CASE("Flanders checker") {
  // E_12 + span{E_11, E_12 + E_21}.
  MatSubspace dir = MatSubspace::from_basis(f2, 2, 2, std::vector<FqMat>{E(2, 2, 1, 1), E(2, 2, 1, 2) + E(2, 2, 2, 1)});
  AffineMatSubspace ex(E(2, 2, 1, 2), dir);
  CHECK(ex.codim() == 2);
  CHECK_FALSE(ex.is_linear());
  CHECK(oracle_min_rank(ex) <= 1);
  CHECK(check_flanders(ex).status == Status::ExceptionRegime);

  MatSubspace column = MatSubspace::from_basis(f2, 3, 2, std::vector<FqMat>{E(3, 2, 1, 1)});
  AffineMatSubspace lin(zero_matrix(f2, 3, 2), column);
  CHECK(lin.codim() == 5);
  CHECK(check_flanders(lin).status == Status::Pass);

  CHECK(check_flanders(extremal_affine(3, 2, 2, f3)).status == Status::Vacuous);
  CHECK(check_flanders(AffineMatSubspace(zero_matrix(f2, 2, 3), MatSubspace::zero(f2, 2, 3))).status ==
        Status::HypothesisNotMet);

  // Contains I itself.
  AffineMatSubspace fake(identity(f3, 2), MatSubspace::from_basis(f3, 2, 2, std::vector<FqMat>{E(2, 2, 1, 1, f3)}));
  CHECK(fake.codim() == 3);
  Verdict v = check_flanders(fake);
  CHECK(v.status == Status::Vacuous);
}

TEST_CASE("Flanders bound over every coset of small ambients") {
  for (auto [n, p, q] : {std::tuple<std::size_t, std::size_t, unsigned>{2, 2, 2}, {2, 1, 3}, {3, 1, 2}, {2, 2, 3}}) {
    Fq f(q);
    const std::size_t m = n * p;
    std::size_t exceptions = 0, scanned = 0;
    for (std::size_t d = m - n; d <= m; ++d) {
      for_each_subspace(f, m, d, [&](const std::vector<Vec>& rows) {
        MatSubspace dir = MatSubspace::from_vectors(f, n, p, rows);
        for_each_transversal(f, m, dir.pivots(), [&](const Vec& rep) {
          AffineMatSubspace a(FqMat(f, n, p, rep), dir);
          ++scanned;
          const bool avoids = oracle_min_rank(a) < p &&
                              [&] {
                                for (auto& e : oracle::elements(dir))
                                  if (oracle::rank(a.point() + e) == p) return false;
                                return true;
                              }();
          Verdict v = check_flanders(a);
          CHECK((v.status == Status::Vacuous) == !avoids);
          if (avoids) {
            CHECK(a.codim() >= n);
            if (a.codim() == n && !a.is_linear()) ++exceptions;
          }
          CHECK(v.status != Status::Fail);
          return true;
        });
        return true;
      });
    }
    std::uint64_t expected = 0;
    for (std::size_t d = m - n; d <= m; ++d) expected += coset_count(m, d, q);
    CHECK(scanned == expected);
    if (n == 2 && p == 2 && q == 2) CHECK(exceptions > 0);
    else CHECK(exceptions == 0);
  }
}

TEST_CASE("h(n,p,k)") {
  CHECK(h_value(2, 2, 2) == 1);
  CHECK(h_value(2, 2, 1) == 3);
  CHECK(h_value(3, 2, 2) == 3);
  CHECK(coset_count(4, 2, 2) == 140);

  Verdict c = check_h_bound(3, 3, 2, f2, HBoundMode::Construct);
  CHECK(c.status == Status::Pass);
  CHECK(c.counts.at("dim") == 6);
  for (auto [n, p, k] : {std::tuple<std::size_t, std::size_t, std::size_t>{2, 2, 1}, {2, 2, 2}, {3, 2, 2}}) {
    Verdict e = check_h_bound(n, p, k, f2, HBoundMode::Exhaustive);
    CHECK(e.status == Status::Pass);
    CHECK(e.counts.at("scanned_cosets") == coset_count(n * p, h_value(n, p, k) + 1, 2));
  }
  // A dim-3 coset of Mat_2(F_2) missing 0 exists; the full space contains 0.
  CHECK(min_rank(extremal_affine(2, 2, 1, f2)) == 1);
  CHECK(min_rank(AffineMatSubspace(zero_matrix(f2, 2, 2), MatSubspace::full(f2, 2, 2))) == 0);
  CHECK_THROWS_AS(check_h_bound(3, 3, 2, f3, HBoundMode::Exhaustive, 1 << 20, 1000), BudgetExceeded);
}
