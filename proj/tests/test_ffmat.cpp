#include "doctest.h"
#include "oracles.hpp"
#include "rankspan/json_io.hpp"
#include "rankspan/linalg.hpp"
#include "rankspan/random.hpp"

using namespace rankspan;

TEST_CASE("field arithmetic satisfies the field axioms") {
  for (unsigned q : {2u, 3u, 5u, 7u}) {
    Fq f(q);
    for (unsigned a = 0; a < q; ++a) {
      CHECK(f.add(Elem(a), f.neg(Elem(a))) == 0);
      if (a) CHECK(f.mul(Elem(a), f.inv(Elem(a))) == 1);
      for (unsigned b = 0; b < q; ++b) {
        CHECK(f.add(Elem(a), Elem(b)) == (a + b) % q);
        CHECK(f.sub(Elem(a), Elem(b)) == (a + q - b) % q);
        CHECK(f.mul(Elem(a), Elem(b)) == (a * b) % q);
      }
    }
    CHECK(f.reduce(-1) == q - 1);
  }
  CHECK_THROWS_AS(Fq(4), InvalidArgument);
  CHECK_THROWS_AS(Fq(11), InvalidArgument);
}

TEST_CASE("matrix construction validates entries and shapes") {
  Fq f2(2);
  CHECK(FqMat::from_rows(f2, {{0, 3}, {-1, 2}}) == FqMat::from_rows(f2, {{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(FqMat(f2, 1, 2, std::vector<Elem>{0, 2}), InvalidArgument);
  CHECK_THROWS_AS(FqMat::from_rows(f2, {{0, 1}, {1}}), InvalidArgument);
  CHECK_THROWS_AS(FqMat(f2, 2, 2, std::vector<Elem>{1, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(identity(f2, 2) * zero_matrix(f2, 3, 3), InvalidArgument);
  CHECK_THROWS_AS(identity(f2, 2) + identity(Fq(3), 2), InvalidArgument);
}

TEST_CASE("rank examples") {
  Fq f2(2);
  CHECK(rank(zero_matrix(f2, 3, 2)) == 0);
  CHECK(rank(block_identity(f2, 3, 3, 2)) == 2);
  CHECK(rank(FqMat::from_rows(f2, {{1, 1}, {0, 1}})) == 2);
}

TEST_CASE("spectrum examples") {
  Fq f2(2), f3(3);
  CHECK(spectrum_in_field(FqMat::from_rows(f2, {{0, 1, 1}, {0, 0, 1}, {0, 0, 0}})) == std::vector<Elem>{0});
  FqMat cycle = elementary(f2, 3, 3, 0, 2) + elementary(f2, 3, 3, 1, 0) + elementary(f2, 3, 3, 2, 1);
  auto sc = spectrum_in_field(cycle);
  CHECK(std::find(sc.begin(), sc.end(), Elem(1)) != sc.end());
  CHECK(spectrum_in_field(FqMat::from_rows(f3, {{0, 1}, {1, 0}})) == std::vector<Elem>{1, 2});
  CHECK_FALSE(has_zero_spectrum(cycle));
}

TEST_CASE("basic matrix examples") {
  Fq f2(2), f3(3);
  CHECK(det(identity(f3, 2)) == 1);
  CHECK(elementary(f2, 2, 2, 0, 1) == FqMat::from_rows(f2, {{0, 1}, {0, 0}}));
  CHECK(rref(FqMat::from_rows(f2, {{1, 1}, {1, 1}})) == FqMat::from_rows(f2, {{1, 1}, {0, 0}}));
  CHECK(transpose(FqMat::from_rows(f3, {{1, 2, 0}})) == FqMat::from_rows(f3, {{1}, {2}, {0}}));
  CHECK_THROWS_AS(inverse(zero_matrix(f3, 2, 2)), InvalidArgument);
  CHECK_THROWS_AS(det(zero_matrix(f3, 2, 3)), InvalidArgument);
}

TEST_CASE("rank, det, spectrum agree with brute-force oracles on random matrices") {
  for (unsigned q : {2u, 3u, 5u}) {
    Fq f(q);
    Rng rng(derive_seed(7, {q}));
    for (int t = 0; t < 150; ++t) {
      const std::size_t n = 1 + rng.below(4), p = 1 + rng.below(4);
      FqMat m = random_matrix(f, n, p, rng);
      CAPTURE(q);
      CHECK(rank(m) == oracle::rank(m));
      CHECK(rank(m) == rank(transpose(m)));
      FqMat sq = random_matrix(f, n, n, rng);
      CHECK(det(sq) == oracle::det(sq));
      CHECK(spectrum_in_field(sq) == oracle::spectrum(sq));
      CHECK(is_invertible(sq) == (oracle::det(sq) != 0));
      if (is_invertible(sq)) {
        CHECK(sq * inverse(sq) == identity(f, n));
        CHECK(inverse(sq) * sq == identity(f, n));
      }
    }
  }
}

TEST_CASE("F_2 packed path matches the oracle on wide matrices") {
  Fq f2(2);
  Rng rng(99);
  for (int t = 0; t < 60; ++t) {
    FqMat m = random_matrix(f2, 3, 9, rng);
    CHECK(rank(m) == oracle::rank(m));
    FqMat sq = random_matrix(f2, 5, 5, rng);
    CHECK(det(sq) == oracle::det(sq));
  }
}

TEST_CASE("det is multiplicative and rank subadditive") {
  Fq f3(3);
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    FqMat a = random_matrix(f3, 3, 3, rng), b = random_matrix(f3, 3, 3, rng);
    CHECK(det(a * b) == f3.mul(det(a), det(b)));
    CHECK(rank(a + b) <= rank(a) + rank(b));
    CHECK(rank(a * b) <= std::min(rank(a), rank(b)));
  }
}

TEST_CASE("row echelon helpers") {
  Fq f3(3);
  std::vector<Vec> gens{{1, 2, 0}, {2, 1, 0}, {0, 0, 1}};
  auto basis = canonical_basis(f3, 3, gens);
  CHECK(basis.size() == 2);
  CHECK(basis[0] == Vec{1, 2, 0});
  auto ns = null_space(f3, 3, basis);
  REQUIRE(ns.size() == 1);
  for (const auto& b : basis) CHECK(dot(f3, b, ns[0]) == 0);
  auto c = solve_combination(f3, gens, Vec{2, 1, 2});
  REQUIRE(c.has_value());
  Vec acc(3, 0);
  for (std::size_t i = 0; i < gens.size(); ++i) axpy(f3, acc, (*c)[i], gens[i]);
  CHECK(acc == Vec{2, 1, 2});
  CHECK_FALSE(solve_combination(f3, gens, Vec{1, 0, 0}).has_value());
}

TEST_CASE("matrix JSON round-trip and parse errors") {
  Fq f5(5);
  Rng rng(3);
  FqMat m = random_matrix(f5, 2, 3, rng);
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  CHECK_THROWS_AS(matrix_from_json(json{{"q", 4}, {"rows", 1}, {"cols", 1}, {"entries", {{0}}}}), Error);
  CHECK_THROWS_AS(matrix_from_json(json{{"q", 2}, {"rows", 1}, {"cols", 2}, {"entries", {{0}}}}), Error);
  try {
    parse_document("{\n  \"q\": 2,\n  \"rows\": ]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
