#include "doctest.h"
#include "oracles.hpp"
#include "rankspan/json_io.hpp"
#include "rankspan/parallel.hpp"
#include "rankspan/random.hpp"
#include "rankspan/suites.hpp"

using namespace rankspan;

namespace {

SuiteOptions quick(std::size_t trials = 40, unsigned threads = 1) {
  SuiteOptions o;
  o.trials = trials;
  o.threads = threads;
  o.timing = false;
  return o;
}

}  // namespace

TEST_CASE("derived seeds and random generators are deterministic") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.below(97) == b.below(97));

  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    Fq f(t % 2 ? 3 : 2);
    const std::size_t codim = rng.below(7);
    MatSubspace v = random_subspace(f, 2, 3, codim, rng);
    CHECK(v.codim() == codim);
    CHECK(is_invertible(random_invertible(f, 3, rng)));
    Permutation p = random_permutation(5, rng);
    std::sort(p.begin(), p.end());
    CHECK(p == Permutation{0, 1, 2, 3, 4});
    MatSubspace s = random_subspace_of(v, v.dim() / 2, rng);
    CHECK(s.dim() == v.dim() / 2);
    CHECK(v.contains(s));
  }
}

TEST_CASE("parallel_map keeps index order and propagates errors") {
  for (unsigned threads : {1u, 3u, 8u}) {
    auto out = parallel_map<std::size_t>(100, threads, [](std::size_t i) { return i * i; });
    REQUIRE(out.size() == 100);
    for (std::size_t i = 0; i < 100; ++i) CHECK(out[i] == i * i);
    CHECK_THROWS_AS(parallel_map<int>(10, threads,
                                      [](std::size_t i) -> int {
                                        if (i == 7) throw InvalidArgument("boom");
                                        return 0;
                                      }),
                    InvalidArgument);
  }
  CHECK(parallel_map<int>(0, 2, [](std::size_t) { return 1; }).empty());
}

TEST_CASE("oddcase suite") {
  Verdict v = suite_oddcase(quick());
  CHECK(v.status == Status::Pass);
  CHECK(v.counts.at("sl2_class") == 6);
  CHECK(v.counts.at("t2plus_class") == 9);
  CHECK(v.counts.at("mismatches") == 0);
  CHECK(validate_witness(v.witness.at("sample")));
}

TEST_CASE("gerstenhaber suite") {
  SuiteOptions o = quick();
  Verdict a = suite_gerstenhaber(2, 2, std::nullopt, true, o);
  CHECK(a.status == Status::Pass);
  CHECK(a.counts.at("scanned_subspaces") == 35);
  CHECK(a.counts.at("zero_spectrum_subspaces") == 0);
  Verdict b = suite_gerstenhaber(2, 3, std::nullopt, true, o);
  CHECK(b.status == Status::Pass);
  CHECK(b.counts.at("zero_spectrum_subspaces") == 0);

  // At d = C(n,2) the scan finds exactly the zero-spectrum lines of Mat_2(F_2).
  Verdict c = suite_gerstenhaber(2, 2, 1, true, o);
  std::size_t lines = 0;
  for (auto& m : oracle::ambient(Fq(2), 2, 2)) {
    if (m.is_zero()) continue;
    auto sp = oracle::spectrum(m);
    lines += std::all_of(sp.begin(), sp.end(), [](Elem e) { return e == 0; });
  }
  CHECK(c.counts.at("zero_spectrum_subspaces") == lines);
  CHECK(c.status == Status::Pass);

  for (std::size_t n = 2; n <= 4; ++n) CHECK(suite_gerstenhaber(n, 3, std::nullopt, false, o).status == Status::Pass);
}

TEST_CASE("randomized spanning suites") {
  RandomizedParams p;
  p.n = 3;
  p.p = 2;
  for (unsigned q : {2u, 3u}) {
    p.q = q;
    CHECK(suite_lcinf(p, quick()).status == Status::Pass);
    CHECK(suite_exist(p, quick()).status == Status::Pass);
    CHECK(suite_condsuff(p, quick()).status == Status::Pass);
    CHECK(suite_genrangmax(p, quick()).status == Status::Pass);
  }
  RandomizedParams small{2, 2, 2, 2, 1, 1};
  Verdict e = suite_lcinf(small, quick());
  CHECK(e.status == Status::ExceptionRegime);
  CHECK(e.counts.at("exception_regime") == 40);

  RandomizedParams bad = p;
  bad.codim = 3;
  CHECK_THROWS_AS(suite_lcinf(bad, quick()), InvalidArgument);
  RandomizedParams one = p;
  one.p = 1;
  CHECK_THROWS_AS(suite_condsuff(one, quick()), InvalidArgument);
}

TEST_CASE("hyperplane, Flanders, h-bound and tightness suites") {
  Verdict c22 = suite_corhyper(2, 2, quick());
  CHECK(c22.status == Status::ExceptionRegime);
  CHECK(c22.counts.at("exception_regime") == 9);
  CHECK(c22.counts.at("exceptions_on_t2plus_class") == 9);
  CHECK(suite_corhyper(2, 3, quick()).counts.at("hyperplanes") == 40);

  Verdict fl = suite_flanders(2, 2, 2, quick());
  CHECK(fl.status == Status::ExceptionRegime);
  CHECK(fl.counts.at("avoid_rank_p_nonlinear_codim_2") > 0);
  CHECK(fl.counts.count("avoid_rank_p_codim_1") == 0);
  CHECK(fl.counts.count("avoid_rank_p_codim_0") == 0);
  CHECK(suite_flanders(2, 2, 3, quick()).status == Status::Pass);

  CHECK(suite_hbound(3, 2, std::nullopt, 2, HBoundMode::Exhaustive, quick()).status == Status::Pass);
  CHECK(suite_hbound(3, 3, std::nullopt, 3, HBoundMode::Construct, quick()).status == Status::Pass);

  Verdict t = suite_tightness(3, 3, 1, 2, quick());
  CHECK(t.status == Status::Pass);
  CHECK(t.counts.at("elements") == 128);
  CHECK(t.counts.at("codim") == 2);
}

TEST_CASE("zero-spectrum family suites") {
  std::vector<unsigned> fields{2, 3};
  auto inst = zero_spectrum_instance(9, 4, 5, fields);
  auto again = zero_spectrum_instance(9, 4, 5, fields);
  CHECK(inst.space == again.space);
  CHECK(inst.conjugator == again.conjugator);

  Verdict c = suite_combin(5, fields, quick(60));
  CHECK(c.status == Status::Pass);
  CHECK(c.counts.at("zero_row_index_found") == 60);
  CHECK(c.counts.at("cycle_witness_ok") == 60);
  Verdict t = suite_triangularize(5, fields, quick(60));
  CHECK(t.status == Status::Pass);
  CHECK(t.counts.at("property_agrees") == 60);
}

TEST_CASE("verdicts are byte-identical across thread counts") {
  SuiteRequest r;
  r.options = quick(50, 1);
  for (std::string s : {"lcinf", "condsuff", "combin", "triangularize", "flanders", "corhyper", "oddcase"}) {
    r.suite = s;
    r.options.threads = 1;
    const std::string one = run_suite(r).to_json().dump();
    r.options.threads = 4;
    CHECK(run_suite(r).to_json().dump() == one);
    r.options.seed = 17;
    const std::string seeded = run_suite(r).to_json().dump();
    CHECK(run_suite(r).to_json().dump() == seeded);
    r.options.seed = 0;
  }
}

TEST_CASE("fault injection turns every suite into a reproducible FAIL") {
  SuiteRequest r;
  r.options = quick(10, 1);
  r.options.inject_fault = true;
  for (const auto& s : suite_names()) {
    CAPTURE(s);
    r.suite = s;
    Verdict v = run_suite(r);
    CHECK(v.status == Status::Fail);
    REQUIRE(v.witness.contains("counterexample"));
    CHECK(v.witness["counterexample"].at("predicate") == "invalid_witness");
    CHECK(reproduce_failure(v.witness["counterexample"]));
  }
}

TEST_CASE("witness validation rejects tampered witnesses") {
  MatSubspace t3 = strictly_upper_triangular(Fq(2), 3);
  json zr{{"kind", "zero_row_index"}, {"subspace", subspace_to_json(t3)}, {"index", 3}};
  CHECK(validate_witness(zr));
  zr["index"] = 1;
  CHECK_FALSE(validate_witness(zr));
  zr["index"] = 9;
  CHECK_FALSE(validate_witness(zr));
  json tri{{"kind", "triangularization"}, {"subspace", subspace_to_json(t3)}, {"permutation", {1, 2, 3}}};
  CHECK(validate_witness(tri));
  tri["permutation"] = {3, 2, 1};
  CHECK_FALSE(validate_witness(tri));
  CHECK_FALSE(validate_witness(json{{"kind", "nonsense"}}));
  CHECK_FALSE(validate_witness(json::object()));

  json ce{{"predicate", "zero_spectrum"}, {"subspace", subspace_to_json(MatSubspace::full(Fq(2), 2, 2))}};
  CHECK(reproduce_failure(ce));
  ce["subspace"] = subspace_to_json(t3);
  CHECK_FALSE(reproduce_failure(ce));
  CHECK_THROWS_AS(reproduce_failure(json{{"predicate", "nonsense"}}), InvalidArgument);
}

TEST_CASE("run_suite validates requests") {
  SuiteRequest r;
  r.options = quick(5);
  r.suite = "nope";
  CHECK_THROWS_AS(run_suite(r), InvalidArgument);
  r.suite = "hbound";
  r.mode = "sideways";
  CHECK_THROWS_AS(run_suite(r), InvalidArgument);
  r.mode = "";
  r.n = 2;
  r.p = 3;
  CHECK_THROWS_AS(run_suite(r), InvalidArgument);
  r.suite = "gerstenhaber";
  r.n = 3;
  r.exhaustive = true;
  r.options.scan_budget = 1000;
  CHECK_THROWS_AS(run_suite(r), BudgetExceeded);
}
