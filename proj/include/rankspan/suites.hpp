#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankspan/affine.hpp"
#include "rankspan/nilspec.hpp"
#include "rankspan/strata.hpp"
#include "rankspan/verdict.hpp"

namespace rankspan {

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 500;
  /// Element budget for every single enumeration.
  std::uint64_t budget = kDefaultBudget;
  /// Cap on the number of subspaces or cosets an exhaustive scan may visit.
  std::uint64_t scan_budget = std::uint64_t{1} << 26;
  unsigned threads = 0;
  /// Test hook: corrupt the suite's sample witness before it is re-validated.
  bool inject_fault = false;
  /// Report wall time; off gives byte-reproducible verdicts.
  bool timing = true;
};

/// Parameter point for the randomized spanning suites. Unset r/s/codim mean
/// "every admissible value" (codim: drawn uniformly per trial).
struct RandomizedParams {
  std::size_t n = 3;
  std::size_t p = 2;
  unsigned q = 2;
  std::optional<std::size_t> r;
  std::optional<std::size_t> s;
  std::optional<std::size_t> codim;
};

Verdict suite_oddcase(const SuiteOptions& opts);
/// Checks T_n^{++} reaches C(n,2) with zero spectrum; with `exhaustive`,
/// scans every d-dimensional subspace of Mat_n(F_q) (d defaults to C(n,2)+1).
Verdict suite_gerstenhaber(std::size_t n, unsigned q, std::optional<std::size_t> d, bool exhaustive,
                           const SuiteOptions& opts);
Verdict suite_lcinf(const RandomizedParams& params, const SuiteOptions& opts);
Verdict suite_exist(const RandomizedParams& params, const SuiteOptions& opts);
Verdict suite_condsuff(const RandomizedParams& params, const SuiteOptions& opts);
Verdict suite_genrangmax(const RandomizedParams& params, const SuiteOptions& opts);
Verdict suite_corhyper(std::size_t n, unsigned q, const SuiteOptions& opts);
/// Scans every coset of Mat_{n,p}(F_q) with codimension <= n.
Verdict suite_flanders(std::size_t n, std::size_t p, unsigned q, const SuiteOptions& opts);
/// k unset means every k in 1..p.
Verdict suite_hbound(std::size_t n, std::size_t p, std::optional<std::size_t> k, unsigned q, HBoundMode mode,
                     const SuiteOptions& opts);
Verdict suite_tightness(std::size_t n, std::size_t p, std::size_t r, unsigned q, const SuiteOptions& opts);

/// Family shared by the combin and triangularize suites: a random subspace of
/// a permutation conjugate of T_n^{++}(F_q), 2 <= n <= max_n.
struct ZeroSpectrumInstance {
  MatSubspace space;
  Permutation conjugator;
};
ZeroSpectrumInstance zero_spectrum_instance(std::uint64_t seed, std::size_t trial, std::size_t max_n,
                                            const std::vector<unsigned>& fields);

Verdict suite_combin(std::size_t max_n, const std::vector<unsigned>& fields, const SuiteOptions& opts);
Verdict suite_triangularize(std::size_t max_n, const std::vector<unsigned>& fields, const SuiteOptions& opts);

/// Everything the CLI can ask for, in one place.
struct SuiteRequest {
  std::string suite;
  std::optional<std::size_t> n, p, r, s, k, d, codim;
  std::optional<unsigned> q;
  bool exhaustive = false;
  std::string mode;
  SuiteOptions options;
};

const std::vector<std::string>& suite_names();
/// Validates the request (InvalidArgument on bad combinations) and runs it.
Verdict run_suite(const SuiteRequest& request);

/// Re-checks a self-contained witness (the "sample" of a verdict).
bool validate_witness(const json& witness);
/// Replays a FAIL payload's counterexample; true iff the violation reproduces.
bool reproduce_failure(const json& counterexample);

}  // namespace rankspan
