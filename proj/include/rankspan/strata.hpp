#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankspan/subspace.hpp"
#include "rankspan/verdict.hpp"

namespace rankspan {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// kDefaultBudget unless RANKSPAN_BUDGET holds a positive integer.
std::uint64_t default_budget();

/// q^d as a double (exact for every size the library can enumerate).
double power_count(unsigned q, std::size_t d);
/// Throws BudgetExceeded if q^dim > budget.
void require_budget(unsigned q, std::size_t dim, std::uint64_t budget, const std::string& what);

/// Single-pass stream over every element of V (or of offset + V).
///
/// Coefficient tuples against the canonical basis are visited in
/// lexicographic order, last coordinate fastest; the order depends only on V.
class ElementStream {
 public:
  explicit ElementStream(const MatSubspace& v, std::uint64_t budget = default_budget());
  ElementStream(const MatSubspace& v, const FqMat& offset, std::uint64_t budget = default_budget());
  // The stream keeps a pointer to v.
  explicit ElementStream(MatSubspace&&, std::uint64_t = 0) = delete;
  ElementStream(MatSubspace&&, const FqMat&, std::uint64_t = 0) = delete;

  /// Moves to the next element; false once every element has been produced.
  bool next();
  const FqMat& current() const noexcept { return current_; }
  std::span<const Elem> coefficients() const noexcept { return coeffs_; }
  std::uint64_t size() const noexcept { return size_; }

 private:
  const MatSubspace* space_;
  FqMat current_;
  Vec coeffs_;
  std::uint64_t size_;
  std::uint64_t produced_ = 0;
};

struct RankProfile {
  /// counts[r] = number of elements of rank r, r = 0..min(n, p).
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
  std::uint64_t at(std::size_t r) const { return r < counts.size() ? counts[r] : 0; }
  json to_json() const;
  friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

RankProfile rank_profile(const MatSubspace& v, std::uint64_t budget = default_budget());

/// Span of the rank-r stratum together with independent rank-r generators.
struct StratumSpan {
  MatSubspace span;
  std::vector<FqMat> generators;
  /// True when the whole stratum was visited; false when the search stopped
  /// early because the generators already span V.
  bool complete = false;
};

/// Computes span{M in V : rank M = r} exactly.
///
/// Rank-1 strata are enumerated from the ambient u v^T matrices when that is
/// cheaper than walking V; other strata are first probed by a fixed-seed
/// sampler and, unless the sample already spans V, by full enumeration
/// (budget-checked).
StratumSpan stratum_span(const MatSubspace& v, std::size_t r, std::uint64_t budget = default_budget());
MatSubspace span_of_rank(const MatSubspace& v, std::size_t r, std::uint64_t budget = default_budget());

/// Some element of V of rank exactly r, or nullopt if none exists.
std::optional<FqMat> find_rank_element(const MatSubspace& v, std::size_t r, std::uint64_t budget = default_budget());

/// Explicit witness that V is spanned by rank-r elements: each canonical
/// basis matrix of V is written as a combination of listed rank-r elements.
struct SpanCertificate {
  std::size_t rank = 0;
  std::vector<FqMat> elements;
  std::vector<FqMat> targets;
  std::vector<Vec> coefficients;  // coefficients[t][e] multiplies elements[e]

  json to_json() const;
  static SpanCertificate from_json(const json& j);
};

/// nullopt unless the generators span V.
std::optional<SpanCertificate> make_certificate(const MatSubspace& v, const StratumSpan& s, std::size_t r);

/// Re-checks a certificate from scratch: every element has rank r and lies in
/// V, targets equal V's canonical basis, and every combination evaluates
/// exactly to its target.
bool verify_certificate(const MatSubspace& v, const SpanCertificate& cert);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Every rank-s element of V is a combination of rank-r elements of V.
Verdict check_lcinf(const MatSubspace& v, std::size_t r, std::size_t s, std::uint64_t budget = default_budget());
/// V contains a rank-r element.
Verdict check_exist(const MatSubspace& v, std::size_t r, std::uint64_t budget = default_budget());
/// V is spanned by its rank-r elements when codim V <= C(r+2, 2) - 2.
Verdict check_condsuff(const MatSubspace& v, std::size_t r, std::uint64_t budget = default_budget());
/// V is spanned by its rank-p elements.
Verdict check_genrangmax(const MatSubspace& v, std::uint64_t budget = default_budget());

}  // namespace rankspan
