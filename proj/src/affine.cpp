#include "rankspan/affine.hpp"

#include <optional>

#include "rankspan/grassmannian.hpp"
#include "rankspan/json_io.hpp"

namespace rankspan {

AffineMatSubspace::AffineMatSubspace(const FqMat& point, MatSubspace direction)
    : point_(direction.reduce(point)), direction_(std::move(direction)) {}

bool AffineMatSubspace::contains(const FqMat& m) const { return direction_.contains(m - point_); }

MatSubspace AffineMatSubspace::linear_span() const {
  std::vector<Vec> gens = direction_.basis_vectors();
  gens.emplace_back(point_.entries().begin(), point_.entries().end());
  return MatSubspace::from_vectors(field(), rows(), cols(), gens);
}

AffineMatSubspace equiv_act(const FqMat& p, const AffineMatSubspace& a, const FqMat& q) {
  MatSubspace dir = equiv_act(p, a.direction(), q);
  return AffineMatSubspace(p * a.point() * q, std::move(dir));
}

std::size_t min_rank(const AffineMatSubspace& a, std::uint64_t budget) {
  ElementStream s(a.direction(), a.point(), budget);
  std::size_t best = std::min(a.rows(), a.cols());
  while (s.next() && best > 0) best = std::min(best, rank(s.current()));
  return best;
}

std::size_t h_value(std::size_t n, std::size_t p, std::size_t k) { return n * p - std::size_t(binomial(k + 1, 2)); }

std::uint64_t coset_count(std::size_t m, std::size_t d, unsigned q) {
  std::uint64_t c = gaussian_binomial(m, d, q);
  for (std::size_t i = d; i < m; ++i) c *= q;
  return c;
}

namespace {

MatSubspace extremal_direction(std::size_t n, std::size_t p, std::size_t k, Fq field) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      if (!(i < k && j < k && i >= j)) pos.push_back(i * p + j);
  return coordinate_subspace(field, n, p, pos);
}

bool enumerable(const MatSubspace& v, std::uint64_t budget) { return power_count(v.q(), v.dim()) <= double(budget); }

}  // namespace

AffineMatSubspace extremal_affine(std::size_t n, std::size_t p, std::size_t k, Fq field, std::uint64_t budget) {
  if (k < 1 || p < k || n < p) throw InvalidArgument("extremal_affine needs n >= p >= k >= 1");
  AffineMatSubspace a(block_identity(field, n, p, k), extremal_direction(n, p, k, field));
  if (a.codim() != binomial(k + 1, 2)) throw Error("extremal coset has the wrong codimension");
  if (enumerable(a.direction(), budget) && min_rank(a, budget) < k) {
    throw Error("extremal coset contains a matrix of rank below k");
  }
  return a;
}

bool unspanned_in_theorem_regime(std::size_t n, std::size_t r) { return binomial(r + 2, 2) - 1 < n; }

MatSubspace unspanned_subspace(std::size_t n, std::size_t p, std::size_t r, Fq field, std::uint64_t budget) {
  if (r < 1 || p < r + 1 || n < p) throw InvalidArgument("unspanned_subspace needs n >= p >= r + 1, r >= 1");
  AffineMatSubspace a = extremal_affine(n, p, r + 1, field, 0);
  MatSubspace v = a.linear_span();
  if (v.codim() != binomial(r + 2, 2) - 1) throw Error("unspanned construction has the wrong codimension");
  if (enumerable(v, budget)) {
    ElementStream s(v, budget);
    while (s.next()) {
      if (rank(s.current()) <= r && !a.direction().contains(s.current())) {
        throw Error("a rank <= r element escapes the translation space");
      }
    }
    if (span_of_rank(v, r, budget) == v) throw Error("unspanned construction is spanned by rank-r matrices");
  }
  return v;
}

Verdict check_flanders(const AffineMatSubspace& a, std::uint64_t budget) {
  const std::size_t n = a.rows(), p = a.cols();
  Verdict out;
  out.suite = "flanders";
  out.params = json{{"q", a.field().q()}, {"n", n}, {"p", p}, {"dim", a.dim()}, {"codim", a.codim()}};
  if (n < p) {
    out.status = Status::HypothesisNotMet;
    out.witness = json{{"reason", "requires n >= p"}};
    return out;
  }
  ElementStream s(a.direction(), a.point(), budget);
  while (s.next()) {
    if (rank(s.current()) == p) {
      out.status = Status::Vacuous;
      out.witness = json{{"full_rank_element", entries_to_json(s.current())}};
      return out;
    }
  }
  const bool linear = a.is_linear();
  out.witness = json{{"linear", linear}};
  auto fail = [&](const char* why) {
    out.status = Status::Fail;
    out.witness = json{{"counterexample", json{{"predicate", "flanders"}, {"affine", affine_to_json(a)}, {"violation", why}}}};
  };
  if (a.codim() < n) {
    fail("codim < n without a rank-p element");
  } else if (a.codim() == n && !linear) {
    if (n == 2 && p == 2 && a.field().q() == 2) {
      out.status = Status::ExceptionRegime;
      out.witness["affine"] = affine_to_json(a);
    } else {
      fail("codim = n, no rank-p element, not linear");
    }
  }
  return out;
}

Verdict check_h_bound(std::size_t n, std::size_t p, std::size_t k, Fq field, HBoundMode mode, std::uint64_t budget,
                      std::uint64_t scan_budget) {
  if (k < 1 || p < k || n < p) throw InvalidArgument("h bound needs n >= p >= k >= 1");
  const std::size_t h = h_value(n, p, k);
  Verdict out;
  out.suite = "hbound";
  out.params = json{{"q", field.q()}, {"n", n}, {"p", p}, {"k", k}, {"h", h},
                    {"mode", mode == HBoundMode::Construct ? "construct" : "exhaustive"}};
  if (mode == HBoundMode::Construct) {
    AffineMatSubspace a = extremal_affine(n, p, k, field, 0);
    const std::size_t mr = min_rank(a, budget);
    out.counts["dim"] = a.dim();
    out.counts["min_rank"] = mr;
    out.witness = json{{"affine", affine_to_json(a)}};
    if (a.dim() != h || mr < k) {
      out.status = Status::Fail;
      out.witness = json{{"counterexample", json{{"predicate", "h_lower_bound"}, {"affine", affine_to_json(a)}, {"k", k}}}};
    }
    return out;
  }

  const std::size_t m = n * p, d = h + 1;
  const std::uint64_t expected = coset_count(m, d, field.q());
  out.counts["expected_cosets"] = expected;
  if (expected > scan_budget) {
    throw BudgetExceeded("h bound scan needs " + std::to_string(expected) + " cosets", double(expected), scan_budget);
  }
  require_budget(field.q(), d, budget, "h bound coset enumeration");
  std::uint64_t scanned = 0;
  std::optional<AffineMatSubspace> witness;
  for_each_subspace(field, m, d, [&](const std::vector<Vec>& rows) {
    MatSubspace dir = MatSubspace::from_vectors(field, n, p, rows);
    return for_each_transversal(field, m, dir.pivots(), [&](const Vec& rep) {
      ++scanned;
      FqMat point(field, n, p, rep);
      ElementStream s(dir, point, budget);
      bool low = false;
      while (!low && s.next()) low = rank(s.current()) < k;
      if (!low) {
        witness.emplace(point, dir);
        return false;
      }
      return true;
    });
  });
  out.counts["scanned_cosets"] = scanned;
  if (witness) {
    out.status = Status::Fail;
    out.witness = json{{"counterexample", json{{"predicate", "h_upper_bound"}, {"affine", affine_to_json(*witness)}, {"k", k}}}};
    return out;
  }
  if (scanned != expected) {
    out.status = Status::Fail;
    out.witness = json{{"error", "coset count disagrees with the closed form"}};
  }
  return out;
}

}  // namespace rankspan
