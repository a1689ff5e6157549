#include "rankspan/strata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include "rankspan/json_io.hpp"

namespace rankspan {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("RANKSPAN_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

double power_count(unsigned q, std::size_t d) { return std::pow(double(q), double(d)); }

void require_budget(unsigned q, std::size_t dim, std::uint64_t budget, const std::string& what) {
  double need = power_count(q, dim);
  if (need > double(budget)) {
    throw BudgetExceeded(what + " needs " + std::to_string(q) + "^" + std::to_string(dim) + " = " +
                             (need < 1e18 ? std::to_string(std::uint64_t(need)) : std::to_string(need)) + " elements, budget is " +
                             std::to_string(budget),
                         need, budget);
  }
}

ElementStream::ElementStream(const MatSubspace& v, std::uint64_t budget)
    : ElementStream(v, zero_matrix(v.field(), v.rows(), v.cols()), budget) {}

ElementStream::ElementStream(const MatSubspace& v, const FqMat& offset, std::uint64_t budget)
    : space_(&v), current_(offset), coeffs_(v.dim(), 0) {
  if (offset.field() != v.field() || offset.rows() != v.rows() || offset.cols() != v.cols()) {
    throw InvalidArgument("offset does not match the subspace ambient");
  }
  require_budget(v.q(), v.dim(), budget, "element enumeration");
  size_ = std::uint64_t(power_count(v.q(), v.dim()));
}

bool ElementStream::next() {
  if (produced_ == size_) return false;
  if (produced_++ == 0) return true;
  const Fq& f = space_->field();
  auto& cur = current_.mutable_entries();
  // Odometer step: every digit that moves goes up by one (mod q), which is
  // exactly one more copy of its basis vector.
  for (std::size_t j = coeffs_.size(); j-- > 0;) {
    axpy(f, cur, 1, space_->basis_vectors()[j]);
    coeffs_[j] = f.add(coeffs_[j], 1);
    if (coeffs_[j] != 0) break;
  }
  return true;
}

std::uint64_t RankProfile::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

json RankProfile::to_json() const {
  json j = json::object();
  for (std::size_t r = 0; r < counts.size(); ++r)
    if (counts[r]) j[std::to_string(r)] = counts[r];
  return j;
}

RankProfile rank_profile(const MatSubspace& v, std::uint64_t budget) {
  RankProfile p;
  p.counts.assign(std::min(v.rows(), v.cols()) + 1, 0);
  ElementStream s(v, budget);
  while (s.next()) ++p.counts[rank(s.current())];
  return p;
}

namespace {

constexpr std::uint64_t kDirectEnumerationLimit = 4096;
constexpr std::uint64_t kSamplerSeed = 0x5eed'0f'5a'3b1e'2024ULL;

double rank_one_count(unsigned q, std::size_t n, std::size_t p) {
  return (power_count(q, n) - 1) / (q - 1) * (power_count(q, p) - 1);
}

// Visits u v^T for u with leading entry 1 and v non-zero: each rank-1 matrix once.
template <class Fn>
void for_each_rank_one(Fq f, std::size_t n, std::size_t p, Fn&& fn) {
  const unsigned q = f.q();
  Vec u(n, 0), w(p, 0);
  auto bump = [q](Vec& x) {
    for (std::size_t i = x.size(); i-- > 0;) {
      if (++x[i] < q) return true;
      x[i] = 0;
    }
    return false;
  };
  FqMat m(f, n, p);
  while (bump(u)) {
    auto lead = std::find_if(u.begin(), u.end(), [](Elem e) { return e != 0; });
    if (*lead != 1) continue;
    std::fill(w.begin(), w.end(), 0);
    while (bump(w)) {
      auto& e = m.mutable_entries();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) e[i * p + j] = f.mul(u[i], w[j]);
      if (!fn(m)) return;
    }
  }
}

void validate_rank(const MatSubspace& v, std::size_t r) {
  if (r > std::min(v.rows(), v.cols())) throw InvalidArgument("rank exceeds min(n, p)");
}

json counterexample(std::string predicate, const MatSubspace& v) {
  return json{{"predicate", std::move(predicate)}, {"subspace", subspace_to_json(v)}};
}

Verdict base_verdict(std::string name, const MatSubspace& v, json extra) {
  Verdict out;
  out.suite = std::move(name);
  out.params = json{{"q", v.q()}, {"n", v.rows()}, {"p", v.cols()}, {"dim", v.dim()}, {"codim", v.codim()}};
  for (auto& [k, val] : extra.items()) out.params[k] = val;
  return out;
}

}  // namespace

StratumSpan stratum_span(const MatSubspace& v, std::size_t r, std::uint64_t budget) {
  validate_rank(v, r);
  const Fq& f = v.field();
  RowEchelon ech(f, v.ambient_dim());
  StratumSpan out{MatSubspace::zero(f, v.rows(), v.cols()), {}, false};
  auto offer = [&](const FqMat& m) {
    if (ech.insert(m.entries())) out.generators.push_back(m);
    return ech.rank() < v.dim();
  };
  auto finish = [&](bool complete) {
    out.span = MatSubspace::from_vectors(f, v.rows(), v.cols(), ech.rows());
    out.complete = complete;
    return out;
  };

  if (r == 0 || v.dim() == 0) return finish(true);

  const double elements = power_count(v.q(), v.dim());
  const double rank_ones = rank_one_count(v.q(), v.rows(), v.cols());
  if (r == 1 && (rank_ones <= elements || elements > double(budget))) {
    if (rank_ones > double(budget)) {
      throw BudgetExceeded("rank-1 stratum enumeration exceeds budget", rank_ones, budget);
    }
    bool stopped = false;
    for_each_rank_one(f, v.rows(), v.cols(), [&](const FqMat& m) {
      if (!v.contains(m)) return true;
      if (!offer(m)) stopped = true;
      return !stopped;
    });
    return finish(!stopped);
  }

  if (elements > double(kDirectEnumerationLimit)) {
    std::mt19937_64 rng(kSamplerSeed);
    const std::size_t samples = 64 * (v.dim() + 1) + 512;
    Vec coeffs(v.dim());
    for (std::size_t t = 0; t < samples; ++t) {
      for (auto& c : coeffs) c = Elem(rng() % v.q());
      FqMat m = v.element(coeffs);
      if (rank(m) == r && !offer(m)) return finish(false);
    }
  }

  ElementStream s(v, budget);
  while (s.next()) {
    if (rank(s.current()) == r && !offer(s.current())) return finish(false);
  }
  return finish(true);
}

MatSubspace span_of_rank(const MatSubspace& v, std::size_t r, std::uint64_t budget) {
  return stratum_span(v, r, budget).span;
}

std::optional<FqMat> find_rank_element(const MatSubspace& v, std::size_t r, std::uint64_t budget) {
  validate_rank(v, r);
  if (r == 0) return zero_matrix(v.field(), v.rows(), v.cols());
  StratumSpan s = stratum_span(v, r, budget);
  if (s.generators.empty()) return std::nullopt;
  return s.generators.front();
}

json SpanCertificate::to_json() const {
  json els = json::array(), tgs = json::array(), cos = json::array();
  for (const auto& e : elements) els.push_back(entries_to_json(e));
  for (const auto& t : targets) tgs.push_back(entries_to_json(t));
  for (const auto& c : coefficients) {
    json row = json::array();
    for (Elem x : c) row.push_back(int(x));
    cos.push_back(std::move(row));
  }
  return json{{"rank", rank}, {"elements", els}, {"targets", tgs}, {"coefficients", cos}};
}

SpanCertificate SpanCertificate::from_json(const json& j) {
  SpanCertificate c;
  c.rank = j.at("rank").get<std::size_t>();
  // Shape and field come from the enclosing subspace document.
  const json& ctx = j.at("ambient");
  Fq f(ctx.at("q").get<unsigned>());
  std::size_t n = ctx.at("rows").get<std::size_t>(), p = ctx.at("cols").get<std::size_t>();
  for (const auto& e : j.at("elements")) c.elements.push_back(entries_from_json(f, n, p, e));
  for (const auto& t : j.at("targets")) c.targets.push_back(entries_from_json(f, n, p, t));
  for (const auto& row : j.at("coefficients")) {
    Vec v;
    for (const auto& x : row) v.push_back(f.reduce(x.get<long long>()));
    c.coefficients.push_back(std::move(v));
  }
  return c;
}

std::optional<SpanCertificate> make_certificate(const MatSubspace& v, const StratumSpan& s, std::size_t r) {
  if (s.span != v) return std::nullopt;
  SpanCertificate c;
  c.rank = r;
  c.elements = s.generators;
  std::vector<Vec> gens;
  for (const auto& g : s.generators) gens.emplace_back(g.entries().begin(), g.entries().end());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    c.targets.push_back(v.basis_matrix(i));
    auto coeffs = solve_combination(v.field(), gens, v.basis_vectors()[i]);
    if (!coeffs) return std::nullopt;
    c.coefficients.push_back(std::move(*coeffs));
  }
  return c;
}

bool verify_certificate(const MatSubspace& v, const SpanCertificate& cert) {
  if (cert.targets.size() != v.dim() || cert.coefficients.size() != v.dim()) return false;
  for (const auto& e : cert.elements) {
    if (e.field() != v.field() || e.rows() != v.rows() || e.cols() != v.cols()) return false;
    if (rank(e) != cert.rank || !v.contains(e)) return false;
  }
  const Fq& f = v.field();
  for (std::size_t t = 0; t < v.dim(); ++t) {
    const FqMat& target = cert.targets[t];
    if (target != v.basis_matrix(t)) return false;
    if (cert.coefficients[t].size() != cert.elements.size()) return false;
    Vec acc(v.ambient_dim(), 0);
    for (std::size_t e = 0; e < cert.elements.size(); ++e) axpy(f, acc, cert.coefficients[t][e], cert.elements[e].entries());
    if (!std::equal(acc.begin(), acc.end(), target.entries().begin())) return false;
  }
  return true;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

json certificate_json(const MatSubspace& v, const SpanCertificate& c) {
  json j = c.to_json();
  j["ambient"] = json{{"q", v.q()}, {"rows", v.rows()}, {"cols", v.cols()}};
  return j;
}

bool is_lcinf_exception(const MatSubspace& v, std::size_t r) {
  return v.rows() == 2 && v.cols() == 2 && r == 2 && v.q() == 2 && v.codim() == 1;
}

}  // namespace

Verdict check_lcinf(const MatSubspace& v, std::size_t r, std::size_t s, std::uint64_t budget) {
  if (r < 1 || r > v.cols() || s > r) throw InvalidArgument("lcinf needs 1 <= r <= p and 0 <= s <= r");
  Verdict out = base_verdict("lcinf", v, json{{"r", r}, {"s", s}});
  if (v.rows() < v.cols() || v.codim() >= v.rows()) {
    out.status = Status::HypothesisNotMet;
    out.witness = json{{"reason", "requires n >= p and codim V < n"}};
    return out;
  }
  const bool exception = is_lcinf_exception(v, r);
  if (!exception && (s == r || s == 0)) {
    // A rank-r matrix is its own combination; the zero matrix is the empty one.
    out.witness = json{{"reason", s == 0 ? "zero matrix" : "s equals r"}};
    return out;
  }
  StratumSpan st = stratum_span(v, r, budget);
  out.counts["span_dim"] = st.span.dim();
  std::optional<FqMat> outside;
  if (st.span != v) {
    ElementStream es(v, budget);
    while (es.next()) {
      if (rank(es.current()) == s && !st.span.contains(es.current())) {
        outside = es.current();
        break;
      }
    }
  }
  if (exception) {
    out.status = Status::ExceptionRegime;
    out.witness = json{{"conclusion_holds", !outside.has_value()}};
    if (outside) out.witness["element"] = entries_to_json(*outside);
    return out;
  }
  if (outside) {
    out.status = Status::Fail;
    json ce = counterexample("lcinf", v);
    ce["r"] = r;
    ce["s"] = s;
    ce["element"] = entries_to_json(*outside);
    out.witness = json{{"counterexample", ce}};
    return out;
  }
  if (auto cert = make_certificate(v, st, r)) {
    out.witness = json{{"certificate", certificate_json(v, *cert)}};
  } else {
    out.witness = json{{"span_dim", st.span.dim()}, {"stratum_complete", st.complete}};
  }
  return out;
}

Verdict check_exist(const MatSubspace& v, std::size_t r, std::uint64_t budget) {
  if (r < 1 || r > v.cols()) throw InvalidArgument("exist needs 1 <= r <= p");
  Verdict out = base_verdict("exist", v, json{{"r", r}});
  const bool hypothesis = v.rows() >= v.cols() && v.codim() < v.rows();
  std::optional<FqMat> found;
  try {
    found = find_rank_element(v, r, budget);
  } catch (const BudgetExceeded&) {
    if (hypothesis) throw;
    out.status = Status::HypothesisNotMet;
    out.witness = json{{"reason", "requires n >= p and codim V < n"}};
    return out;
  }
  if (!hypothesis) {
    out.status = Status::HypothesisNotMet;
    out.witness = json{{"reason", "requires n >= p and codim V < n"}, {"has_rank_r", found.has_value()}};
    if (found) out.witness["element"] = entries_to_json(*found);
    return out;
  }
  if (!found) {
    out.status = Status::Fail;
    json ce = counterexample("exist", v);
    ce["r"] = r;
    out.witness = json{{"counterexample", ce}};
    return out;
  }
  out.witness = json{{"element", entries_to_json(*found)}};
  return out;
}

Verdict check_condsuff(const MatSubspace& v, std::size_t r, std::uint64_t budget) {
  if (r < 1 || r + 1 > v.cols()) throw InvalidArgument("condsuff needs 1 <= r <= p - 1");
  Verdict out = base_verdict("condsuff", v, json{{"r", r}});
  const std::size_t bound = binomial(r + 2, 2) - 2;
  out.params["codim_bound"] = bound;
  StratumSpan st = stratum_span(v, r, budget);
  const bool spanned = st.span == v;
  out.counts["span_dim"] = st.span.dim();
  if (v.rows() < v.cols() || v.codim() >= v.rows() || v.codim() > bound) {
    out.status = Status::HypothesisNotMet;
    out.witness = json{{"reason", "requires n >= p, codim V < n and codim V <= C(r+2,2)-2"}, {"spanned", spanned}};
    return out;
  }
  if (!spanned) {
    out.status = Status::Fail;
    json ce = counterexample("spanned_by_rank", v);
    ce["r"] = r;
    out.witness = json{{"counterexample", ce}};
    return out;
  }
  out.witness = json{{"certificate", certificate_json(v, *make_certificate(v, st, r))}};
  return out;
}

Verdict check_genrangmax(const MatSubspace& v, std::uint64_t budget) {
  const std::size_t n = v.rows(), p = v.cols();
  Verdict out = base_verdict("genrangmax", v, json{{"r", p}});
  if (n < p || v.codim() >= n) {
    out.status = Status::HypothesisNotMet;
    out.witness = json{{"reason", "requires n >= p and codim V < n"}};
    return out;
  }
  StratumSpan st = stratum_span(v, p, budget);
  const bool spanned = st.span == v;
  out.counts["span_dim"] = st.span.dim();
  const bool excluded = n == 2 && p == 2 && v.q() == 2 && v.codim() + 1 >= n;
  if (excluded && !spanned) {
    out.status = Status::HypothesisNotMet;
    out.witness = json{{"reason", "(n,p,#K) = (2,2,2) requires codim V < n - 1"}, {"spanned", false}};
    return out;
  }
  if (!spanned) {
    out.status = Status::Fail;
    json ce = counterexample("spanned_by_rank", v);
    ce["r"] = p;
    out.witness = json{{"counterexample", ce}};
    return out;
  }
  out.witness = json{{"certificate", certificate_json(v, *make_certificate(v, st, p))}};
  if (excluded) out.witness["note"] = "outside the hypothesis, spanned anyway";
  return out;
}

}  // namespace rankspan
