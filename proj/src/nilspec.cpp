#include "rankspan/nilspec.hpp"

#include <algorithm>
#include <numeric>

#include "rankspan/json_io.hpp"

namespace rankspan {

namespace {

void require_square(const MatSubspace& v) {
  if (v.rows() != v.cols()) throw InvalidArgument("zero-spectrum operations need a square ambient");
}

void require_permutation(const Permutation& order, std::size_t n) {
  if (order.size() != n) throw InvalidArgument("permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (auto i : order) {
    if (i >= n || seen[i]) throw InvalidArgument("not a permutation");
    seen[i] = true;
  }
}

// Elements of V whose column `col` vanishes off the diagonal entry.
MatSubspace column_constrained(const MatSubspace& v, std::size_t col) {
  const std::size_t n = v.rows();
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != col || i == col) pos.push_back(i * n + j);
  return intersect(v, coordinate_subspace(v.field(), n, n, pos));
}

// Image of V under M -> M restricted to rows and columns `keep`.
MatSubspace principal_image(const MatSubspace& v, const std::vector<std::size_t>& keep) {
  const std::size_t n = v.rows(), k = keep.size();
  std::vector<Vec> images;
  for (const auto& b : v.basis_vectors()) {
    Vec w(k * k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t c = 0; c < k; ++c) w[a * k + c] = b[keep[a] * n + keep[c]];
    images.push_back(std::move(w));
  }
  return MatSubspace::from_vectors(v.field(), k, k, images);
}

Permutation recursive_order(const MatSubspace& v) {
  const std::size_t n = v.rows();
  if (n == 1) return {0};
  const std::size_t i = find_zero_row_index(v).index;
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < n; ++j)
    if (j != i) rest.push_back(j);
  Permutation inner = recursive_order(principal_image(column_constrained(v, i), rest));
  Permutation order;
  for (auto a : inner) order.push_back(rest[a]);
  order.push_back(i);
  return order;
}

Permutation exhaustive_order(const MatSubspace& v) {
  const std::size_t n = v.rows();
  if (n > 8) throw InvalidArgument("exhaustive triangularization is limited to n <= 8");
  Permutation order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    if (triangularizes(v, order)) return order;
  } while (std::next_permutation(order.begin(), order.end()));
  throw NotFound("no permutation P with P V P^-1 meeting the lower triangular space trivially");
}

}  // namespace

Verdict has_zero_spectrum_property(const MatSubspace& v, std::uint64_t budget) {
  require_square(v);
  Verdict out;
  out.suite = "zero_spectrum";
  out.params = json{{"q", v.q()}, {"n", v.rows()}, {"dim", v.dim()}};
  ElementStream s(v, budget);
  while (s.next()) {
    auto spec = spectrum_in_field(s.current());
    auto nonzero = std::find_if(spec.begin(), spec.end(), [](Elem e) { return e != 0; });
    if (nonzero != spec.end()) {
      out.status = Status::Fail;
      out.witness = json{{"counterexample", json{{"predicate", "zero_spectrum"},
                                                 {"subspace", subspace_to_json(v)},
                                                 {"element", entries_to_json(s.current())},
                                                 {"eigenvalue", int(*nonzero)}}}};
      return out;
    }
  }
  out.counts["elements"] = s.size();
  return out;
}

ZeroRowWitness find_zero_row_index(const MatSubspace& v) {
  require_square(v);
  for (std::size_t i = 0; i < v.rows(); ++i) {
    MatSubspace r = row_restriction(v, i);
    if (r.dim() == 0) return {i, std::move(r)};
  }
  throw NoZeroRowIndex("R_i(V) is non-zero for every row index i");
}

CycleWitness build_cycle_witness(const MatSubspace& v, std::span<const std::size_t> f, std::size_t start) {
  require_square(v);
  const std::size_t n = v.rows();
  if (f.size() != n || start >= n) throw InvalidArgument("cycle map must be defined on every index");
  for (std::size_t k = 0; k < n; ++k) {
    if (f[k] >= n) throw InvalidArgument("cycle map leaves the index range");
    if (!v.contains(elementary(v.field(), n, n, f[k], k))) {
      throw InvalidArgument("E_{f(k),k} is not in V for k = " + std::to_string(k + 1));
    }
  }
  std::vector<std::size_t> first_seen(n, n);
  std::vector<std::size_t> path;
  std::size_t x = start;
  while (first_seen[x] == n) {
    first_seen[x] = path.size();
    path.push_back(x);
    x = f[x];
  }
  CycleWitness w{std::vector<std::size_t>(f.begin(), f.end()),
                 std::vector<std::size_t>(path.begin() + std::ptrdiff_t(first_seen[x]), path.end()),
                 zero_matrix(v.field(), n, n)};
  for (auto i : w.cycle) w.matrix.set(f[i], i, 1);
  return w;
}

bool verify_cycle_witness(const MatSubspace& v, const CycleWitness& w) {
  const std::size_t n = v.rows();
  if (w.f.size() != n || w.cycle.empty()) return false;
  std::vector<bool> seen(n, false);
  for (auto i : w.cycle) {
    if (i >= n || seen[i]) return false;
    seen[i] = true;
  }
  FqMat expected = zero_matrix(v.field(), n, n);
  for (std::size_t k = 0; k < w.cycle.size(); ++k) {
    std::size_t from = w.cycle[k], to = w.cycle[(k + 1) % w.cycle.size()];
    if (w.f[from] != to) return false;
    expected.set(to, from, 1);
  }
  if (w.matrix != expected || !v.contains(w.matrix)) return false;
  // M x = x for the indicator of the cycle.
  FqMat x = zero_matrix(v.field(), n, 1);
  for (auto i : w.cycle) x.set(i, 0, 1);
  if (w.matrix * x != x) return false;
  auto spec = spectrum_in_field(w.matrix);
  return std::find(spec.begin(), spec.end(), Elem(1)) != spec.end();
}

BlockDecomposition decompose_last_column(const FqMat& m) {
  if (!m.is_square() || m.rows() < 2) throw InvalidArgument("block decomposition needs a square matrix of order >= 2");
  const std::size_t n = m.rows(), k = n - 1;
  for (std::size_t i = 0; i < k; ++i)
    if (m(i, k) != 0) throw InvalidArgument("last column does not vanish above the diagonal");
  BlockDecomposition b{FqMat(m.field(), k, k), FqMat(m.field(), 1, k), m(k, k)};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b.a.set(i, j, m(i, j));
  for (std::size_t j = 0; j < k; ++j) b.l.set(0, j, m(k, j));
  return b;
}

FqMat assemble(const BlockDecomposition& b) {
  const std::size_t k = b.a.rows();
  if (!b.a.is_square() || b.l.rows() != 1 || b.l.cols() != k) throw InvalidArgument("inconsistent block shapes");
  FqMat m(b.a.field(), k + 1, k + 1);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m.set(i, j, b.a(i, j));
  for (std::size_t j = 0; j < k; ++j) m.set(k, j, b.l(0, j));
  m.set(k, k, b.alpha);
  return m;
}

FqMat compress_last_row_zero(const FqMat& m) {
  if (!m.is_square() || m.rows() < 2) throw InvalidArgument("compression needs a square matrix of order >= 2");
  const std::size_t k = m.rows() - 1;
  for (std::size_t j = 0; j <= k; ++j)
    if (m(k, j) != 0) throw InvalidArgument("last row does not vanish");
  FqMat out(m.field(), k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.set(i, j, m(i, j));
  return out;
}

MatSubspace last_column_constrained(const MatSubspace& v) {
  require_square(v);
  return column_constrained(v, v.rows() - 1);
}

MatSubspace top_left_image(const MatSubspace& w) {
  require_square(w);
  if (w.rows() < 2) throw InvalidArgument("top-left block needs order >= 2");
  std::vector<std::size_t> keep(w.rows() - 1);
  std::iota(keep.begin(), keep.end(), 0);
  return principal_image(w, keep);
}

Verdict check_gerstenhaber_bound(const MatSubspace& v) {
  require_square(v);
  const std::size_t bound = std::size_t(binomial(v.rows(), 2));
  Verdict out;
  out.suite = "gerstenhaber_bound";
  out.params = json{{"q", v.q()}, {"n", v.rows()}, {"dim", v.dim()}, {"bound", bound}};
  if (v.dim() > bound) {
    out.status = Status::Fail;
    out.witness = json{{"counterexample", json{{"predicate", "gerstenhaber_bound"}, {"subspace", subspace_to_json(v)}}}};
  }
  return out;
}

MatSubspace conjugate(const MatSubspace& v, const Permutation& order) {
  require_square(v);
  require_permutation(order, v.rows());
  return principal_image(v, order);
}

FqMat permutation_matrix(Fq field, const Permutation& order) {
  require_permutation(order, order.size());
  FqMat p(field, order.size(), order.size());
  for (std::size_t a = 0; a < order.size(); ++a) p.set(a, order[a], 1);
  return p;
}

bool triangularizes(const MatSubspace& v, const Permutation& order) {
  MatSubspace c = conjugate(v, order);
  return intersect(c, lower_triangular(v.field(), v.rows())).dim() == 0;
}

Triangularization triangularizing_permutation(const MatSubspace& v, TriangularizeMode mode) {
  require_square(v);
  if (mode == TriangularizeMode::Exhaustive) return {exhaustive_order(v), false};
  try {
    Permutation order = recursive_order(v);
    if (triangularizes(v, order)) return {std::move(order), false};
  } catch (const NoZeroRowIndex&) {
  }
  return {exhaustive_order(v), true};
}

}  // namespace rankspan
