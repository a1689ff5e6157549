#include "rankspan/subspace.hpp"

#include <algorithm>
#include <string>

namespace rankspan {

MatSubspace::MatSubspace(Fq field, std::size_t rows, std::size_t cols, RowEchelon echelon)
    : field_(field),
      rows_(rows),
      cols_(cols),
      basis_(echelon.rows()),
      pivots_(echelon.pivots()),
      annihilator_(null_space(field, rows * cols, basis_)) {
  if (rows == 0 || cols == 0) throw InvalidArgument("ambient matrix shape must be positive");
}

MatSubspace MatSubspace::from_basis(Fq field, std::size_t rows, std::size_t cols, std::span<const FqMat> mats) {
  RowEchelon e(field, rows * cols);
  for (const auto& m : mats) {
    if (m.field() != field || m.rows() != rows || m.cols() != cols) {
      throw InvalidArgument("basis matrix does not match the ambient shape or field");
    }
    e.insert(m.entries());
  }
  return MatSubspace(field, rows, cols, std::move(e));
}

MatSubspace MatSubspace::from_vectors(Fq field, std::size_t rows, std::size_t cols, const std::vector<Vec>& vectors) {
  RowEchelon e(field, rows * cols);
  for (const auto& v : vectors) {
    for (Elem x : v)
      if (x >= field.q()) throw InvalidArgument("vector entry out of range");
    e.insert(v);
  }
  return MatSubspace(field, rows, cols, std::move(e));
}

MatSubspace MatSubspace::zero(Fq field, std::size_t rows, std::size_t cols) {
  return MatSubspace(field, rows, cols, RowEchelon(field, rows * cols));
}

MatSubspace MatSubspace::full(Fq field, std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> all(rows * cols);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return coordinate_subspace(field, rows, cols, all);
}

std::vector<FqMat> MatSubspace::basis() const {
  std::vector<FqMat> out;
  out.reserve(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) out.push_back(basis_matrix(i));
  return out;
}

FqMat MatSubspace::basis_matrix(std::size_t i) const { return FqMat(field_, rows_, cols_, basis_.at(i)); }

bool MatSubspace::contains_vector(std::span<const Elem> v) const {
  if (v.size() != ambient_dim()) throw InvalidArgument("vector width mismatch");
  for (const auto& f : annihilator_)
    if (dot(field_, f, v) != 0) return false;
  return true;
}

bool MatSubspace::contains(const FqMat& m) const {
  if (m.field() != field_ || m.rows() != rows_ || m.cols() != cols_) {
    throw InvalidArgument("matrix does not match the subspace ambient");
  }
  return contains_vector(m.entries());
}

bool MatSubspace::contains(const MatSubspace& other) const {
  if (!same_ambient(other)) throw InvalidArgument("subspace ambient mismatch");
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const Vec& b) { return contains_vector(b); });
}

FqMat MatSubspace::element(std::span<const Elem> coeffs) const {
  if (coeffs.size() != basis_.size()) throw InvalidArgument("coefficient count must equal dim");
  Vec v(ambient_dim(), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) axpy(field_, v, coeffs[i], basis_[i]);
  return FqMat(field_, rows_, cols_, std::move(v));
}

FqMat MatSubspace::reduce(const FqMat& m) const {
  if (m.field() != field_ || m.rows() != rows_ || m.cols() != cols_) {
    throw InvalidArgument("matrix does not match the subspace ambient");
  }
  Vec r(m.entries().begin(), m.entries().end());
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    Elem c = r[pivots_[k]];
    if (c) axpy(field_, r, field_.neg(c), basis_[k]);
  }
  return FqMat(field_, rows_, cols_, std::move(r));
}

MatSubspace intersect(const MatSubspace& a, const MatSubspace& b) {
  if (!a.same_ambient(b)) throw InvalidArgument("subspace ambient mismatch");
  std::vector<Vec> forms = a.annihilator();
  forms.insert(forms.end(), b.annihilator().begin(), b.annihilator().end());
  return MatSubspace::from_vectors(a.field(), a.rows(), a.cols(), null_space(a.field(), a.ambient_dim(), forms));
}

MatSubspace sum(const MatSubspace& a, const MatSubspace& b) {
  if (!a.same_ambient(b)) throw InvalidArgument("subspace ambient mismatch");
  std::vector<Vec> all = a.basis_vectors();
  all.insert(all.end(), b.basis_vectors().begin(), b.basis_vectors().end());
  return MatSubspace::from_vectors(a.field(), a.rows(), a.cols(), all);
}

MatSubspace equiv_act(const FqMat& p, const MatSubspace& v, const FqMat& q) {
  if (p.field() != v.field() || q.field() != v.field() || p.rows() != v.rows() || p.cols() != v.rows() ||
      q.rows() != v.cols() || q.cols() != v.cols()) {
    throw InvalidArgument("equivalence action shape mismatch");
  }
  if (!is_invertible(p) || !is_invertible(q)) throw InvalidArgument("equivalence action needs invertible P and Q");
  std::vector<FqMat> mapped;
  for (const auto& b : v.basis()) mapped.push_back(p * b * q);
  return MatSubspace::from_basis(v.field(), v.rows(), v.cols(), mapped);
}

MatSubspace trace_orthogonal(const MatSubspace& v) {
  if (v.rows() != v.cols()) throw InvalidArgument("trace orthogonal needs a square ambient");
  // tr(AB) = sum_{i,j} A_ij B_ji, so the form attached to A is vec(A^T).
  std::vector<Vec> forms;
  for (const auto& a : v.basis()) {
    FqMat t = transpose(a);
    forms.emplace_back(t.entries().begin(), t.entries().end());
  }
  return MatSubspace::from_vectors(v.field(), v.rows(), v.cols(), null_space(v.field(), v.ambient_dim(), forms));
}

MatSubspace coordinate_subspace(Fq field, std::size_t rows, std::size_t cols, std::span<const std::size_t> positions) {
  std::vector<Vec> vs;
  for (std::size_t pos : positions) {
    if (pos >= rows * cols) throw InvalidArgument("coordinate out of range");
    Vec v(rows * cols, 0);
    v[pos] = 1;
    vs.push_back(std::move(v));
  }
  return MatSubspace::from_vectors(field, rows, cols, vs);
}

MatSubspace row_restriction(const MatSubspace& v, std::size_t i) {
  if (i >= v.rows()) throw InvalidArgument("row index out of range");
  std::vector<std::size_t> pos;
  for (std::size_t j = 0; j < v.cols(); ++j) pos.push_back(i * v.cols() + j);
  return intersect(v, coordinate_subspace(v.field(), v.rows(), v.cols(), pos));
}

MatSubspace column_restriction(const MatSubspace& v, std::size_t r) {
  if (r == 0 || r > v.cols()) throw InvalidArgument("column count out of range");
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) pos.push_back(i * v.cols() + j);
  MatSubspace left = intersect(v, coordinate_subspace(v.field(), v.rows(), v.cols(), pos));
  std::vector<Vec> cut;
  for (const auto& b : left.basis_vectors()) {
    Vec w;
    w.reserve(v.rows() * r);
    for (std::size_t i = 0; i < v.rows(); ++i)
      for (std::size_t j = 0; j < r; ++j) w.push_back(b[i * v.cols() + j]);
    cut.push_back(std::move(w));
  }
  return MatSubspace::from_vectors(v.field(), v.rows(), r, cut);
}

std::string_view to_string(HyperplaneClass c) { return c == HyperplaneClass::Sl2 ? "SL2_CLASS" : "T2PLUS_CLASS"; }

HyperplaneClass classify_hyperplane_2x2_f2(const MatSubspace& h) {
  if (h.q() != 2 || h.rows() != 2 || h.cols() != 2 || h.dim() != 3) {
    throw InvalidArgument("classifier expects a hyperplane of Mat_2(F_2)");
  }
  MatSubspace perp = trace_orthogonal(h);
  // Over F_2 a line has a single non-zero vector.
  return rank(perp.basis_matrix(0)) == 2 ? HyperplaneClass::Sl2 : HyperplaneClass::T2Plus;
}

MatSubspace trace_zero(Fq field, std::size_t n) {
  std::vector<FqMat> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) gens.push_back(elementary(field, n, n, i, j));
  for (std::size_t i = 1; i < n; ++i) gens.push_back(elementary(field, n, n, 0, 0) - elementary(field, n, n, i, i));
  return MatSubspace::from_basis(field, n, n, gens);
}

MatSubspace sl2_f2() { return trace_zero(Fq(2), 2); }

namespace {

template <class Pred>
MatSubspace triangle(Fq field, std::size_t n, Pred keep) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (keep(i, j)) pos.push_back(i * n + j);
  return coordinate_subspace(field, n, n, pos);
}

}  // namespace

MatSubspace upper_triangular(Fq field, std::size_t n) {
  return triangle(field, n, [](std::size_t i, std::size_t j) { return i <= j; });
}

MatSubspace strictly_upper_triangular(Fq field, std::size_t k) {
  return triangle(field, k, [](std::size_t i, std::size_t j) { return i < j; });
}

MatSubspace lower_triangular(Fq field, std::size_t n) {
  return triangle(field, n, [](std::size_t i, std::size_t j) { return i >= j; });
}

MatSubspace named_space(std::string_view name, const NamedSpaceParams& params) {
  Fq f(params.q);
  const std::size_t n = params.n;
  const std::size_t p = params.p ? params.p : params.n;
  if (n == 0) throw InvalidArgument("dimension must be positive");
  auto require_square = [&] {
    if (p != n) throw InvalidArgument(std::string(name) + " needs a square ambient");
  };
  if (name == "sl2_f2") {
    if (params.q != 2 || n != 2 || p != 2) throw InvalidArgument("sl2_f2 lives in Mat_2(F_2)");
    return sl2_f2();
  }
  if (name == "sl") return require_square(), trace_zero(f, n);
  if (name == "t_upper") return require_square(), upper_triangular(f, n);
  if (name == "t_strict_upper") return require_square(), strictly_upper_triangular(f, n);
  if (name == "t_lower") return require_square(), lower_triangular(f, n);
  if (name == "full") return MatSubspace::full(f, n, p);
  if (name == "zero") return MatSubspace::zero(f, n, p);
  throw InvalidArgument("unknown named space '" + std::string(name) + "'");
}

}  // namespace rankspan
