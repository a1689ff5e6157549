#include "rankspan/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>

namespace rankspan {

Fq::Fq(unsigned q) : q_(std::uint8_t(q)) {
  if (q != 2 && q != 3 && q != 5 && q != 7) {
    throw InvalidArgument("unsupported field size " + std::to_string(q) + " (expected 2, 3, 5 or 7)");
  }
  // Fermat: a^{q-2}.
  for (unsigned a = 1; a < q; ++a) {
    unsigned r = 1;
    for (unsigned e = 0; e + 2 < q; ++e) r = r * a % q;
    inv_[a] = Elem(r);
  }
}

Elem Fq::inv(Elem a) const {
  if (a == 0 || a >= q_) throw InvalidArgument("inverse of zero");
  return inv_[a];
}

FqMat::FqMat(Fq field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

FqMat::FqMat(Fq field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw InvalidArgument("matrix needs " + std::to_string(rows * cols) + " entries, got " +
                          std::to_string(entries_.size()));
  }
  for (Elem e : entries_) {
    if (e >= field_.q()) throw InvalidArgument("matrix entry out of range for F_" + std::to_string(field_.q()));
  }
}

FqMat FqMat::from_rows(Fq field, const std::vector<std::vector<int>>& rows) {
  std::size_t n = rows.size();
  std::size_t p = n ? rows[0].size() : 0;
  std::vector<Elem> e;
  e.reserve(n * p);
  for (const auto& r : rows) {
    if (r.size() != p) throw InvalidArgument("ragged matrix literal");
    for (int v : r) e.push_back(field.reduce(v));
  }
  return FqMat(field, n, p, std::move(e));
}

bool FqMat::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Elem e) { return e == 0; });
}

Elem FqMat::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw InvalidArgument("matrix index out of range");
  return entries_[i * cols_ + j];
}

void FqMat::set(std::size_t i, std::size_t j, Elem v) {
  if (i >= rows_ || j >= cols_) throw InvalidArgument("matrix index out of range");
  entries_[i * cols_ + j] = field_.reduce(v);
}

FqMat zero_matrix(Fq field, std::size_t rows, std::size_t cols) { return FqMat(field, rows, cols); }

FqMat identity(Fq field, std::size_t n) { return block_identity(field, n, n, n); }

FqMat elementary(Fq field, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  if (i >= rows || j >= cols) throw InvalidArgument("elementary matrix index out of range");
  FqMat m(field, rows, cols);
  m.set(i, j, 1);
  return m;
}

FqMat block_identity(Fq field, std::size_t rows, std::size_t cols, std::size_t k) {
  if (k > rows || k > cols) throw InvalidArgument("J_k larger than the ambient shape");
  FqMat m(field, rows, cols);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i, 1);
  return m;
}

FqMat transpose(const FqMat& m) {
  FqMat t(m.field(), m.cols(), m.rows());
  auto& te = t.mutable_entries();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) te[j * m.rows() + i] = m(i, j);
  return t;
}

namespace {

void require_same_shape(const FqMat& a, const FqMat& b) {
  if (a.field() != b.field() || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("matrix shape or field mismatch");
  }
}

void require_square(const FqMat& m, const char* what) {
  if (!m.is_square()) throw InvalidArgument(std::string(what) + " requires a square matrix");
}

// Packs each row into a 64-bit word (bit j = column j). Caller checks cols <= 64.
std::vector<std::uint64_t> pack_rows_f2(const FqMat& m) {
  std::vector<std::uint64_t> rows(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j)) rows[i] |= std::uint64_t{1} << j;
  return rows;
}

std::size_t rank_f2_packed(std::vector<std::uint64_t> rows) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint64_t pivot_row = rows[i];
    if (!pivot_row) continue;
    std::uint64_t low = pivot_row & (~pivot_row + 1);
    for (std::size_t k = i + 1; k < rows.size(); ++k)
      if (rows[k] & low) rows[k] ^= pivot_row;
    ++r;
  }
  return r;
}

// Forward elimination over a scratch copy; returns rank and the determinant
// factor accumulated from pivots and swaps (meaningful only when square).
std::pair<std::size_t, Elem> eliminate(const FqMat& m) {
  const Fq& f = m.field();
  const std::size_t n = m.rows(), p = m.cols();
  std::vector<Elem> a(m.entries().begin(), m.entries().end());
  Elem det = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < p && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && a[piv * p + c] == 0) ++piv;
    if (piv == n) {
      det = 0;
      continue;
    }
    if (piv != r) {
      std::swap_ranges(a.begin() + piv * p, a.begin() + piv * p + p, a.begin() + r * p);
      det = f.neg(det);
    }
    Elem pv = a[r * p + c];
    det = f.mul(det, pv);
    Elem pinv = f.inv(pv);
    for (std::size_t i = r + 1; i < n; ++i) {
      Elem x = a[i * p + c];
      if (!x) continue;
      Elem factor = f.neg(f.mul(x, pinv));
      for (std::size_t j = c; j < p; ++j) a[i * p + j] = f.axpy(a[i * p + j], factor, a[r * p + j]);
    }
    ++r;
  }
  if (r < n) det = 0;
  return {r, det};
}

}  // namespace

FqMat operator+(const FqMat& a, const FqMat& b) {
  require_same_shape(a, b);
  FqMat s = a;
  auto& se = s.mutable_entries();
  auto be = b.entries();
  for (std::size_t i = 0; i < se.size(); ++i) se[i] = a.field().add(se[i], be[i]);
  return s;
}

FqMat operator-(const FqMat& a, const FqMat& b) {
  require_same_shape(a, b);
  FqMat s = a;
  auto& se = s.mutable_entries();
  auto be = b.entries();
  for (std::size_t i = 0; i < se.size(); ++i) se[i] = a.field().sub(se[i], be[i]);
  return s;
}

FqMat operator*(const FqMat& a, const FqMat& b) {
  if (a.field() != b.field() || a.cols() != b.rows()) throw InvalidArgument("matrix product shape mismatch");
  const Fq& f = a.field();
  FqMat c(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      unsigned acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += unsigned(a(i, k)) * b(k, j);
      c.mutable_entries()[i * b.cols() + j] = Elem(acc % f.q());
    }
  return c;
}

FqMat scale(Elem c, const FqMat& m) {
  FqMat s = m;
  for (auto& e : s.mutable_entries()) e = m.field().mul(c, e);
  return s;
}

std::size_t rank(const FqMat& m) {
  if (m.q() == 2) {
    if (m.cols() <= 64) return rank_f2_packed(pack_rows_f2(m));
    if (m.rows() <= 64) return rank_f2_packed(pack_rows_f2(transpose(m)));
  }
  return eliminate(m).first;
}

Elem det(const FqMat& m) {
  require_square(m, "determinant");
  if (m.rows() == 0) return 1;
  if (m.q() == 2 && m.cols() <= 64) return rank_f2_packed(pack_rows_f2(m)) == m.rows() ? 1 : 0;
  return eliminate(m).second;
}

FqMat rref(const FqMat& m) {
  const Fq& f = m.field();
  const std::size_t n = m.rows(), p = m.cols();
  FqMat out = m;
  auto& a = out.mutable_entries();
  std::size_t r = 0;
  for (std::size_t c = 0; c < p && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && a[piv * p + c] == 0) ++piv;
    if (piv == n) continue;
    std::swap_ranges(a.begin() + piv * p, a.begin() + piv * p + p, a.begin() + r * p);
    Elem pinv = f.inv(a[r * p + c]);
    for (std::size_t j = 0; j < p; ++j) a[r * p + j] = f.mul(a[r * p + j], pinv);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i * p + c] == 0) continue;
      Elem factor = f.neg(a[i * p + c]);
      for (std::size_t j = 0; j < p; ++j) a[i * p + j] = f.axpy(a[i * p + j], factor, a[r * p + j]);
    }
    ++r;
  }
  return out;
}

bool is_invertible(const FqMat& m) { return m.is_square() && det(m) != 0; }

FqMat inverse(const FqMat& m) {
  require_square(m, "inverse");
  const std::size_t n = m.rows();
  FqMat aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m(i, j));
    aug.set(i, n + i, 1);
  }
  FqMat red = rref(aug);
  FqMat inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (red(i, i) != 1) throw InvalidArgument("matrix is singular");
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, red(i, n + j));
  }
  return inv;
}

std::vector<Elem> spectrum_in_field(const FqMat& m) {
  require_square(m, "spectrum");
  std::vector<Elem> spec;
  FqMat shifted = m;
  auto& e = shifted.mutable_entries();
  const Fq& f = m.field();
  for (unsigned lambda = 0; lambda < f.q(); ++lambda) {
    for (std::size_t i = 0; i < m.rows(); ++i) e[i * m.cols() + i] = f.sub(m(i, i), Elem(lambda));
    if (det(shifted) == 0) spec.push_back(Elem(lambda));
  }
  return spec;
}

bool has_zero_spectrum(const FqMat& m) {
  require_square(m, "spectrum");
  FqMat shifted = m;
  auto& e = shifted.mutable_entries();
  const Fq& f = m.field();
  for (unsigned lambda = 1; lambda < f.q(); ++lambda) {
    for (std::size_t i = 0; i < m.rows(); ++i) e[i * m.cols() + i] = f.sub(m(i, i), Elem(lambda));
    if (det(shifted) == 0) return false;
  }
  return true;
}

}  // namespace rankspan
