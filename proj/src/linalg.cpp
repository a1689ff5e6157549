#include "rankspan/linalg.hpp"

#include <algorithm>

namespace rankspan {

RowEchelon::RowEchelon(Fq field, std::size_t width) : field_(field), width_(width) {}

Vec RowEchelon::reduce(std::span<const Elem> v) const {
  Vec r(v.begin(), v.end());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    Elem c = r[pivots_[k]];
    if (c) axpy(field_, r, field_.neg(c), rows_[k]);
  }
  return r;
}

bool RowEchelon::contains(std::span<const Elem> v) const {
  if (v.size() != width_) throw InvalidArgument("vector width mismatch");
  Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; });
}

bool RowEchelon::insert(std::span<const Elem> v) {
  if (v.size() != width_) throw InvalidArgument("vector width mismatch");
  Vec r = reduce(v);
  auto lead = std::find_if(r.begin(), r.end(), [](Elem e) { return e != 0; });
  if (lead == r.end()) return false;
  std::size_t piv = std::size_t(lead - r.begin());
  Elem inv = field_.inv(*lead);
  for (auto& e : r) e = field_.mul(e, inv);
  for (auto& row : rows_) {
    Elem c = row[piv];
    if (c) axpy(field_, row, field_.neg(c), r);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, piv);
  rows_.insert(rows_.begin() + idx, std::move(r));
  return true;
}

std::vector<Vec> canonical_basis(Fq field, std::size_t width, const std::vector<Vec>& vectors) {
  RowEchelon e(field, width);
  for (const auto& v : vectors) e.insert(v);
  return e.rows();
}

std::vector<Vec> null_space(Fq field, std::size_t width, const std::vector<Vec>& rows) {
  RowEchelon e(field, width);
  for (const auto& r : rows) e.insert(r);
  const auto& piv = e.pivots();
  std::vector<Vec> basis;
  std::size_t k = 0;
  for (std::size_t c = 0; c < width; ++c) {
    if (k < piv.size() && piv[k] == c) {
      ++k;
      continue;
    }
    Vec x(width, 0);
    x[c] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = field.neg(e.rows()[i][c]);
    basis.push_back(std::move(x));
  }
  return canonical_basis(field, width, basis);
}

std::optional<Vec> solve_combination(Fq field, const std::vector<Vec>& generators, std::span<const Elem> target) {
  const std::size_t d = generators.size();
  const std::size_t m = target.size();
  // Augmented system: m equations, d unknowns, row i = (g_0[i], ..., g_{d-1}[i] | t[i]).
  std::vector<Vec> a(m, Vec(d + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (generators[j].size() != m) throw InvalidArgument("generator width mismatch");
      a[i][j] = generators[j][i];
    }
    a[i][d] = target[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < m; ++c) {
    std::size_t piv = r;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[r]);
    Elem inv = field.inv(a[r][c]);
    for (auto& e : a[r]) e = field.mul(e, inv);
    for (std::size_t i = 0; i < m; ++i) {
      if (i != r && a[i][c]) axpy(field, a[i], field.neg(a[i][c]), a[r]);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (a[i][d]) return std::nullopt;
  Vec coeffs(d, 0);
  for (std::size_t i = 0; i < r; ++i) coeffs[pivot_col[i]] = a[i][d];
  return coeffs;
}

Elem dot(const Fq& field, std::span<const Elem> a, std::span<const Elem> b) {
  unsigned acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += unsigned(a[i]) * b[i];
  return Elem(acc % field.q());
}

void axpy(const Fq& field, std::span<Elem> y, Elem c, std::span<const Elem> x) {
  if (c == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = field.axpy(y[i], c, x[i]);
}

}  // namespace rankspan
