#include "rankspan/grassmannian.hpp"

#include <limits>

namespace rankspan {

std::uint64_t gaussian_binomial(std::size_t m, std::size_t d, unsigned q) {
  if (d > m) return 0;
  // Pascal-type recurrence [m, d] = [m-1, d-1] + q^d [m-1, d].
  using u128 = unsigned __int128;
  std::vector<u128> row(d + 1, 0);
  row[0] = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::size_t j = std::min(k, d); j >= 1; --j) {
      u128 qj = 1;
      for (std::size_t t = 0; t < j; ++t) qj *= q;
      row[j] = row[j - 1] + qj * row[j];
      if (row[j] > std::numeric_limits<std::uint64_t>::max()) {
        throw InvalidArgument("Gaussian binomial overflows 64 bits");
      }
    }
  }
  return std::uint64_t(row[d]);
}

std::vector<std::vector<std::size_t>> pivot_patterns(std::size_t m, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  if (d > m) return out;
  std::vector<std::size_t> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = i;
  for (;;) {
    out.push_back(c);
    std::size_t i = d;
    while (i > 0 && c[i - 1] == m - d + (i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < d; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

namespace {

struct Slot {
  std::size_t row;
  std::size_t col;
};

std::vector<Slot> free_slots(std::size_t m, const std::vector<std::size_t>& pivots) {
  std::vector<bool> is_pivot(m, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = pivots[i] + 1; j < m; ++j)
      if (!is_pivot[j]) slots.push_back({i, j});
  return slots;
}

}  // namespace

std::uint64_t pattern_cardinality(std::size_t m, const std::vector<std::size_t>& pivots, unsigned q) {
  std::uint64_t n = 1;
  for (std::size_t k = free_slots(m, pivots).size(); k-- > 0;) n *= q;
  return n;
}

bool for_each_subspace_with_pivots(Fq field, std::size_t m, const std::vector<std::size_t>& pivots,
                                   const SubspaceVisitor& visit) {
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= m || (i && pivots[i] <= pivots[i - 1])) throw InvalidArgument("invalid pivot pattern");
  }
  std::vector<Vec> rows(pivots.size(), Vec(m, 0));
  for (std::size_t i = 0; i < pivots.size(); ++i) rows[i][pivots[i]] = 1;
  const auto slots = free_slots(m, pivots);
  const unsigned q = field.q();
  for (;;) {
    if (!visit(rows)) return false;
    std::size_t k = slots.size();
    for (; k > 0; --k) {
      Elem& e = rows[slots[k - 1].row][slots[k - 1].col];
      if (++e < q) break;
      e = 0;
    }
    if (k == 0) return true;
  }
}

bool for_each_subspace(Fq field, std::size_t m, std::size_t d, const SubspaceVisitor& visit) {
  for (const auto& p : pivot_patterns(m, d))
    if (!for_each_subspace_with_pivots(field, m, p, visit)) return false;
  return true;
}

bool for_each_transversal(Fq field, std::size_t m, const std::vector<std::size_t>& pivots,
                          const std::function<bool(const Vec&)>& visit) {
  std::vector<bool> is_pivot(m, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m; ++j)
    if (!is_pivot[j]) free.push_back(j);
  Vec v(m, 0);
  for (;;) {
    if (!visit(v)) return false;
    std::size_t k = free.size();
    for (; k > 0; --k) {
      Elem& e = v[free[k - 1]];
      if (++e < field.q()) break;
      e = 0;
    }
    if (k == 0) return true;
  }
}

}  // namespace rankspan
