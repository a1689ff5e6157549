#pragma once

#include <array>
#include <cstdint>

#include "rankspan/error.hpp"

namespace rankspan {

using Elem = std::uint8_t;

/// The prime field F_q, q in {2, 3, 5, 7}. Elements are stored as values in [0, q).
class Fq {
 public:
  explicit Fq(unsigned q);

  unsigned q() const noexcept { return q_; }

  Elem add(Elem a, Elem b) const noexcept {
    unsigned s = unsigned(a) + b;
    return Elem(s >= q_ ? s - q_ : s);
  }
  Elem sub(Elem a, Elem b) const noexcept { return Elem(a >= b ? a - b : a + q_ - b); }
  Elem neg(Elem a) const noexcept { return Elem(a == 0 ? 0 : q_ - a); }
  Elem mul(Elem a, Elem b) const noexcept { return Elem((unsigned(a) * b) % q_); }
  /// a + c*b, the elimination kernel.
  Elem axpy(Elem a, Elem c, Elem b) const noexcept { return Elem((a + unsigned(c) * b) % q_); }
  Elem inv(Elem a) const;
  /// Reduces an arbitrary integer into [0, q).
  Elem reduce(long long v) const noexcept {
    long long r = v % q_;
    return Elem(r < 0 ? r + q_ : r);
  }

  friend bool operator==(const Fq&, const Fq&) = default;

 private:
  std::uint8_t q_;
  std::array<Elem, 8> inv_{};
};

}  // namespace rankspan
