#pragma once

#include <cstdint>
#include <vector>

#include "weakll/matrix.hpp"
#include "weakll/scalar.hpp"

namespace weakll {

/// Deterministic splitmix64 stream. Fully specified here so reports are
/// byte-identical across platforms; random rationals have numerators in
/// [-9, 9] and denominators in [1, 9].
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish integer in [lo, hi] (modulo reduction; fine for tests).
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next_u64() %
                                          static_cast<std::uint64_t>(hi - lo + 1));
  }

  Scalar small_rational() {
    return Scalar(between(-9, 9)) / Scalar(between(1, 9));
  }

  Scalar small_rational_nonzero() {
    Scalar s = small_rational();
    while (s == 0) s = small_rational();
    return s;
  }

  Vec vector(Index dim) {
    Vec v(static_cast<size_t>(dim));
    for (auto& e : v) e = small_rational();
    return v;
  }

  Matrix matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m.at(i, j) = small_rational();
    return m;
  }

  /// Child stream for an independently seeded task.
  Rng fork(std::uint64_t salt) const {
    Rng child(state_ ^ (0x5851f42d4c957f2dULL * (salt + 1)));
    return child;
  }

 private:
  std::uint64_t state_;
};

}  // namespace weakll
