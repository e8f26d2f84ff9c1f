#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "weakll/scalar.hpp"

namespace weakll {

using Index = std::int64_t;

/// A multiset of basis indices, stored as a non-decreasing tuple.
/// Canonical order on multisets of a fixed size is lexicographic on
/// these tuples; all rank/unrank functions below use that order.
using Multiset = std::vector<Index>;

inline Index checked_index(const BigInt& v, const char* what) {
  if (v < 0 || v > BigInt(INT64_MAX)) throw std::overflow_error(what);
  return static_cast<Index>(v);
}

inline BigInt big_factorial(Index n) {
  BigInt r = 1;
  for (Index i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt big_binomial(Index n, Index k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (Index i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

inline Index binomial(Index n, Index k) {
  return checked_index(big_binomial(n, k), "binomial overflow");
}

/// Number of multisets of size n over d symbols: C(d+n-1, n).
inline Index multiset_count(Index d, Index n) {
  return binomial(d + n - 1, n);
}

/// Rank of a non-decreasing tuple among all size-|m| multisets over
/// {0..d-1}, in lexicographic order.
inline Index multiset_rank(Index d, const Multiset& m) {
  const Index n = static_cast<Index>(m.size());
  BigInt rank = 0;
  Index lo = 0;
  for (Index j = 0; j < n; ++j) {
    const Index v = m[j];
    const Index r = n - 1 - j;  // slots remaining after this one
    // sum_{c=lo}^{v-1} C(d-c+r-1, r), closed form via hockey stick
    rank += big_binomial(d - lo + r, r + 1) - big_binomial(d - v + r, r + 1);
    lo = v;
  }
  return checked_index(rank, "multiset rank overflow");
}

inline Multiset multiset_unrank(Index d, Index n, Index rank) {
  Multiset m(n);
  BigInt rest = rank;
  Index lo = 0;
  for (Index j = 0; j < n; ++j) {
    const Index r = n - 1 - j;
    Index v = lo;
    while (true) {
      BigInt below = big_binomial(d - lo + r, r + 1) - big_binomial(d - v + r, r + 1);
      BigInt upto = big_binomial(d - lo + r, r + 1) - big_binomial(d - v - 1 + r, r + 1);
      if (rest < upto) {
        rest -= below;
        break;
      }
      ++v;
      if (v >= d) throw std::out_of_range("multiset unrank");
    }
    m[j] = v;
    lo = v;
  }
  return m;
}

/// Number of distinct orderings of a multiset: n! / prod(rep_i!).
inline BigInt multiset_orderings(const Multiset& m) {
  BigInt r = big_factorial(static_cast<Index>(m.size()));
  Index run = 1;
  for (size_t i = 1; i <= m.size(); ++i) {
    if (i < m.size() && m[i] == m[i - 1]) {
      ++run;
    } else {
      r /= big_factorial(run);
      run = 1;
    }
  }
  return r;
}

inline std::vector<Index> positive_divisors(Index p) {
  std::vector<Index> ds;
  for (Index k = 1; k <= p; ++k)
    if (p % k == 0) ds.push_back(k);
  return ds;
}

/// All partitions of p into positive parts, each partition as a
/// non-increasing vector. partitions_of(0) = { {} }.
inline std::vector<std::vector<Index>> partitions_of(Index p) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> cur;
  auto rec = [&](auto&& self, Index rest, Index maxPart) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (Index part = std::min(rest, maxPart); part >= 1; --part) {
      cur.push_back(part);
      self(self, rest - part, part);
      cur.pop_back();
    }
  };
  rec(rec, p, p);
  return out;
}

}  // namespace weakll
