#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "weakll/combinat.hpp"
#include "weakll/matrix.hpp"

namespace weakll::detail {

using SparseVecT = std::map<Index, Scalar>;

inline SparseVecT sparse_shift(const SparseVecT& v, Index offset) {
  SparseVecT out;
  for (const auto& [i, c] : v) out.emplace(i + offset, c);
  return out;
}

inline void sparse_accumulate(SparseVecT& dst, const SparseVecT& src, const Scalar& factor) {
  if (factor == 0) return;
  for (const auto& [i, c] : src) {
    Scalar& slot = dst[i];
    slot += factor * c;
    if (slot == 0) dst.erase(i);
  }
}

inline SparseVecT sparse_column(const Matrix& m, Index col) {
  SparseVecT v;
  for (Index i = 0; i < m.rows(); ++i)
    if (m.at(i, col) != 0) v[i] = m.at(i, col);
  return v;
}

/// n-th symmetric power over a d-dimensional space, indexed by SymPow
/// multiset ranks: coefficient at K is orderings(K) * prod v[K_i].
inline SparseVecT sym_power_sparse(const SparseVecT& v, Index n, Index d) {
  SparseVecT out;
  if (n == 0) {
    out[0] = 1;
    return out;
  }
  std::vector<std::pair<Index, Scalar>> support(v.begin(), v.end());
  if (support.empty()) return out;
  Multiset k(static_cast<size_t>(n));
  std::vector<size_t> pick(static_cast<size_t>(n));
  auto rec = [&](auto&& self, Index slot, size_t from, Scalar acc) -> void {
    if (acc == 0) return;
    if (slot == n) {
      for (Index i = 0; i < n; ++i)
        k[static_cast<size_t>(i)] = support[pick[static_cast<size_t>(i)]].first;
      Scalar& dst = out[multiset_rank(d, k)];
      dst += Scalar(multiset_orderings(k)) * acc;
      if (dst == 0) out.erase(multiset_rank(d, k));
      return;
    }
    for (size_t s = from; s < support.size(); ++s) {
      pick[static_cast<size_t>(slot)] = s;
      self(self, slot + 1, s, acc * support[s].second);
    }
  };
  rec(rec, 0, 0, Scalar(1));
  return out;
}

/// Symmetrized product: coefficient at K is the sum over ordered tuples
/// with content K of the coordinate products.
inline SparseVecT sym_product_sparse(const std::vector<SparseVecT>& factors, Index d) {
  SparseVecT out;
  const size_t r = factors.size();
  if (r == 0) {
    out[0] = 1;
    return out;
  }
  Multiset tuple(r);
  auto rec = [&](auto&& self, size_t slot, Scalar acc) -> void {
    if (acc == 0) return;
    if (slot == r) {
      Multiset k = tuple;
      std::sort(k.begin(), k.end());
      const Index rank = multiset_rank(d, k);
      Scalar& dst = out[rank];
      dst += acc;
      if (dst == 0) out.erase(rank);
      return;
    }
    for (const auto& [i, c] : factors[slot]) {
      tuple[slot] = i;
      self(self, slot + 1, acc * c);
    }
  };
  rec(rec, 0, Scalar(1));
  return out;
}

}  // namespace weakll::detail
