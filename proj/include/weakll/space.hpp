#pragma once

#include <memory>
#include <string>

#include "weakll/combinat.hpp"

namespace weakll {

enum class SpaceKind {
  Base,     ///< K^d with basis e0..e{d-1}
  Dual,     ///< linear forms, dual basis in the same order
  Tensor,   ///< basis pairs (i,j), index i*dim(T)+j
  Par,      ///< bilinear forms on the duals; same basis order as Tensor
  Prod,     ///< left block then right block
  Coprod,   ///< left block then right block
  Hom,      ///< basis maps e_s -> e_t, index s*dim(T)+t
  SymPow,   ///< multisets of n basis indices, lexicographic
  Bang,     ///< grades 0..D of SymPow, concatenated
  BangNonUnit  ///< grades 1..D of SymPow, concatenated
};

/// A structural description of a finite-dimensional space together with a
/// deterministic canonical basis enumeration. Values are immutable and
/// cheap to copy (shared nodes). Equality is structural, so for example
/// Par(S,T) and Tensor(S,T) are distinct spaces of equal dimension.
class SpaceExpr {
 public:
  static SpaceExpr base(Index dim);
  static SpaceExpr dual(const SpaceExpr& s);
  static SpaceExpr tensor(const SpaceExpr& s, const SpaceExpr& t);
  static SpaceExpr par(const SpaceExpr& s, const SpaceExpr& t);
  static SpaceExpr prod(const SpaceExpr& s, const SpaceExpr& t);
  static SpaceExpr coprod(const SpaceExpr& s, const SpaceExpr& t);
  static SpaceExpr hom(const SpaceExpr& s, const SpaceExpr& t);
  static SpaceExpr sympow(const SpaceExpr& s, Index n);
  static SpaceExpr bang(const SpaceExpr& s, Index degree);
  static SpaceExpr bang_nonunit(const SpaceExpr& s, Index degree);

  SpaceKind kind() const { return node_->kind; }
  Index dim() const { return node_->dim; }

  /// Base dimension, SymPow exponent, or Bang truncation degree.
  Index param() const { return node_->param; }

  SpaceExpr left() const { return SpaceExpr(node_->left); }
  SpaceExpr right() const { return SpaceExpr(node_->right); }

  bool operator==(const SpaceExpr& o) const;
  bool operator!=(const SpaceExpr& o) const { return !(*this == o); }

  /// Parseable textual form, e.g. "bang(base 2, 3)".
  std::string to_string() const;

  /// Human-readable label of the i-th canonical basis vector.
  std::string basis_label(Index i) const;

 private:
  struct Node {
    SpaceKind kind;
    Index param = 0;
    std::shared_ptr<const Node> left, right;
    Index dim = 0;
  };
  explicit SpaceExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static SpaceExpr binary(SpaceKind k, const SpaceExpr& s, const SpaceExpr& t);
  std::shared_ptr<const Node> node_;
};

/// Graded index bookkeeping for Bang / BangNonUnit spaces.
struct BangLayout {
  SpaceExpr inner;
  Index degree;      // truncation D
  Index min_grade;   // 0 for Bang, 1 for BangNonUnit

  Index grade_dim(Index n) const { return multiset_count(inner.dim(), n); }
  Index grade_offset(Index n) const;
  /// Grade containing global index i, plus the offset-free rank within it.
  std::pair<Index, Index> locate(Index i) const;
};

BangLayout bang_layout(const SpaceExpr& bang_space);

}  // namespace weakll
