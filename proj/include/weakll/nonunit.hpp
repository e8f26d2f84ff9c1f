#pragma once

#include "weakll/exponential.hpp"

namespace weakll {

/// The grade >= 1 exponential variant whose co-Kleisli composition is
/// truncated formal power series substitution.
SpaceExpr nonunit_bang_space(const SpaceExpr& s, Index degree);
LinMap nonunit_bang_map(const LinMap& f, Index degree);

/// A truncated sequence (f_1..f_D) of monomials with no degree-0 part.
struct NonUnitSeq {
  SpaceExpr dom;
  SpaceExpr cod;
  Index truncation;
  std::vector<Monomial> monomials;  // monomials[n-1] has degree n

  NonUnitSeq(SpaceExpr d, SpaceExpr c, Index trunc);
  static NonUnitSeq identity_seq(const SpaceExpr& s, Index trunc);

  Monomial& at_degree(Index n) { return monomials[static_cast<size_t>(n - 1)]; }
  const Monomial& at_degree(Index n) const { return monomials[static_cast<size_t>(n - 1)]; }

  Vec eval(const Vec& x) const;
  bool operator==(const NonUnitSeq& o) const;
};

/// (g . f)_p = sum_{1<=n<=p} sum_{k_1+..+k_n=p, k_i>=1}
///             ghat_n(f_{k_1}(x), ..., f_{k_n}(x)),
/// the truncated substitution of formal power series with no constant
/// term. Closed under truncation since every k_i <= p <= D.
NonUnitSeq substitute_compose(const NonUnitSeq& g, const NonUnitSeq& f);

NonUnitSeq nonunit_kleisli_to_seq(const LinMap& f);  // f : Bang1(S,D) -> T
LinMap nonunit_seq_to_kleisli(const NonUnitSeq& s);

LinMap nonunit_counit(const SpaceExpr& s, Index degree);

/// Comultiplication Bang1(S,D) -> Bang1(Bang1(S,D),D): on grade p it sums
/// over the partitions of p into positive parts, sending x^{(x)p} to the
/// symmetrized product of the embedded powers x^{(x)lambda_i}, weighted
/// by the number of orderings of the partition. Its co-Kleisli
/// composition is exactly substitute_compose.
LinMap nonunit_comultiplication(const SpaceExpr& s, Index degree);
SparseVec nonunit_comultiplication_apply(const SpaceExpr& s, Index degree,
                                         const SparseVec& v);
SparseVec nonunit_bang_map_apply_sparse(const LinMap& f, Index degree, const SparseVec& v);

/// Graded iso from Bang1(Prod(S,T),D) onto the subspace of
/// Tensor(Bang(S,D),Bang(T,D)) spanned by grade pairs (n,m) with
/// 1 <= n+m <= D. The tensor side keeps its grade-0 pieces: a product
/// multiset concentrated on one factor maps to (grade 0) x (grade p),
/// so excluding them would not give an isomorphism.
LinMap nonunit_seely(const SpaceExpr& s, const SpaceExpr& t, Index degree);
LinMap nonunit_seely_inv(const SpaceExpr& s, const SpaceExpr& t, Index degree);

LawResult nonunit_counit_left(const SpaceExpr& s, Index degree);
LawResult nonunit_counit_right(const SpaceExpr& s, Index degree);
LawResult nonunit_coassoc(const SpaceExpr& s, Index degree);

}  // namespace weakll
