#pragma once

#include <map>
#include <string>
#include <vector>

#include "weakll/monomial.hpp"

namespace weakll {

/// Sparse coordinate vector keyed by global basis index. Used where a
/// composite passes through spaces (like !!!E) too large to store densely.
using SparseVec = std::map<Index, Scalar>;

SpaceExpr bang_space(const SpaceExpr& s, Index degree);
SpaceExpr whynot_space(const SpaceExpr& s, Index degree);

/// An element of Bang(S,D) with graded component access.
struct BangVector {
  SpaceExpr space;  // a Bang space
  Vec coords;

  BangVector(SpaceExpr sp, Vec c);
  Vec component(Index grade) const;
};

/// A degree-truncated sequence (f_0..f_D) of monomials sharing domain and
/// codomain; the co-Kleisli presentation of a map Bang(dom,D) -> cod.
struct MonomialSeq {
  SpaceExpr dom;
  SpaceExpr cod;
  Index truncation;
  std::vector<Monomial> monomials;  // monomials[n] has degree n

  MonomialSeq(SpaceExpr d, SpaceExpr c, Index trunc);
  MonomialSeq(SpaceExpr d, SpaceExpr c, Index trunc, std::vector<Monomial> ms);

  static MonomialSeq dereliction(const SpaceExpr& s, Index trunc);

  /// Pointwise value sum_n f_n(x); the "function" the sequence denotes.
  Vec eval(const Vec& x) const;

  bool operator==(const MonomialSeq& o) const;
};

/// Grade-n block inclusion / projection for a Bang space.
LinMap grade_inclusion(const SpaceExpr& s, Index degree, Index n);
LinMap grade_projection(const SpaceExpr& s, Index degree, Index n);

/// Sym^n(f) : SymPow(dom f, n) -> SymPow(cod f, n), the unique linear map
/// with x^{(x)n} |-> f(x)^{(x)n}.
LinMap sym_power_map(const LinMap& f, Index n);

/// Blockwise Sym^n(f) : Bang(dom f, D) -> Bang(cod f, D). Functorial.
LinMap bang_map(const LinMap& f, Index degree);

MonomialSeq kleisli_to_seq(const LinMap& f);   // f : Bang(S,D) -> T
LinMap seq_to_kleisli(const MonomialSeq& s);   // inverse of the above

/// Grade-1 projection Bang(S,D) -> S. Requires D >= 1.
LinMap counit(const SpaceExpr& s, Index degree);

/// Comultiplication Bang(S,D) -> Bang(Bang(S,D),D). The grade-k block on
/// grade p is the linearization of x |-> (j_{p/k}(x^{(x)p/k}))^{(x)k} for
/// each divisor k of p, with the convention that only 0 divides 0 (the
/// grade-0 unit maps to the grade-0 unit).
LinMap comultiplication(const SpaceExpr& s, Index degree);

/// Sparse column application of the comultiplication of Bang(s,degree);
/// `v` is indexed by Bang(s,degree), the result by Bang(Bang(s,degree),degree).
SparseVec comultiplication_apply(const SpaceExpr& s, Index degree, const SparseVec& v);

/// Sparse application of bang_map(f,degree) for a dense f whose bang may
/// be too large to materialize.
SparseVec bang_map_apply_sparse(const LinMap& f, Index degree, const SparseVec& v);

/// Divisor composition of co-Kleisli sequences:
///   (g . f)_p = sum_{k|p} g_k . f_{p/k}   for p >= 1,
///   (g . f)_0 = g_0                       (only 0 divides 0).
/// Agrees exactly with g . bang_map(f) . comultiplication.
MonomialSeq kleisli_compose(const MonomialSeq& g, const MonomialSeq& f);

/// Graded iso Bang(Prod(S,T),D) -> Tensor(Bang(S,D),Bang(T,D)); grade p
/// lands in the pieces SymPow(S,n) (x) SymPow(T,m) with n+m=p, scaled by
/// 1/C(p,n). Invertible onto the subspace of total degree <= D.
LinMap seely_iso(const SpaceExpr& s, const SpaceExpr& t, Index degree);
LinMap seely_inv(const SpaceExpr& s, const SpaceExpr& t, Index degree);

/// Lax monoidal structure: pairs equal grades, x^{(x)n} (x) y^{(x)n} |->
/// (x(x)y)^{(x)n}, mixed grades to zero; mu0 is the linear extension of
/// 1 |-> ev_1 (all-ones graded coordinates).
LinMap monoidal_mu(const SpaceExpr& s, const SpaceExpr& t, Index degree);
LinMap monoidal_mu0(Index degree);

/// Codereliction: inclusion of S at grade 1. Requires D >= 1.
LinMap coder(const SpaceExpr& s, Index degree);

/// Bialgebra structure on Bang(S,D).
LinMap contraction(const SpaceExpr& s, Index degree);     // Bang -> Bang (x) Bang
LinMap weakening(const SpaceExpr& s, Index degree);       // Bang -> Base(1)
LinMap cocontraction(const SpaceExpr& s, Index degree);   // Bang (x) Bang -> Bang
LinMap coweakening(const SpaceExpr& s, Index degree);     // Base(1) -> Bang

/// Two-index currying of sequences on a product. curry_seq sends a
/// sequence Prod(S,T) -> U to a sequence S -> Hom(Bang(T,D),U) whose
/// (n,m) coefficients carry the factor C(n+m,n); uncurry_seq inverts it.
/// Components with n+m > D are not representable and are taken as zero.
MonomialSeq curry_seq(const MonomialSeq& f);
MonomialSeq uncurry_seq(const MonomialSeq& g, const SpaceExpr& s, const SpaceExpr& t);

struct LawResult {
  std::string law;
  std::map<std::string, std::string> params;
  std::string status;   // "pass" | "fail" | "skipped"
  std::string witness;  // empty unless failed
};

/// Exact checks of the strength square, counit/coder laws, the second
/// coder comonad diagram, and the bialgebra laws at (S,T,D).
std::vector<LawResult> differential_category_suite(const SpaceExpr& s,
                                                   const SpaceExpr& t, Index degree);

/// Comonad law checks for the divisor comultiplication.
LawResult comonad_counit_left(const SpaceExpr& s, Index degree);   // eps_! . delta
LawResult comonad_counit_right(const SpaceExpr& s, Index degree);  // !eps . delta
LawResult comonad_coassoc(const SpaceExpr& s, Index degree);

}  // namespace weakll
