#pragma once

#include <functional>
#include <map>

#include "weakll/linmap.hpp"

namespace weakll {

/// A degree-n homogeneous map f : dom -> cod, stored through its unique
/// symmetric n-linear form. The coefficient at a non-decreasing multiset
/// M = {i1..in} of domain basis indices is the cod-vector
///
///   coeff(M) = fhat(e_{i1}, ..., e_{in}),
///
/// and evaluation multiplies by the number of distinct orderings of M:
///
///   f(x) = sum_M orderings(M) * coeff(M) * x_{i1} * ... * x_{in}.
///
/// With this normalization x^{(x)n} expands as
/// sum_M orderings(M) x^M b_M on the SymPow basis, and linearize() is the
/// plain coefficient matrix with no rescaling. The same convention is
/// used by every graded construction in this library.
class Monomial {
 public:
  Monomial(SpaceExpr dom, SpaceExpr cod, Index degree)
      : dom_(std::move(dom)), cod_(std::move(cod)), degree_(degree) {}

  static Monomial zero(const SpaceExpr& dom, const SpaceExpr& cod, Index degree) {
    return Monomial(dom, cod, degree);
  }
  static Monomial constant(const SpaceExpr& dom, const SpaceExpr& cod, const Vec& value);
  static Monomial from_linmap(const LinMap& f);

  const SpaceExpr& dom() const { return dom_; }
  const SpaceExpr& cod() const { return cod_; }
  Index degree() const { return degree_; }
  const std::map<Multiset, Vec>& coeffs() const { return coeffs_; }

  /// Coefficient vector at M (zero vector when absent).
  Vec coeff(const Multiset& m) const;
  void add_coeff(const Multiset& m, Index cod_index, const Scalar& v);
  void set_coeff(const Multiset& m, Index cod_index, const Scalar& v);

  Vec eval(const Vec& x) const;

  Monomial operator+(const Monomial& o) const;
  Monomial scaled(const Scalar& s) const;
  bool operator==(const Monomial& o) const;
  bool is_zero() const;

 private:
  SpaceExpr dom_, cod_;
  Index degree_;
  std::map<Multiset, Vec> coeffs_;
  void prune(const Multiset& m);
};

/// Recovers the symmetric multilinear coefficients of a degree-n
/// homogeneous evaluation oracle via the alternating-sum formula
///   fhat(x1..xn) = 1/n! sum_{eps in {0,1}^n} (-1)^{n-|eps|} f(sum eps_i x_i).
/// Homogeneity of the oracle is spot-checked on a few scalings and a
/// violation throws std::invalid_argument.
Monomial polarize(const std::function<Vec(const Vec&)>& oracle, Index degree,
                  const SpaceExpr& dom, const SpaceExpr& cod, bool spot_check = true);

/// The unique linear map SymPow(dom,n) -> cod with
/// linearize(m)(x^{(x)n}) = m(x); its matrix is the coefficient table.
LinMap linearize(const Monomial& m);

/// The degree-n monomial x |-> x^{(x)n} into SymPow(S,n); degree 0 is the
/// constant 1 on the one-dimensional SymPow(S,0).
Monomial sym_power_embed(const SpaceExpr& s, Index n);

/// (g . f)(x) = ghat(f(x),...,f(x)); degree(g) * degree(f). Coefficients
/// are produced by exact combinatorial expansion, not sampling.
Monomial compose_monomials(const Monomial& g, const Monomial& f);

/// Linear map after a monomial.
Monomial postcompose(const LinMap& g, const Monomial& f);

/// The symmetric multilinear form of g applied slotwise to monomials
/// u_1..u_n sharing a domain: x |-> ghat(u_1(x), ..., u_n(x)). Degree is
/// the sum of the argument degrees. Exact combinatorial expansion.
Monomial apply_multilinear(const Monomial& g, const std::vector<Monomial>& args);

}  // namespace weakll
