#pragma once

#include <utility>
#include <vector>

#include "weakll/matrix.hpp"
#include "weakll/space.hpp"

namespace weakll {

/// A linear map between two space expressions, stored densely.
/// The matrix is dim(cod) x dim(dom) on the canonical bases.
struct LinMap {
  SpaceExpr dom;
  SpaceExpr cod;
  Matrix mat;

  LinMap(SpaceExpr d, SpaceExpr c, Matrix m);

  static LinMap identity(const SpaceExpr& s);
  static LinMap zero(const SpaceExpr& dom, const SpaceExpr& cod);

  bool operator==(const LinMap& o) const {
    return dom == o.dom && cod == o.cod && mat == o.mat;
  }

  Vec apply(const Vec& x) const { return mat.apply(x); }
};

LinMap compose(const LinMap& g, const LinMap& f);  // g after f
LinMap add(const LinMap& f, const LinMap& g);
LinMap sub(const LinMap& f, const LinMap& g);

/// Dual functor on maps: Dual(cod f) -> Dual(dom f), matrix transposed.
LinMap transpose(const LinMap& f);

/// Canonical S -> Dual(Dual(S)); the identity matrix on canonical bases.
LinMap double_dual_ev(const SpaceExpr& s);

LinMap tensor_map(const LinMap& f, const LinMap& g);

/// Tensor(Tensor(S,T),U) -> Tensor(S,Tensor(T,U)). With left-major index
/// flattening both sides enumerate triples (s,t,u) identically, so the
/// matrix is the identity.
LinMap associator(const SpaceExpr& s, const SpaceExpr& t, const SpaceExpr& u);

/// Tensor(S,T) -> Tensor(T,S), the basis-pair swap permutation.
LinMap symmetry(const SpaceExpr& s, const SpaceExpr& t);

/// Par(S,T) -> Tensor(S,T). Pairing the Par basis of bilinear forms on
/// Dual(S) x Dual(T) against dual basis pairs identifies the two
/// canonical bases one-to-one, so the matrix is the identity.
LinMap par_to_tensor(const SpaceExpr& s, const SpaceExpr& t);
LinMap tensor_to_par(const SpaceExpr& s, const SpaceExpr& t);
LinMap par_map(const LinMap& f, const LinMap& g);

LinMap injection_left(const SpaceExpr& s, const SpaceExpr& t);
LinMap injection_right(const SpaceExpr& s, const SpaceExpr& t);
LinMap projection_left(const SpaceExpr& s, const SpaceExpr& t);
LinMap projection_right(const SpaceExpr& s, const SpaceExpr& t);
LinMap prod_pair(const LinMap& f, const LinMap& g);      // <f,g>: X -> Prod
LinMap coprod_copair(const LinMap& f, const LinMap& g);  // [f,g]: Coprod -> X

/// Dual(Prod(S,T)) -> Coprod(Dual S, Dual T) and
/// Dual(Coprod(S,T)) -> Prod(Dual S, Dual T); permutation (here identity)
/// matrices on the canonical block bases.
LinMap dual_of_prod(const SpaceExpr& s, const SpaceExpr& t);
LinMap dual_of_coprod(const SpaceExpr& s, const SpaceExpr& t);

/// curry(f : Tensor(S,T) -> U) : S -> Hom(T,U); uncurry is its inverse.
LinMap curry(const LinMap& f);
LinMap uncurry(const LinMap& g);

/// Tensor(Hom(S,T), S) -> T, h (x) x |-> h(x).
LinMap eval_map(const SpaceExpr& s, const SpaceExpr& t);

/// Writes a functional phi on Hom(S,T) as pairs (x_i in S, l_i in T')
/// with phi = sum_i l_i . ev_{x_i}; at most dim(S) terms.
std::vector<std::pair<Vec, Vec>> hom_dual_decompose(const SpaceExpr& s,
                                                    const SpaceExpr& t,
                                                    const Vec& phi);

/// The canonical S -> Hom(Hom(S,1),1) built by curry and symmetry from
/// evaluation; returns it together with its invertibility.
LinMap star_autonomy_map(const SpaceExpr& s);
bool star_autonomy_check(const SpaceExpr& s);

}  // namespace weakll
