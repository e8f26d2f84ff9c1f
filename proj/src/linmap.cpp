#include "weakll/linmap.hpp"

#include <stdexcept>

namespace weakll {

LinMap::LinMap(SpaceExpr d, SpaceExpr c, Matrix m)
    : dom(std::move(d)), cod(std::move(c)), mat(std::move(m)) {
  if (mat.rows() != cod.dim() || mat.cols() != dom.dim())
    throw std::invalid_argument("linmap: matrix shape does not match spaces");
}

LinMap LinMap::identity(const SpaceExpr& s) {
  return LinMap(s, s, Matrix::identity(s.dim()));
}

LinMap LinMap::zero(const SpaceExpr& dom, const SpaceExpr& cod) {
  return LinMap(dom, cod, Matrix(cod.dim(), dom.dim()));
}

LinMap compose(const LinMap& g, const LinMap& f) {
  if (!(f.cod == g.dom))
    throw std::invalid_argument("compose: codomain of inner map (" + f.cod.to_string() +
                                ") differs from domain of outer map (" + g.dom.to_string() + ")");
  return LinMap(f.dom, g.cod, g.mat * f.mat);
}

LinMap add(const LinMap& f, const LinMap& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod))
    throw std::invalid_argument("add: shape mismatch");
  return LinMap(f.dom, f.cod, f.mat + g.mat);
}

LinMap sub(const LinMap& f, const LinMap& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod))
    throw std::invalid_argument("sub: shape mismatch");
  return LinMap(f.dom, f.cod, f.mat - g.mat);
}

LinMap transpose(const LinMap& f) {
  return LinMap(SpaceExpr::dual(f.cod), SpaceExpr::dual(f.dom), f.mat.transposed());
}

LinMap double_dual_ev(const SpaceExpr& s) {
  return LinMap(s, SpaceExpr::dual(SpaceExpr::dual(s)), Matrix::identity(s.dim()));
}

LinMap tensor_map(const LinMap& f, const LinMap& g) {
  return LinMap(SpaceExpr::tensor(f.dom, g.dom), SpaceExpr::tensor(f.cod, g.cod),
                Matrix::kron(f.mat, g.mat));
}

LinMap associator(const SpaceExpr& s, const SpaceExpr& t, const SpaceExpr& u) {
  const SpaceExpr dom = SpaceExpr::tensor(SpaceExpr::tensor(s, t), u);
  const SpaceExpr cod = SpaceExpr::tensor(s, SpaceExpr::tensor(t, u));
  return LinMap(dom, cod, Matrix::identity(dom.dim()));
}

LinMap symmetry(const SpaceExpr& s, const SpaceExpr& t) {
  const Index ds = s.dim(), dt = t.dim();
  Matrix m(ds * dt, ds * dt);
  for (Index i = 0; i < ds; ++i)
    for (Index j = 0; j < dt; ++j) m.at(j * ds + i, i * dt + j) = 1;
  return LinMap(SpaceExpr::tensor(s, t), SpaceExpr::tensor(t, s), std::move(m));
}

LinMap par_to_tensor(const SpaceExpr& s, const SpaceExpr& t) {
  return LinMap(SpaceExpr::par(s, t), SpaceExpr::tensor(s, t),
                Matrix::identity(s.dim() * t.dim()));
}

LinMap tensor_to_par(const SpaceExpr& s, const SpaceExpr& t) {
  return LinMap(SpaceExpr::tensor(s, t), SpaceExpr::par(s, t),
                Matrix::identity(s.dim() * t.dim()));
}

LinMap par_map(const LinMap& f, const LinMap& g) {
  // A bilinear form beta on Dual(S) x Dual(T) is pushed forward by
  // (l', m') |-> beta(l' . f, m' . g); on canonical bases this is the
  // same Kronecker matrix as tensor_map.
  return LinMap(SpaceExpr::par(f.dom, g.dom), SpaceExpr::par(f.cod, g.cod),
                Matrix::kron(f.mat, g.mat));
}

LinMap injection_left(const SpaceExpr& s, const SpaceExpr& t) {
  const SpaceExpr cp = SpaceExpr::coprod(s, t);
  Matrix m(cp.dim(), s.dim());
  for (Index i = 0; i < s.dim(); ++i) m.at(i, i) = 1;
  return LinMap(s, cp, std::move(m));
}

LinMap injection_right(const SpaceExpr& s, const SpaceExpr& t) {
  const SpaceExpr cp = SpaceExpr::coprod(s, t);
  Matrix m(cp.dim(), t.dim());
  for (Index i = 0; i < t.dim(); ++i) m.at(s.dim() + i, i) = 1;
  return LinMap(t, cp, std::move(m));
}

LinMap projection_left(const SpaceExpr& s, const SpaceExpr& t) {
  const SpaceExpr pr = SpaceExpr::prod(s, t);
  Matrix m(s.dim(), pr.dim());
  for (Index i = 0; i < s.dim(); ++i) m.at(i, i) = 1;
  return LinMap(pr, s, std::move(m));
}

LinMap projection_right(const SpaceExpr& s, const SpaceExpr& t) {
  const SpaceExpr pr = SpaceExpr::prod(s, t);
  Matrix m(t.dim(), pr.dim());
  for (Index i = 0; i < t.dim(); ++i) m.at(i, s.dim() + i) = 1;
  return LinMap(pr, t, std::move(m));
}

LinMap prod_pair(const LinMap& f, const LinMap& g) {
  if (!(f.dom == g.dom)) throw std::invalid_argument("prod_pair: domain mismatch");
  const SpaceExpr cod = SpaceExpr::prod(f.cod, g.cod);
  Matrix m(cod.dim(), f.dom.dim());
  for (Index j = 0; j < f.dom.dim(); ++j) {
    for (Index i = 0; i < f.cod.dim(); ++i) m.at(i, j) = f.mat.at(i, j);
    for (Index i = 0; i < g.cod.dim(); ++i) m.at(f.cod.dim() + i, j) = g.mat.at(i, j);
  }
  return LinMap(f.dom, cod, std::move(m));
}

LinMap coprod_copair(const LinMap& f, const LinMap& g) {
  if (!(f.cod == g.cod)) throw std::invalid_argument("coprod_copair: codomain mismatch");
  const SpaceExpr dom = SpaceExpr::coprod(f.dom, g.dom);
  Matrix m(f.cod.dim(), dom.dim());
  for (Index i = 0; i < f.cod.dim(); ++i) {
    for (Index j = 0; j < f.dom.dim(); ++j) m.at(i, j) = f.mat.at(i, j);
    for (Index j = 0; j < g.dom.dim(); ++j) m.at(i, f.dom.dim() + j) = g.mat.at(i, j);
  }
  return LinMap(dom, f.cod, std::move(m));
}

LinMap dual_of_prod(const SpaceExpr& s, const SpaceExpr& t) {
  const SpaceExpr dom = SpaceExpr::dual(SpaceExpr::prod(s, t));
  const SpaceExpr cod = SpaceExpr::coprod(SpaceExpr::dual(s), SpaceExpr::dual(t));
  return LinMap(dom, cod, Matrix::identity(dom.dim()));
}

LinMap dual_of_coprod(const SpaceExpr& s, const SpaceExpr& t) {
  const SpaceExpr dom = SpaceExpr::dual(SpaceExpr::coprod(s, t));
  const SpaceExpr cod = SpaceExpr::prod(SpaceExpr::dual(s), SpaceExpr::dual(t));
  return LinMap(dom, cod, Matrix::identity(dom.dim()));
}

LinMap curry(const LinMap& f) {
  if (f.dom.kind() != SpaceKind::Tensor)
    throw std::invalid_argument("curry: domain is not a tensor: " + f.dom.to_string());
  const SpaceExpr s = f.dom.left(), t = f.dom.right(), u = f.cod;
  const SpaceExpr h = SpaceExpr::hom(t, u);
  Matrix m(h.dim(), s.dim());
  for (Index si = 0; si < s.dim(); ++si)
    for (Index ti = 0; ti < t.dim(); ++ti)
      for (Index ui = 0; ui < u.dim(); ++ui)
        m.at(ti * u.dim() + ui, si) = f.mat.at(ui, si * t.dim() + ti);
  return LinMap(s, h, std::move(m));
}

LinMap uncurry(const LinMap& g) {
  if (g.cod.kind() != SpaceKind::Hom)
    throw std::invalid_argument("uncurry: codomain is not a hom: " + g.cod.to_string());
  const SpaceExpr s = g.dom, t = g.cod.left(), u = g.cod.right();
  Matrix m(u.dim(), s.dim() * t.dim());
  for (Index si = 0; si < s.dim(); ++si)
    for (Index ti = 0; ti < t.dim(); ++ti)
      for (Index ui = 0; ui < u.dim(); ++ui)
        m.at(ui, si * t.dim() + ti) = g.mat.at(ti * u.dim() + ui, si);
  return LinMap(SpaceExpr::tensor(s, t), u, std::move(m));
}

LinMap eval_map(const SpaceExpr& s, const SpaceExpr& t) {
  const SpaceExpr h = SpaceExpr::hom(s, t);
  const SpaceExpr dom = SpaceExpr::tensor(h, s);
  Matrix m(t.dim(), dom.dim());
  for (Index si = 0; si < s.dim(); ++si)
    for (Index ti = 0; ti < t.dim(); ++ti)
      m.at(ti, (si * t.dim() + ti) * s.dim() + si) = 1;
  return LinMap(dom, t, std::move(m));
}

std::vector<std::pair<Vec, Vec>> hom_dual_decompose(const SpaceExpr& s,
                                                    const SpaceExpr& t,
                                                    const Vec& phi) {
  const Index ds = s.dim(), dt = t.dim();
  if (static_cast<Index>(phi.size()) != ds * dt)
    throw std::invalid_argument("hom_dual_decompose: functional has wrong length");
  std::vector<std::pair<Vec, Vec>> out;
  for (Index si = 0; si < ds; ++si) {
    Vec l(static_cast<size_t>(dt));
    bool nonzero = false;
    for (Index ti = 0; ti < dt; ++ti) {
      l[static_cast<size_t>(ti)] = phi[static_cast<size_t>(si * dt + ti)];
      if (l[static_cast<size_t>(ti)] != 0) nonzero = true;
    }
    if (!nonzero) continue;
    Vec x(static_cast<size_t>(ds));
    x[static_cast<size_t>(si)] = 1;
    out.emplace_back(std::move(x), std::move(l));
  }
  return out;
}

LinMap star_autonomy_map(const SpaceExpr& s) {
  const SpaceExpr one = SpaceExpr::base(1);
  const SpaceExpr h = SpaceExpr::hom(s, one);
  const LinMap ev = eval_map(s, one);                 // Tensor(H,S) -> 1
  const LinMap sym = symmetry(s, h);                  // Tensor(S,H) -> Tensor(H,S)
  return curry(compose(ev, sym));                     // S -> Hom(H,1)
}

bool star_autonomy_check(const SpaceExpr& s) {
  const LinMap m = star_autonomy_map(s);
  return m.mat.rows() == m.mat.cols() && m.mat.inverse().has_value();
}

}  // namespace weakll
