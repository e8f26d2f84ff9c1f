#include "weakll/space.hpp"

#include <sstream>
#include <stdexcept>

namespace weakll {

namespace {

Index bang_dim(Index inner_dim, Index degree, Index min_grade) {
  Index d = 0;
  for (Index n = min_grade; n <= degree; ++n) d += multiset_count(inner_dim, n);
  return d;
}

}  // namespace

SpaceExpr SpaceExpr::base(Index dim) {
  if (dim < 1) throw std::invalid_argument("base space must have dim >= 1");
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::Base;
  n->param = dim;
  n->dim = dim;
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::dual(const SpaceExpr& s) {
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::Dual;
  n->left = s.node_;
  n->dim = s.dim();
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::binary(SpaceKind k, const SpaceExpr& s, const SpaceExpr& t) {
  auto node = std::make_shared<Node>();
  node->kind = k;
  node->left = s.node_;
  node->right = t.node_;
  switch (k) {
    case SpaceKind::Tensor:
    case SpaceKind::Par:
    case SpaceKind::Hom:
      node->dim = s.dim() * t.dim();
      break;
    case SpaceKind::Prod:
    case SpaceKind::Coprod:
      node->dim = s.dim() + t.dim();
      break;
    default:
      throw std::logic_error("binary: bad kind");
  }
  return SpaceExpr(node);
}

SpaceExpr SpaceExpr::tensor(const SpaceExpr& s, const SpaceExpr& t) {
  return binary(SpaceKind::Tensor, s, t);
}
SpaceExpr SpaceExpr::par(const SpaceExpr& s, const SpaceExpr& t) {
  return binary(SpaceKind::Par, s, t);
}
SpaceExpr SpaceExpr::prod(const SpaceExpr& s, const SpaceExpr& t) {
  return binary(SpaceKind::Prod, s, t);
}
SpaceExpr SpaceExpr::coprod(const SpaceExpr& s, const SpaceExpr& t) {
  return binary(SpaceKind::Coprod, s, t);
}
SpaceExpr SpaceExpr::hom(const SpaceExpr& s, const SpaceExpr& t) {
  return binary(SpaceKind::Hom, s, t);
}

SpaceExpr SpaceExpr::sympow(const SpaceExpr& s, Index n) {
  if (n < 0) throw std::invalid_argument("sympow degree must be >= 0");
  auto node = std::make_shared<Node>();
  node->kind = SpaceKind::SymPow;
  node->param = n;
  node->left = s.node_;
  node->dim = multiset_count(s.dim(), n);
  return SpaceExpr(node);
}

SpaceExpr SpaceExpr::bang(const SpaceExpr& s, Index degree) {
  if (degree < 0) throw std::invalid_argument("bang degree must be >= 0");
  auto node = std::make_shared<Node>();
  node->kind = SpaceKind::Bang;
  node->param = degree;
  node->left = s.node_;
  node->dim = bang_dim(s.dim(), degree, 0);
  return SpaceExpr(node);
}

SpaceExpr SpaceExpr::bang_nonunit(const SpaceExpr& s, Index degree) {
  if (degree < 1) throw std::invalid_argument("bang1 degree must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = SpaceKind::BangNonUnit;
  node->param = degree;
  node->left = s.node_;
  node->dim = bang_dim(s.dim(), degree, 1);
  return SpaceExpr(node);
}

bool SpaceExpr::operator==(const SpaceExpr& o) const {
  if (node_ == o.node_) return true;
  if (node_->kind != o.node_->kind || node_->param != o.node_->param) return false;
  const bool l = node_->left ? (o.node_->left && SpaceExpr(node_->left) == SpaceExpr(o.node_->left))
                             : !o.node_->left;
  if (!l) return false;
  return node_->right ? (o.node_->right && SpaceExpr(node_->right) == SpaceExpr(o.node_->right))
                      : !o.node_->right;
}

std::string SpaceExpr::to_string() const {
  std::ostringstream ss;
  switch (kind()) {
    case SpaceKind::Base: ss << "base " << param(); break;
    case SpaceKind::Dual: ss << "dual(" << left().to_string() << ")"; break;
    case SpaceKind::Tensor:
      ss << "tensor(" << left().to_string() << ", " << right().to_string() << ")";
      break;
    case SpaceKind::Par:
      ss << "par(" << left().to_string() << ", " << right().to_string() << ")";
      break;
    case SpaceKind::Prod:
      ss << "prod(" << left().to_string() << ", " << right().to_string() << ")";
      break;
    case SpaceKind::Coprod:
      ss << "coprod(" << left().to_string() << ", " << right().to_string() << ")";
      break;
    case SpaceKind::Hom:
      ss << "hom(" << left().to_string() << ", " << right().to_string() << ")";
      break;
    case SpaceKind::SymPow:
      ss << "sympow(" << left().to_string() << ", " << param() << ")";
      break;
    case SpaceKind::Bang:
      ss << "bang(" << left().to_string() << ", " << param() << ")";
      break;
    case SpaceKind::BangNonUnit:
      ss << "bang1(" << left().to_string() << ", " << param() << ")";
      break;
  }
  return ss.str();
}

std::string SpaceExpr::basis_label(Index i) const {
  if (i < 0 || i >= dim()) throw std::out_of_range("basis index");
  std::ostringstream ss;
  switch (kind()) {
    case SpaceKind::Base:
      ss << "e" << i;
      break;
    case SpaceKind::Dual:
      ss << left().basis_label(i) << "'";
      break;
    case SpaceKind::Tensor:
    case SpaceKind::Par: {
      const Index dt = right().dim();
      ss << "(" << left().basis_label(i / dt) << (kind() == SpaceKind::Tensor ? "*" : "|")
         << right().basis_label(i % dt) << ")";
      break;
    }
    case SpaceKind::Prod:
    case SpaceKind::Coprod: {
      const Index dl = left().dim();
      if (i < dl)
        ss << "inl(" << left().basis_label(i) << ")";
      else
        ss << "inr(" << right().basis_label(i - dl) << ")";
      break;
    }
    case SpaceKind::Hom: {
      const Index dt = right().dim();
      ss << "[" << left().basis_label(i / dt) << "=>" << right().basis_label(i % dt) << "]";
      break;
    }
    case SpaceKind::SymPow: {
      const auto m = multiset_unrank(left().dim(), param(), i);
      ss << "{";
      for (size_t j = 0; j < m.size(); ++j) {
        if (j) ss << ",";
        ss << left().basis_label(m[j]);
      }
      ss << "}";
      break;
    }
    case SpaceKind::Bang:
    case SpaceKind::BangNonUnit: {
      const auto layout = bang_layout(*this);
      const auto [grade, rank] = layout.locate(i);
      const auto m = multiset_unrank(left().dim(), grade, rank);
      ss << "deg" << grade << "{";
      for (size_t j = 0; j < m.size(); ++j) {
        if (j) ss << ",";
        ss << left().basis_label(m[j]);
      }
      ss << "}";
      break;
    }
  }
  return ss.str();
}

Index BangLayout::grade_offset(Index n) const {
  Index off = 0;
  for (Index k = min_grade; k < n; ++k) off += grade_dim(k);
  return off;
}

std::pair<Index, Index> BangLayout::locate(Index i) const {
  Index off = 0;
  for (Index n = min_grade; n <= degree; ++n) {
    const Index gd = grade_dim(n);
    if (i < off + gd) return {n, i - off};
    off += gd;
  }
  throw std::out_of_range("bang index");
}

BangLayout bang_layout(const SpaceExpr& bang_space) {
  if (bang_space.kind() == SpaceKind::Bang)
    return BangLayout{bang_space.left(), bang_space.param(), 0};
  if (bang_space.kind() == SpaceKind::BangNonUnit)
    return BangLayout{bang_space.left(), bang_space.param(), 1};
  throw std::invalid_argument("bang_layout: not an exponential space");
}

}  // namespace weakll
