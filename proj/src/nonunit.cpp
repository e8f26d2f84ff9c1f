#include "weakll/nonunit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "weakll/detail/sparse.hpp"

namespace weakll {

using detail::sparse_accumulate;
using detail::sparse_column;
using detail::sparse_shift;
using detail::sym_power_sparse;
using detail::sym_product_sparse;

namespace {

Scalar scalar_of(const BigInt& b) { return Scalar(b); }

/// Number of ordered compositions realizing a partition (multiset of
/// parts): orderings of the parts sequence.
BigInt partition_orderings(const std::vector<Index>& parts) {
  Multiset m(parts.begin(), parts.end());
  std::sort(m.begin(), m.end());
  return multiset_orderings(m);
}

}  // namespace

SpaceExpr nonunit_bang_space(const SpaceExpr& s, Index degree) {
  return SpaceExpr::bang_nonunit(s, degree);
}

LinMap nonunit_bang_map(const LinMap& f, Index degree) {
  const SpaceExpr bd = SpaceExpr::bang_nonunit(f.dom, degree);
  const SpaceExpr bc = SpaceExpr::bang_nonunit(f.cod, degree);
  const auto ld = bang_layout(bd), lc = bang_layout(bc);
  Matrix out(bc.dim(), bd.dim());
  for (Index n = 1; n <= degree; ++n) {
    const LinMap block = sym_power_map(f, n);
    for (Index i = 0; i < block.mat.rows(); ++i)
      for (Index j = 0; j < block.mat.cols(); ++j)
        if (block.mat.at(i, j) != 0)
          out.at(lc.grade_offset(n) + i, ld.grade_offset(n) + j) = block.mat.at(i, j);
  }
  return LinMap(bd, bc, std::move(out));
}

NonUnitSeq::NonUnitSeq(SpaceExpr d, SpaceExpr c, Index trunc)
    : dom(std::move(d)), cod(std::move(c)), truncation(trunc) {
  if (trunc < 1) throw std::invalid_argument("non-unit seq needs truncation >= 1");
  for (Index n = 1; n <= trunc; ++n) monomials.emplace_back(dom, cod, n);
}

NonUnitSeq NonUnitSeq::identity_seq(const SpaceExpr& s, Index trunc) {
  NonUnitSeq seq(s, s, trunc);
  seq.at_degree(1) = Monomial::from_linmap(LinMap::identity(s));
  return seq;
}

Vec NonUnitSeq::eval(const Vec& x) const {
  Vec y(static_cast<size_t>(cod.dim()));
  for (const auto& m : monomials) {
    const Vec t = m.eval(x);
    for (size_t j = 0; j < y.size(); ++j) y[j] += t[j];
  }
  return y;
}

bool NonUnitSeq::operator==(const NonUnitSeq& o) const {
  return dom == o.dom && cod == o.cod && truncation == o.truncation && monomials == o.monomials;
}

NonUnitSeq substitute_compose(const NonUnitSeq& g, const NonUnitSeq& f) {
  if (!(f.cod == g.dom))
    throw std::invalid_argument("substitute_compose: codomain of f differs from domain of g");
  if (f.truncation != g.truncation)
    throw std::invalid_argument("substitute_compose: truncation mismatch");
  const Index d = f.truncation;
  NonUnitSeq out(f.dom, g.cod, d);
  for (Index p = 1; p <= d; ++p) {
    Monomial acc(f.dom, g.cod, p);
    for (const auto& parts : partitions_of(p)) {
      const Index n = static_cast<Index>(parts.size());
      if (n < 1 || n > d) continue;
      std::vector<Monomial> args;
      args.reserve(parts.size());
      for (Index k : parts) args.push_back(f.at_degree(k));
      acc = acc + apply_multilinear(g.at_degree(n), args)
                      .scaled(scalar_of(partition_orderings(parts)));
    }
    out.at_degree(p) = std::move(acc);
  }
  return out;
}

NonUnitSeq nonunit_kleisli_to_seq(const LinMap& f) {
  const auto layout = bang_layout(f.dom);
  if (layout.min_grade != 1)
    throw std::invalid_argument("nonunit_kleisli_to_seq: expected a bang1 domain");
  const SpaceExpr s = layout.inner;
  NonUnitSeq seq(s, f.cod, layout.degree);
  for (Index n = 1; n <= layout.degree; ++n) {
    const Index off = layout.grade_offset(n);
    Monomial& mono = seq.at_degree(n);
    for (Index r = 0; r < layout.grade_dim(n); ++r) {
      const Multiset m = multiset_unrank(s.dim(), n, r);
      for (Index i = 0; i < f.cod.dim(); ++i)
        if (f.mat.at(i, off + r) != 0) mono.add_coeff(m, i, f.mat.at(i, off + r));
    }
  }
  return seq;
}

LinMap nonunit_seq_to_kleisli(const NonUnitSeq& seq) {
  const SpaceExpr b = SpaceExpr::bang_nonunit(seq.dom, seq.truncation);
  const auto layout = bang_layout(b);
  Matrix out(seq.cod.dim(), b.dim());
  for (Index n = 1; n <= seq.truncation; ++n) {
    const LinMap block = linearize(seq.at_degree(n));
    for (Index i = 0; i < block.mat.rows(); ++i)
      for (Index j = 0; j < block.mat.cols(); ++j)
        if (block.mat.at(i, j) != 0) out.at(i, layout.grade_offset(n) + j) = block.mat.at(i, j);
  }
  return LinMap(b, seq.cod, std::move(out));
}

LinMap nonunit_counit(const SpaceExpr& s, Index degree) {
  const SpaceExpr b = SpaceExpr::bang_nonunit(s, degree);
  const auto layout = bang_layout(b);
  Matrix m(s.dim(), b.dim());
  for (Index i = 0; i < s.dim(); ++i) m.at(i, layout.grade_offset(1) + i) = 1;
  return LinMap(b, s, std::move(m));
}

namespace {

/// The grade-p generator image under the substitution comultiplication,
/// evaluated at a sparse point x of S:
///   sum over partitions L of p with at most D blocks of
///   orderings(L) * pi( j_{l_1}(x^{(x)l_1}) (x) ... ).
detail::SparseVecT nonunit_delta_oracle(const SpaceExpr& s, Index degree, Index p,
                                        const detail::SparseVecT& x) {
  const SpaceExpr b1 = SpaceExpr::bang_nonunit(s, degree);
  const auto lb1 = bang_layout(b1);
  const SpaceExpr bb1 = SpaceExpr::bang_nonunit(b1, degree);
  const auto lbb1 = bang_layout(bb1);
  detail::SparseVecT out;
  for (const auto& parts : partitions_of(p)) {
    const Index blocks = static_cast<Index>(parts.size());
    if (blocks > degree) continue;
    std::vector<detail::SparseVecT> factors;
    factors.reserve(parts.size());
    for (Index l : parts)
      factors.push_back(
          sparse_shift(sym_power_sparse(x, l, s.dim()), lb1.grade_offset(l)));
    const detail::SparseVecT w = sym_product_sparse(factors, b1.dim());
    sparse_accumulate(out, sparse_shift(w, lbb1.grade_offset(blocks)),
                      scalar_of(partition_orderings(parts)));
  }
  return out;
}

}  // namespace

SparseVec nonunit_comultiplication_apply(const SpaceExpr& s, Index degree,
                                         const SparseVec& v) {
  const SpaceExpr b1 = SpaceExpr::bang_nonunit(s, degree);
  const auto lb1 = bang_layout(b1);
  SparseVec out;
  for (const auto& [gidx, c] : v) {
    const auto [p, rank] = lb1.locate(gidx);
    const Multiset m_set = multiset_unrank(s.dim(), p, rank);
    SparseVec acc;
    const Index terms = Index(1) << p;
    for (Index mask = 0; mask < terms; ++mask) {
      SparseVec x;
      Index bits = 0;
      for (Index i = 0; i < p; ++i)
        if (mask & (Index(1) << i)) {
          x[m_set[static_cast<size_t>(i)]] += 1;
          ++bits;
        }
      sparse_accumulate(acc, nonunit_delta_oracle(s, degree, p, x),
                        ((p - bits) % 2) ? Scalar(-1) : Scalar(1));
    }
    sparse_accumulate(out, acc, c / scalar_of(big_factorial(p)));
  }
  return out;
}

LinMap nonunit_comultiplication(const SpaceExpr& s, Index degree) {
  const SpaceExpr b1 = SpaceExpr::bang_nonunit(s, degree);
  const SpaceExpr bb1 = SpaceExpr::bang_nonunit(b1, degree);
  Matrix out(bb1.dim(), b1.dim());
  for (Index col = 0; col < b1.dim(); ++col) {
    SparseVec unit;
    unit[col] = 1;
    for (const auto& [row, val] : nonunit_comultiplication_apply(s, degree, unit))
      out.at(row, col) = val;
  }
  return LinMap(b1, bb1, std::move(out));
}

SparseVec nonunit_bang_map_apply_sparse(const LinMap& f, Index degree, const SparseVec& v) {
  const SpaceExpr bd = SpaceExpr::bang_nonunit(f.dom, degree);
  const SpaceExpr bc = SpaceExpr::bang_nonunit(f.cod, degree);
  const auto ld = bang_layout(bd), lc = bang_layout(bc);
  SparseVec out;
  for (const auto& [gidx, c] : v) {
    const auto [n, rank] = ld.locate(gidx);
    const Multiset m = multiset_unrank(f.dom.dim(), n, rank);
    std::vector<SparseVec> factors;
    factors.reserve(m.size());
    for (Index i : m) factors.push_back(sparse_column(f.mat, i));
    const SparseVec w = sym_product_sparse(factors, f.cod.dim());
    sparse_accumulate(out, sparse_shift(w, lc.grade_offset(n)), c);
  }
  return out;
}

LinMap nonunit_seely(const SpaceExpr& s, const SpaceExpr& t, Index degree) {
  const SpaceExpr bp = SpaceExpr::bang_nonunit(SpaceExpr::prod(s, t), degree);
  const SpaceExpr bs = SpaceExpr::bang(s, degree), bt = SpaceExpr::bang(t, degree);
  const SpaceExpr cod = SpaceExpr::tensor(bs, bt);
  const auto lp = bang_layout(bp), ls = bang_layout(bs), lt = bang_layout(bt);
  Matrix out(cod.dim(), bp.dim());
  for (Index p = 1; p <= degree; ++p) {
    for (Index r = 0; r < lp.grade_dim(p); ++r) {
      Multiset k = multiset_unrank(s.dim() + t.dim(), p, r);
      Multiset a, b;
      for (Index i : k) (i < s.dim() ? a : b).push_back(i < s.dim() ? i : i - s.dim());
      const Index n = static_cast<Index>(a.size());
      const Index row_s = ls.grade_offset(n) + multiset_rank(s.dim(), a);
      const Index row_t = lt.grade_offset(p - n) + multiset_rank(t.dim(), b);
      out.at(row_s * bt.dim() + row_t, lp.grade_offset(p) + r) =
          Scalar(1) / scalar_of(big_binomial(p, n));
    }
  }
  return LinMap(bp, cod, std::move(out));
}

LinMap nonunit_seely_inv(const SpaceExpr& s, const SpaceExpr& t, Index degree) {
  const SpaceExpr bp = SpaceExpr::bang_nonunit(SpaceExpr::prod(s, t), degree);
  const SpaceExpr bs = SpaceExpr::bang(s, degree), bt = SpaceExpr::bang(t, degree);
  const SpaceExpr dom = SpaceExpr::tensor(bs, bt);
  const auto lp = bang_layout(bp), ls = bang_layout(bs), lt = bang_layout(bt);
  Matrix out(bp.dim(), dom.dim());
  for (Index ia = 0; ia < bs.dim(); ++ia) {
    const auto [n, ra] = ls.locate(ia);
    const Multiset a = multiset_unrank(s.dim(), n, ra);
    for (Index ib = 0; ib < bt.dim(); ++ib) {
      const auto [m, rb] = lt.locate(ib);
      if (n + m < 1 || n + m > degree) continue;
      Multiset k = a;
      for (Index i : multiset_unrank(t.dim(), m, rb)) k.push_back(i + s.dim());
      std::sort(k.begin(), k.end());
      const Index row = lp.grade_offset(n + m) + multiset_rank(s.dim() + t.dim(), k);
      out.at(row, ia * bt.dim() + ib) = scalar_of(big_binomial(n + m, n));
    }
  }
  return LinMap(dom, bp, std::move(out));
}

namespace {

std::string matrix_diff(const Matrix& a, const Matrix& b) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != b.at(i, j)) {
        std::ostringstream ss;
        ss << "entry (" << i << "," << j << ")";
        return ss.str();
      }
  return "";
}

std::map<std::string, std::string> sd_params(const SpaceExpr& s, Index d) {
  return {{"space", s.to_string()}, {"degree", std::to_string(d)}};
}

}  // namespace

LawResult nonunit_counit_left(const SpaceExpr& s, Index degree) {
  const SpaceExpr b1 = SpaceExpr::bang_nonunit(s, degree);
  const LinMap lhs =
      compose(nonunit_counit(b1, degree), nonunit_comultiplication(s, degree));
  const std::string diff = matrix_diff(lhs.mat, Matrix::identity(b1.dim()));
  return {"nonunit/counit_left", sd_params(s, degree), diff.empty() ? "pass" : "fail", diff};
}

LawResult nonunit_counit_right(const SpaceExpr& s, Index degree) {
  const SpaceExpr b1 = SpaceExpr::bang_nonunit(s, degree);
  const LinMap lhs = compose(nonunit_bang_map(nonunit_counit(s, degree), degree),
                             nonunit_comultiplication(s, degree));
  const std::string diff = matrix_diff(lhs.mat, Matrix::identity(b1.dim()));
  return {"nonunit/counit_right", sd_params(s, degree), diff.empty() ? "pass" : "fail", diff};
}

LawResult nonunit_coassoc(const SpaceExpr& s, Index degree) {
  const SpaceExpr b1 = SpaceExpr::bang_nonunit(s, degree);
  const LinMap delta = nonunit_comultiplication(s, degree);
  for (Index col = 0; col < b1.dim(); ++col) {
    const SparseVec u = sparse_column(delta.mat, col);
    const SparseVec lhs = nonunit_comultiplication_apply(b1, degree, u);
    const SparseVec rhs = nonunit_bang_map_apply_sparse(delta, degree, u);
    if (!(lhs == rhs)) {
      std::ostringstream ss;
      ss << "column " << col;
      return {"nonunit/coassociativity", sd_params(s, degree), "fail", ss.str()};
    }
  }
  return {"nonunit/coassociativity", sd_params(s, degree), "pass", ""};
}

}  // namespace weakll
