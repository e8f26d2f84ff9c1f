#include "weakll/exponential.hpp"

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

/// Divisor set driving the graded comultiplication. Only 0 divides 0,
/// so the grade-0 unit maps to the grade-0 unit and nothing else. Note
/// the trade-off this convention fixes: it keeps the codereliction
/// comonad diagram exact, at the price of eps_! . delta differing from
/// the identity in the single grade-0 entry (adding a grade-1 term for
/// the unit would repair that entry but break the coder diagram, since
/// cocontraction pairs it with grade-1 vectors).
std::vector<Index> divisors_for_grade(Index p) {
  if (p == 0) return {0};
  return positive_divisors(p);
}

bool sparse_equal(const SparseVec& a, const SparseVec& b) { return a == b; }

std::string first_matrix_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream ss;
    ss << "shape " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
    return ss.str();
  }
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != b.at(i, j)) {
        std::ostringstream ss;
        ss << "entry (" << i << "," << j << "): " << scalar_to_string(a.at(i, j)) << " vs "
           << scalar_to_string(b.at(i, j));
        return ss.str();
      }
  return "";
}

LawResult matrix_law(std::string name, std::map<std::string, std::string> params,
                     const Matrix& lhs, const Matrix& rhs) {
  LawResult r;
  r.law = std::move(name);
  r.params = std::move(params);
  const std::string diff = first_matrix_difference(lhs, rhs);
  r.status = diff.empty() ? "pass" : "fail";
  r.witness = diff;
  return r;
}

std::map<std::string, std::string> sd_params(const SpaceExpr& s, Index d) {
  return {{"space", s.to_string()}, {"degree", std::to_string(d)}};
}

}  // namespace

SpaceExpr bang_space(const SpaceExpr& s, Index degree) { return SpaceExpr::bang(s, degree); }

SpaceExpr whynot_space(const SpaceExpr& s, Index degree) {
  return SpaceExpr::dual(SpaceExpr::bang(SpaceExpr::dual(s), degree));
}

BangVector::BangVector(SpaceExpr sp, Vec c) : space(std::move(sp)), coords(std::move(c)) {
  bang_layout(space);  // validates the kind
  if (static_cast<Index>(coords.size()) != space.dim())
    throw std::invalid_argument("bang vector: wrong length");
}

Vec BangVector::component(Index grade) const {
  const auto layout = bang_layout(space);
  const Index off = layout.grade_offset(grade), gd = layout.grade_dim(grade);
  return Vec(coords.begin() + off, coords.begin() + off + gd);
}

MonomialSeq::MonomialSeq(SpaceExpr d, SpaceExpr c, Index trunc)
    : dom(std::move(d)), cod(std::move(c)), truncation(trunc) {
  if (trunc < 0) throw std::invalid_argument("monomial seq: negative truncation");
  for (Index n = 0; n <= trunc; ++n) monomials.emplace_back(dom, cod, n);
}

MonomialSeq::MonomialSeq(SpaceExpr d, SpaceExpr c, Index trunc, std::vector<Monomial> ms)
    : dom(std::move(d)), cod(std::move(c)), truncation(trunc), monomials(std::move(ms)) {
  if (static_cast<Index>(monomials.size()) != trunc + 1)
    throw std::invalid_argument("monomial seq: wrong number of components");
  for (Index n = 0; n <= trunc; ++n) {
    const auto& m = monomials[static_cast<size_t>(n)];
    if (m.degree() != n || !(m.dom() == dom) || !(m.cod() == cod))
      throw std::invalid_argument("monomial seq: component degree or shape mismatch");
  }
}

MonomialSeq MonomialSeq::dereliction(const SpaceExpr& s, Index trunc) {
  if (trunc < 1) throw std::invalid_argument("dereliction needs truncation >= 1");
  MonomialSeq seq(s, s, trunc);
  seq.monomials[1] = Monomial::from_linmap(LinMap::identity(s));
  return seq;
}

Vec MonomialSeq::eval(const Vec& x) const {
  Vec y(static_cast<size_t>(cod.dim()));
  for (const auto& m : monomials) {
    const Vec t = m.eval(x);
    for (size_t j = 0; j < y.size(); ++j) y[j] += t[j];
  }
  return y;
}

bool MonomialSeq::operator==(const MonomialSeq& o) const {
  return dom == o.dom && cod == o.cod && truncation == o.truncation && monomials == o.monomials;
}

LinMap grade_inclusion(const SpaceExpr& s, Index degree, Index n) {
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const auto layout = bang_layout(b);
  const SpaceExpr sp = SpaceExpr::sympow(s, n);
  Matrix m(b.dim(), sp.dim());
  for (Index i = 0; i < sp.dim(); ++i) m.at(layout.grade_offset(n) + i, i) = 1;
  return LinMap(sp, b, std::move(m));
}

LinMap grade_projection(const SpaceExpr& s, Index degree, Index n) {
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const auto layout = bang_layout(b);
  const SpaceExpr sp = SpaceExpr::sympow(s, n);
  Matrix m(sp.dim(), b.dim());
  for (Index i = 0; i < sp.dim(); ++i) m.at(i, layout.grade_offset(n) + i) = 1;
  return LinMap(b, sp, std::move(m));
}

LinMap sym_power_map(const LinMap& f, Index n) {
  const SpaceExpr dom = SpaceExpr::sympow(f.dom, n);
  const SpaceExpr cod = SpaceExpr::sympow(f.cod, n);
  Matrix out(cod.dim(), dom.dim());
  const Index ds = f.dom.dim(), dt = f.cod.dim();
  std::vector<SparseVec> cols(static_cast<size_t>(ds));
  for (Index j = 0; j < ds; ++j) cols[static_cast<size_t>(j)] = sparse_column(f.mat, j);
  for (Index r = 0; r < dom.dim(); ++r) {
    const Multiset m = multiset_unrank(ds, n, r);
    std::vector<SparseVec> factors;
    factors.reserve(m.size());
    for (Index i : m) factors.push_back(cols[static_cast<size_t>(i)]);
    for (const auto& [row, val] : sym_product_sparse(factors, dt)) out.at(row, r) = val;
  }
  return LinMap(dom, cod, std::move(out));
}

LinMap bang_map(const LinMap& f, Index degree) {
  const SpaceExpr bd = SpaceExpr::bang(f.dom, degree);
  const SpaceExpr bc = SpaceExpr::bang(f.cod, degree);
  const auto ld = bang_layout(bd), lc = bang_layout(bc);
  Matrix out(bc.dim(), bd.dim());
  for (Index n = 0; n <= degree; ++n) {
    const LinMap block = sym_power_map(f, n);
    for (Index i = 0; i < block.mat.rows(); ++i)
      for (Index j = 0; j < block.mat.cols(); ++j)
        if (block.mat.at(i, j) != 0)
          out.at(lc.grade_offset(n) + i, ld.grade_offset(n) + j) = block.mat.at(i, j);
  }
  return LinMap(bd, bc, std::move(out));
}

MonomialSeq kleisli_to_seq(const LinMap& f) {
  const auto layout = bang_layout(f.dom);
  if (layout.min_grade != 0) throw std::invalid_argument("kleisli_to_seq: expected a bang domain");
  const SpaceExpr s = layout.inner;
  MonomialSeq seq(s, f.cod, layout.degree);
  for (Index n = 0; n <= layout.degree; ++n) {
    const Index off = layout.grade_offset(n);
    Monomial& mono = seq.monomials[static_cast<size_t>(n)];
    for (Index r = 0; r < layout.grade_dim(n); ++r) {
      const Multiset m = multiset_unrank(s.dim(), n, r);
      for (Index i = 0; i < f.cod.dim(); ++i)
        if (f.mat.at(i, off + r) != 0) mono.add_coeff(m, i, f.mat.at(i, off + r));
    }
  }
  return seq;
}

LinMap seq_to_kleisli(const MonomialSeq& seq) {
  const SpaceExpr b = SpaceExpr::bang(seq.dom, seq.truncation);
  const auto layout = bang_layout(b);
  Matrix out(seq.cod.dim(), b.dim());
  for (Index n = 0; n <= seq.truncation; ++n) {
    const LinMap block = linearize(seq.monomials[static_cast<size_t>(n)]);
    for (Index i = 0; i < block.mat.rows(); ++i)
      for (Index j = 0; j < block.mat.cols(); ++j)
        if (block.mat.at(i, j) != 0) out.at(i, layout.grade_offset(n) + j) = block.mat.at(i, j);
  }
  return LinMap(b, seq.cod, std::move(out));
}

LinMap counit(const SpaceExpr& s, Index degree) {
  if (degree < 1) throw std::invalid_argument("counit requires truncation degree >= 1");
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const auto layout = bang_layout(b);
  Matrix m(s.dim(), b.dim());
  for (Index i = 0; i < s.dim(); ++i) m.at(i, layout.grade_offset(1) + i) = 1;
  return LinMap(b, s, std::move(m));
}

LinMap coder(const SpaceExpr& s, Index degree) {
  if (degree < 1) throw std::invalid_argument("coder requires truncation degree >= 1");
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const auto layout = bang_layout(b);
  Matrix m(b.dim(), s.dim());
  for (Index i = 0; i < s.dim(); ++i) m.at(layout.grade_offset(1) + i, i) = 1;
  return LinMap(s, b, std::move(m));
}

LinMap comultiplication(const SpaceExpr& s, Index degree) {
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const SpaceExpr bb = SpaceExpr::bang(b, degree);
  const auto lb = bang_layout(b), lbb = bang_layout(bb);
  Matrix out(bb.dim(), b.dim());
  for (Index p = 0; p <= degree; ++p) {
    for (Index k : divisors_for_grade(p)) {
      if (k > degree) continue;
      const Index m = (p == 0) ? 0 : p / k;
      const Monomial inner =
          postcompose(grade_inclusion(s, degree, m), sym_power_embed(s, m));
      const Monomial block = compose_monomials(sym_power_embed(b, k), inner);
      const LinMap lin = linearize(block);  // SymPow(s,p) -> SymPow(b,k)
      for (Index i = 0; i < lin.mat.rows(); ++i)
        for (Index j = 0; j < lin.mat.cols(); ++j)
          if (lin.mat.at(i, j) != 0)
            out.at(lbb.grade_offset(k) + i, lb.grade_offset(p) + j) += lin.mat.at(i, j);
    }
  }
  return LinMap(b, bb, std::move(out));
}

SparseVec comultiplication_apply(const SpaceExpr& s, Index degree, const SparseVec& v) {
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const SpaceExpr bb = SpaceExpr::bang(b, degree);
  const auto lb = bang_layout(b), lbb = bang_layout(bb);
  SparseVec out;
  for (const auto& [gidx, c] : v) {
    const auto [p, rank] = lb.locate(gidx);
    const Multiset m_set = multiset_unrank(s.dim(), p, rank);
    for (Index k : divisors_for_grade(p)) {
      if (k > degree) continue;
      const Index m = (p == 0) ? 0 : p / k;
      // polarized coefficient of x |-> (j_m(x^{(x)m}))^{(x)k} at m_set
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
        SparseVec u = sparse_shift(sym_power_sparse(x, m, s.dim()), lb.grade_offset(m));
        SparseVec w = sym_power_sparse(u, k, b.dim());
        sparse_accumulate(acc, w, ((p - bits) % 2) ? Scalar(-1) : Scalar(1));
      }
      const Scalar norm = c / scalar_of(big_factorial(p));
      sparse_accumulate(out, sparse_shift(acc, lbb.grade_offset(k)), norm);
    }
  }
  return out;
}

SparseVec bang_map_apply_sparse(const LinMap& f, Index degree, const SparseVec& v) {
  const SpaceExpr bd = SpaceExpr::bang(f.dom, degree);
  const SpaceExpr bc = SpaceExpr::bang(f.cod, degree);
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

MonomialSeq kleisli_compose(const MonomialSeq& g, const MonomialSeq& f) {
  if (!(f.cod == g.dom))
    throw std::invalid_argument("kleisli_compose: codomain of f differs from domain of g");
  if (f.truncation != g.truncation)
    throw std::invalid_argument("kleisli_compose: truncation mismatch (" +
                                std::to_string(f.truncation) + " vs " +
                                std::to_string(g.truncation) + ")");
  const Index d = f.truncation;
  MonomialSeq out(f.dom, g.cod, d);
  out.monomials[0] = g.monomials[0];  // only 0 divides 0
  for (Index p = 1; p <= d; ++p) {
    Monomial acc(f.dom, g.cod, p);
    for (Index k : positive_divisors(p))
      acc = acc + compose_monomials(g.monomials[static_cast<size_t>(k)],
                                    f.monomials[static_cast<size_t>(p / k)]);
    out.monomials[static_cast<size_t>(p)] = std::move(acc);
  }
  return out;
}

namespace {

/// Splits a multiset over the Prod(S,T) basis into its S and T parts.
std::pair<Multiset, Multiset> split_prod_multiset(const Multiset& k, Index dim_s) {
  Multiset a, b;
  for (Index i : k)
    (i < dim_s ? a : b).push_back(i < dim_s ? i : i - dim_s);
  return {a, b};
}

}  // namespace

LinMap seely_iso(const SpaceExpr& s, const SpaceExpr& t, Index degree) {
  const SpaceExpr bp = SpaceExpr::bang(SpaceExpr::prod(s, t), degree);
  const SpaceExpr bs = SpaceExpr::bang(s, degree), bt = SpaceExpr::bang(t, degree);
  const SpaceExpr cod = SpaceExpr::tensor(bs, bt);
  const auto lp = bang_layout(bp), ls = bang_layout(bs), lt = bang_layout(bt);
  Matrix out(cod.dim(), bp.dim());
  for (Index p = 0; p <= degree; ++p) {
    for (Index r = 0; r < lp.grade_dim(p); ++r) {
      const Multiset k = multiset_unrank(s.dim() + t.dim(), p, r);
      const auto [a, b] = split_prod_multiset(k, s.dim());
      const Index n = static_cast<Index>(a.size());
      const Index row_s = ls.grade_offset(n) + multiset_rank(s.dim(), a);
      const Index row_t = lt.grade_offset(p - n) + multiset_rank(t.dim(), b);
      out.at(row_s * bt.dim() + row_t, lp.grade_offset(p) + r) =
          Scalar(1) / scalar_of(big_binomial(p, n));
    }
  }
  return LinMap(bp, cod, std::move(out));
}

LinMap seely_inv(const SpaceExpr& s, const SpaceExpr& t, Index degree) {
  const SpaceExpr bp = SpaceExpr::bang(SpaceExpr::prod(s, t), degree);
  const SpaceExpr bs = SpaceExpr::bang(s, degree), bt = SpaceExpr::bang(t, degree);
  const SpaceExpr dom = SpaceExpr::tensor(bs, bt);
  const auto lp = bang_layout(bp), ls = bang_layout(bs), lt = bang_layout(bt);
  Matrix out(bp.dim(), dom.dim());
  for (Index ia = 0; ia < bs.dim(); ++ia) {
    const auto [n, ra] = ls.locate(ia);
    const Multiset a = multiset_unrank(s.dim(), n, ra);
    for (Index ib = 0; ib < bt.dim(); ++ib) {
      const auto [m, rb] = lt.locate(ib);
      if (n + m > degree) continue;
      Multiset k = a;
      const Multiset b = multiset_unrank(t.dim(), m, rb);
      for (Index i : b) k.push_back(i + s.dim());
      std::sort(k.begin(), k.end());
      const Index row = lp.grade_offset(n + m) + multiset_rank(s.dim() + t.dim(), k);
      out.at(row, ia * bt.dim() + ib) = scalar_of(big_binomial(n + m, n));
    }
  }
  return LinMap(dom, bp, std::move(out));
}

LinMap monoidal_mu(const SpaceExpr& s, const SpaceExpr& t, Index degree) {
  const SpaceExpr bs = SpaceExpr::bang(s, degree), bt = SpaceExpr::bang(t, degree);
  const SpaceExpr st = SpaceExpr::tensor(s, t);
  const SpaceExpr bst = SpaceExpr::bang(st, degree);
  const SpaceExpr dom = SpaceExpr::tensor(bs, bt);
  const auto ls = bang_layout(bs), lt = bang_layout(bt), lst = bang_layout(bst);
  Matrix out(bst.dim(), dom.dim());
  for (Index ia = 0; ia < bs.dim(); ++ia) {
    const auto [n, ra] = ls.locate(ia);
    const Multiset a = multiset_unrank(s.dim(), n, ra);
    for (Index ib = 0; ib < bt.dim(); ++ib) {
      const auto [m, rb] = lt.locate(ib);
      if (n != m) continue;  // mixed grades vanish
      Multiset b = multiset_unrank(t.dim(), m, rb);
      const Scalar norm = Scalar(1) / scalar_of(multiset_orderings(b));
      std::sort(b.begin(), b.end());
      Multiset pairs(static_cast<size_t>(n));
      do {
        for (Index i = 0; i < n; ++i)
          pairs[static_cast<size_t>(i)] =
              a[static_cast<size_t>(i)] * t.dim() + b[static_cast<size_t>(i)];
        Multiset sorted = pairs;
        std::sort(sorted.begin(), sorted.end());
        const Index row = lst.grade_offset(n) + multiset_rank(st.dim(), sorted);
        out.at(row, ia * bt.dim() + ib) += norm;
      } while (std::next_permutation(b.begin(), b.end()));
    }
  }
  return LinMap(dom, bst, std::move(out));
}

LinMap monoidal_mu0(Index degree) {
  const SpaceExpr one = SpaceExpr::base(1);
  const SpaceExpr b = SpaceExpr::bang(one, degree);
  Matrix m(b.dim(), 1);
  for (Index i = 0; i < b.dim(); ++i) m.at(i, 0) = 1;
  return LinMap(one, b, std::move(m));
}

LinMap contraction(const SpaceExpr& s, Index degree) {
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const SpaceExpr cod = SpaceExpr::tensor(b, b);
  const auto lb = bang_layout(b);
  Matrix out(cod.dim(), b.dim());
  for (Index col = 0; col < b.dim(); ++col) {
    const auto [p, rank] = lb.locate(col);
    const Multiset m = multiset_unrank(s.dim(), p, rank);
    // distinct values with repetition counts
    std::vector<std::pair<Index, Index>> runs;
    for (Index v : m) {
      if (!runs.empty() && runs.back().first == v)
        ++runs.back().second;
      else
        runs.emplace_back(v, 1);
    }
    const Scalar inv_m = Scalar(1) / scalar_of(multiset_orderings(m));
    std::vector<Index> take(runs.size(), 0);
    while (true) {
      Multiset a, rest;
      for (size_t i = 0; i < runs.size(); ++i) {
        for (Index c = 0; c < take[i]; ++c) a.push_back(runs[i].first);
        for (Index c = take[i]; c < runs[i].second; ++c) rest.push_back(runs[i].first);
      }
      const Index ia = lb.grade_offset(static_cast<Index>(a.size())) +
                       multiset_rank(s.dim(), a);
      const Index ib = lb.grade_offset(static_cast<Index>(rest.size())) +
                       multiset_rank(s.dim(), rest);
      out.at(ia * b.dim() + ib, col) =
          scalar_of(multiset_orderings(a)) * scalar_of(multiset_orderings(rest)) * inv_m;
      // next sub-multiset
      size_t i = 0;
      for (; i < runs.size(); ++i) {
        if (take[i] < runs[i].second) {
          ++take[i];
          break;
        }
        take[i] = 0;
      }
      if (i == runs.size()) break;
    }
  }
  return LinMap(b, cod, std::move(out));
}

LinMap weakening(const SpaceExpr& s, Index degree) {
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  Matrix m(1, b.dim());
  m.at(0, 0) = 1;  // grade-0 coordinate sits first
  return LinMap(b, SpaceExpr::base(1), std::move(m));
}

LinMap cocontraction(const SpaceExpr& s, Index degree) {
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const SpaceExpr dom = SpaceExpr::tensor(b, b);
  const auto lb = bang_layout(b);
  Matrix out(b.dim(), dom.dim());
  for (Index ia = 0; ia < b.dim(); ++ia) {
    const auto [i, ra] = lb.locate(ia);
    const Multiset a = multiset_unrank(s.dim(), i, ra);
    for (Index ib = 0; ib < b.dim(); ++ib) {
      const auto [j, rb] = lb.locate(ib);
      if (i + j > degree) continue;  // truncation
      Multiset merged = a;
      const Multiset bset = multiset_unrank(s.dim(), j, rb);
      merged.insert(merged.end(), bset.begin(), bset.end());
      std::sort(merged.begin(), merged.end());
      const Index row = lb.grade_offset(i + j) + multiset_rank(s.dim(), merged);
      out.at(row, ia * b.dim() + ib) = scalar_of(big_binomial(i + j, j));
    }
  }
  return LinMap(dom, b, std::move(out));
}

LinMap coweakening(const SpaceExpr& s, Index degree) {
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  Matrix m(b.dim(), 1);
  m.at(0, 0) = 1;  // ev_0 is the grade-0 unit: higher monomials vanish at 0
  return LinMap(SpaceExpr::base(1), b, std::move(m));
}

MonomialSeq curry_seq(const MonomialSeq& f) {
  if (f.dom.kind() != SpaceKind::Prod)
    throw std::invalid_argument("curry_seq: domain is not a product");
  const SpaceExpr s = f.dom.left(), t = f.dom.right(), u = f.cod;
  const Index d = f.truncation;
  const SpaceExpr bt = SpaceExpr::bang(t, d);
  const auto lt = bang_layout(bt);
  const SpaceExpr h = SpaceExpr::hom(bt, u);
  MonomialSeq out(s, h, d);
  for (Index p = 0; p <= d; ++p) {
    for (const auto& [k, vec] : f.monomials[static_cast<size_t>(p)].coeffs()) {
      const auto [a, b] = split_prod_multiset(k, s.dim());
      const Index n = static_cast<Index>(a.size());
      const Index m = p - n;
      const Scalar factor = scalar_of(big_binomial(p, n));
      const Index bt_idx = lt.grade_offset(m) + multiset_rank(t.dim(), b);
      for (size_t uj = 0; uj < vec.size(); ++uj)
        if (vec[uj] != 0)
          out.monomials[static_cast<size_t>(n)].add_coeff(
              a, bt_idx * u.dim() + static_cast<Index>(uj), factor * vec[uj]);
    }
  }
  return out;
}

MonomialSeq uncurry_seq(const MonomialSeq& g, const SpaceExpr& s, const SpaceExpr& t) {
  const Index d = g.truncation;
  const SpaceExpr bt = SpaceExpr::bang(t, d);
  if (!(g.dom == s) || g.cod.kind() != SpaceKind::Hom || !(g.cod.left() == bt))
    throw std::invalid_argument("uncurry_seq: expected a sequence S -> Hom(Bang(T,D),U)");
  const SpaceExpr u = g.cod.right();
  const auto lt = bang_layout(bt);
  MonomialSeq out(SpaceExpr::prod(s, t), u, d);
  for (Index n = 0; n <= d; ++n) {
    for (const auto& [a, vec] : g.monomials[static_cast<size_t>(n)].coeffs()) {
      for (size_t hj = 0; hj < vec.size(); ++hj) {
        if (vec[hj] == 0) continue;
        const Index bt_idx = static_cast<Index>(hj) / u.dim();
        const Index uj = static_cast<Index>(hj) % u.dim();
        const auto [m, rb] = lt.locate(bt_idx);
        const Index p = n + m;
        if (p > d)
          throw std::invalid_argument(
              "uncurry_seq: component of total degree beyond the truncation");
        Multiset k = a;
        for (Index i : multiset_unrank(t.dim(), m, rb)) k.push_back(i + s.dim());
        std::sort(k.begin(), k.end());
        out.monomials[static_cast<size_t>(p)].add_coeff(
            k, uj, vec[hj] / scalar_of(big_binomial(p, n)));
      }
    }
  }
  return out;
}

LawResult comonad_counit_left(const SpaceExpr& s, Index degree) {
  auto params = sd_params(s, degree);
  if (degree < 1) return {"comonad/counit_left", params, "skipped", ""};
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const LinMap lhs = compose(counit(b, degree), comultiplication(s, degree));
  return matrix_law("comonad/counit_left", params, lhs.mat, Matrix::identity(b.dim()));
}

LawResult comonad_counit_right(const SpaceExpr& s, Index degree) {
  auto params = sd_params(s, degree);
  if (degree < 1) return {"comonad/counit_right", params, "skipped", ""};
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const LinMap lhs =
      compose(bang_map(counit(s, degree), degree), comultiplication(s, degree));
  return matrix_law("comonad/counit_right", params, lhs.mat, Matrix::identity(b.dim()));
}

LawResult comonad_coassoc(const SpaceExpr& s, Index degree) {
  auto params = sd_params(s, degree);
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const LinMap delta = comultiplication(s, degree);
  for (Index col = 0; col < b.dim(); ++col) {
    const SparseVec u = sparse_column(delta.mat, col);
    const SparseVec lhs = comultiplication_apply(b, degree, u);
    const SparseVec rhs = bang_map_apply_sparse(delta, degree, u);
    if (!sparse_equal(lhs, rhs)) {
      std::ostringstream ss;
      ss << "column " << col << " of grade " << bang_layout(b).locate(col).first
         << ": composites differ; first divergence at output index ";
      auto it_l = lhs.begin();
      auto it_r = rhs.begin();
      while (it_l != lhs.end() && it_r != rhs.end() && *it_l == *it_r) {
        ++it_l;
        ++it_r;
      }
      if (it_l != lhs.end())
        ss << it_l->first << " (lhs " << scalar_to_string(it_l->second) << ")";
      else
        ss << it_r->first << " (rhs " << scalar_to_string(it_r->second) << ")";
      return {"comonad/coassociativity", params, "fail", ss.str()};
    }
  }
  return {"comonad/coassociativity", params, "pass", ""};
}

std::vector<LawResult> differential_category_suite(const SpaceExpr& s,
                                                   const SpaceExpr& t, Index degree) {
  std::vector<LawResult> out;
  const auto params = [&](const char* extra) {
    std::map<std::string, std::string> p{{"left", s.to_string()},
                                         {"right", t.to_string()},
                                         {"degree", std::to_string(degree)}};
    if (extra[0]) p["domain"] = extra;
    return p;
  };
  if (degree < 1) {
    for (const char* law :
         {"differential/strength_square", "differential/counit_coder",
          "differential/coder_comonad_diagram"})
      out.push_back({law, params(""), "skipped", ""});
  } else {
    const SpaceExpr st = SpaceExpr::tensor(s, t);
    const LinMap left =
        compose(monoidal_mu(s, t, degree),
                tensor_map(coder(s, degree), LinMap::identity(SpaceExpr::bang(t, degree))));
    const LinMap right =
        compose(coder(st, degree), tensor_map(LinMap::identity(s), counit(t, degree)));
    out.push_back(
        matrix_law("differential/strength_square", params(""), left.mat, right.mat));

    out.push_back(matrix_law("differential/counit_coder", params(""),
                             compose(counit(s, degree), coder(s, degree)).mat,
                             Matrix::identity(s.dim())));

    // delta . coder  ==  nabla . (coder_{!S} (x) delta) . (coder (x) nu) . (x |-> x (x) 1)
    // computed column-sparse: the inner tensor of bangs of bangs is far
    // too large to materialize densely.
    const SpaceExpr b = SpaceExpr::bang(s, degree);
    const LinMap lhs = compose(comultiplication(s, degree), coder(s, degree));
    const LinMap coder_b = coder(b, degree);
    const LinMap delta = comultiplication(s, degree);
    const auto lbb = bang_layout(SpaceExpr::bang(b, degree));
    bool ok = true;
    std::string witness;
    for (Index i = 0; i < s.dim() && ok; ++i) {
      // bottom path applied to e_i: coder(e_i) (x) nu(1) has the single
      // entry (grade-1 slot i of b) (x) (grade-0 unit of b)
      const Index ia = bang_layout(b).grade_offset(1) + i;
      const SparseVec left_col = sparse_column(coder_b.mat, ia);
      const SparseVec right_col = sparse_column(delta.mat, 0);  // delta of the unit
      SparseVec rhs_col;
      for (const auto& [ja, ca] : left_col)
        for (const auto& [jb, cb] : right_col) {
          const auto [ga, ra] = lbb.locate(ja);
          const auto [gb, rb] = lbb.locate(jb);
          if (ga + gb > degree) continue;
          Multiset merged = multiset_unrank(b.dim(), ga, ra);
          const Multiset m2 = multiset_unrank(b.dim(), gb, rb);
          merged.insert(merged.end(), m2.begin(), m2.end());
          std::sort(merged.begin(), merged.end());
          const Index row = lbb.grade_offset(ga + gb) + multiset_rank(b.dim(), merged);
          Scalar& slot = rhs_col[row];
          slot += scalar_of(big_binomial(ga + gb, gb)) * ca * cb;
          if (slot == 0) rhs_col.erase(row);
        }
      if (!(rhs_col == sparse_column(lhs.mat, i))) {
        std::ostringstream ss;
        ss << "column " << i << " differs";
        witness = ss.str();
        ok = false;
      }
    }
    out.push_back({"differential/coder_comonad_diagram", params(""),
                   ok ? "pass" : "fail", witness});
  }

  // Bialgebra laws on Bang(s, degree).
  const SpaceExpr b = SpaceExpr::bang(s, degree);
  const LinMap idb = LinMap::identity(b);
  const LinMap delta_c = contraction(s, degree);
  const LinMap nabla = cocontraction(s, degree);
  const LinMap e = weakening(s, degree);
  const LinMap nu = coweakening(s, degree);
  const SpaceExpr one = SpaceExpr::base(1);

  out.push_back(matrix_law(
      "bialgebra/contraction_coassoc", params(""),
      compose(associator(b, b, b), compose(tensor_map(delta_c, idb), delta_c)).mat,
      compose(tensor_map(idb, delta_c), delta_c).mat));
  out.push_back(matrix_law("bialgebra/contraction_cocomm", params(""),
                           compose(symmetry(b, b), delta_c).mat, delta_c.mat));
  {
    const LinMap lhs = compose(tensor_map(e, idb), delta_c);  // Bang -> Tensor(1, Bang)
    const LinMap unitor(b, SpaceExpr::tensor(one, b), Matrix::identity(b.dim()));
    out.push_back(
        matrix_law("bialgebra/contraction_counit", params(""), lhs.mat, unitor.mat));
  }
  out.push_back(matrix_law(
      "bialgebra/cocontraction_assoc", params(""),
      compose(nabla, tensor_map(nabla, idb)).mat,
      compose(compose(nabla, tensor_map(idb, nabla)), associator(b, b, b)).mat));
  out.push_back(matrix_law("bialgebra/cocontraction_comm", params(""),
                           compose(nabla, symmetry(b, b)).mat, nabla.mat));
  {
    const LinMap unitor(b, SpaceExpr::tensor(one, b), Matrix::identity(b.dim()));
    const LinMap lhs = compose(nabla, compose(tensor_map(nu, idb), unitor));
    out.push_back(matrix_law("bialgebra/cocontraction_unit", params(""), lhs.mat,
                             Matrix::identity(b.dim())));
  }
  out.push_back(matrix_law("bialgebra/weakening_coweakening", params(""),
                           compose(e, nu).mat, Matrix::identity(1)));
  {
    const LinMap unitor(one, SpaceExpr::tensor(one, one), Matrix::identity(1));
    out.push_back(matrix_law("bialgebra/contraction_coweakening", params(""),
                             compose(delta_c, nu).mat,
                             compose(tensor_map(nu, nu), unitor).mat));
  }
  {
    const LinMap unitor(SpaceExpr::tensor(one, one), one, Matrix::identity(1));
    out.push_back(matrix_law("bialgebra/weakening_cocontraction", params(""),
                             compose(e, nabla).mat,
                             compose(unitor, tensor_map(e, e)).mat));
  }
  {
    // Compatibility square Delta . nabla == (nabla (x) nabla) .
    // (id (x) swap (x) id) . (Delta (x) Delta), checked column by column
    // on the degree-filtered subspace of Tensor(Bang,Bang), where the
    // truncated operations are lossless.
    const auto lb = bang_layout(b);
    const Index db = b.dim();
    bool ok = true;
    std::string witness;
    for (Index ia = 0; ia < db && ok; ++ia)
      for (Index ib = 0; ib < db && ok; ++ib) {
        if (lb.locate(ia).first + lb.locate(ib).first > degree) continue;
        SparseVec lhs_col;
        {
          const SparseVec nab = sparse_column(nabla.mat, ia * db + ib);
          for (const auto& [row, c] : nab)
            sparse_accumulate(lhs_col, sparse_column(delta_c.mat, row), c);
        }
        SparseVec rhs_col;
        const SparseVec col_a = sparse_column(delta_c.mat, ia);
        const SparseVec col_b = sparse_column(delta_c.mat, ib);
        for (const auto& [ka, va] : col_a) {
          const Index xa = ka / db, ya = ka % db;
          for (const auto& [kb, vb] : col_b) {
            const Index xb = kb / db, yb = kb % db;
            const SparseVec n1 = sparse_column(nabla.mat, xa * db + xb);
            const SparseVec n2 = sparse_column(nabla.mat, ya * db + yb);
            for (const auto& [r1, c1] : n1)
              for (const auto& [r2, c2] : n2) {
                Scalar& slot = rhs_col[r1 * db + r2];
                slot += va * vb * c1 * c2;
                if (slot == 0) rhs_col.erase(r1 * db + r2);
              }
          }
        }
        if (!sparse_equal(lhs_col, rhs_col)) {
          std::ostringstream ss;
          ss << "filtered input column (" << ia << "," << ib << ")";
          witness = ss.str();
          ok = false;
        }
      }
    out.push_back({"bialgebra/compatibility_square", params("degree-filtered"),
                   ok ? "pass" : "fail", witness});
  }
  return out;
}

}  // namespace weakll
