#include "weakll/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace weakll {

namespace {

bool vec_is_zero(const Vec& v) {
  for (const auto& e : v)
    if (e != 0) return false;
  return true;
}

Scalar scalar_of(const BigInt& b) { return Scalar(b); }

}  // namespace

Monomial Monomial::constant(const SpaceExpr& dom, const SpaceExpr& cod, const Vec& value) {
  if (static_cast<Index>(value.size()) != cod.dim())
    throw std::invalid_argument("constant monomial: value has wrong length");
  Monomial m(dom, cod, 0);
  if (!vec_is_zero(value)) m.coeffs_[Multiset{}] = value;
  return m;
}

Monomial Monomial::from_linmap(const LinMap& f) {
  Monomial m(f.dom, f.cod, 1);
  for (Index j = 0; j < f.dom.dim(); ++j) {
    Vec col(static_cast<size_t>(f.cod.dim()));
    bool nz = false;
    for (Index i = 0; i < f.cod.dim(); ++i) {
      col[static_cast<size_t>(i)] = f.mat.at(i, j);
      nz = nz || col[static_cast<size_t>(i)] != 0;
    }
    if (nz) m.coeffs_[Multiset{j}] = std::move(col);
  }
  return m;
}

Vec Monomial::coeff(const Multiset& m) const {
  auto it = coeffs_.find(m);
  if (it != coeffs_.end()) return it->second;
  return Vec(static_cast<size_t>(cod_.dim()));
}

void Monomial::prune(const Multiset& m) {
  auto it = coeffs_.find(m);
  if (it != coeffs_.end() && vec_is_zero(it->second)) coeffs_.erase(it);
}

void Monomial::add_coeff(const Multiset& m, Index cod_index, const Scalar& v) {
  if (static_cast<Index>(m.size()) != degree_)
    throw std::invalid_argument("monomial coeff: multiset size differs from degree");
  if (!std::is_sorted(m.begin(), m.end()))
    throw std::invalid_argument("monomial coeff: multiset not sorted");
  auto& vec = coeffs_[m];
  if (vec.empty()) vec.assign(static_cast<size_t>(cod_.dim()), Scalar(0));
  vec[static_cast<size_t>(cod_index)] += v;
  prune(m);
}

void Monomial::set_coeff(const Multiset& m, Index cod_index, const Scalar& v) {
  if (static_cast<Index>(m.size()) != degree_)
    throw std::invalid_argument("monomial coeff: multiset size differs from degree");
  auto& vec = coeffs_[m];
  if (vec.empty()) vec.assign(static_cast<size_t>(cod_.dim()), Scalar(0));
  vec[static_cast<size_t>(cod_index)] = v;
  prune(m);
}

Vec Monomial::eval(const Vec& x) const {
  if (static_cast<Index>(x.size()) != dom_.dim())
    throw std::invalid_argument("monomial eval: dimension mismatch");
  Vec y(static_cast<size_t>(cod_.dim()));
  for (const auto& [m, vec] : coeffs_) {
    Scalar term = scalar_of(multiset_orderings(m));
    for (Index i : m) {
      term *= x[static_cast<size_t>(i)];
      if (term == 0) break;
    }
    if (term == 0) continue;
    for (size_t j = 0; j < y.size(); ++j) y[j] += term * vec[j];
  }
  return y;
}

Monomial Monomial::operator+(const Monomial& o) const {
  if (!(dom_ == o.dom_) || !(cod_ == o.cod_) || degree_ != o.degree_)
    throw std::invalid_argument("monomial sum: degree or shape mismatch");
  Monomial r = *this;
  for (const auto& [m, vec] : o.coeffs_) {
    auto& dst = r.coeffs_[m];
    if (dst.empty()) dst.assign(vec.size(), Scalar(0));
    for (size_t j = 0; j < vec.size(); ++j) dst[j] += vec[j];
    r.prune(m);
  }
  return r;
}

Monomial Monomial::scaled(const Scalar& s) const {
  Monomial r(dom_, cod_, degree_);
  if (s == 0) return r;
  for (const auto& [m, vec] : coeffs_) {
    Vec v = vec;
    for (auto& e : v) e *= s;
    r.coeffs_[m] = std::move(v);
  }
  return r;
}

bool Monomial::operator==(const Monomial& o) const {
  return dom_ == o.dom_ && cod_ == o.cod_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
}

bool Monomial::is_zero() const { return coeffs_.empty(); }

Monomial polarize(const std::function<Vec(const Vec&)>& oracle, Index degree,
                  const SpaceExpr& dom, const SpaceExpr& cod, bool spot_check) {
  const Index d = dom.dim();
  if (spot_check && degree >= 0) {
    Vec x(static_cast<size_t>(d));
    for (Index i = 0; i < d; ++i) x[static_cast<size_t>(i)] = Scalar(i + 1, 2);
    Vec x2 = x;
    for (auto& e : x2) e *= 3;
    Vec y = oracle(x), y2 = oracle(x2);
    Scalar lambda_n = 1;
    for (Index i = 0; i < degree; ++i) lambda_n *= 3;
    for (size_t j = 0; j < y.size(); ++j)
      if (y2[j] != lambda_n * y[j])
        throw std::invalid_argument("polarize: oracle is not homogeneous of the given degree");
  }

  Monomial result(dom, cod, degree);
  const Scalar inv_fact = Scalar(1) / scalar_of(big_factorial(degree));
  const Index count = multiset_count(d, degree);
  for (Index r = 0; r < count; ++r) {
    const Multiset m = multiset_unrank(d, degree, r);
    Vec acc(static_cast<size_t>(cod.dim()));
    for (Index mask = 0; mask < (Index(1) << degree); ++mask) {
      Vec x(static_cast<size_t>(d));
      Index bits = 0;
      for (Index i = 0; i < degree; ++i)
        if (mask & (Index(1) << i)) {
          x[static_cast<size_t>(m[static_cast<size_t>(i)])] += 1;
          ++bits;
        }
      Vec fx = oracle(x);
      const bool neg = ((degree - bits) % 2) != 0;
      for (size_t j = 0; j < acc.size(); ++j) acc[j] += neg ? -fx[j] : fx[j];
    }
    for (size_t j = 0; j < acc.size(); ++j) {
      const Scalar v = acc[j] * inv_fact;
      if (v != 0) result.add_coeff(m, static_cast<Index>(j), v);
    }
  }
  return result;
}

LinMap linearize(const Monomial& m) {
  const SpaceExpr dom = SpaceExpr::sympow(m.dom(), m.degree());
  Matrix mat(m.cod().dim(), dom.dim());
  for (const auto& [ms, vec] : m.coeffs()) {
    const Index col = multiset_rank(m.dom().dim(), ms);
    for (size_t j = 0; j < vec.size(); ++j) mat.at(static_cast<Index>(j), col) = vec[j];
  }
  return LinMap(dom, m.cod(), std::move(mat));
}

Monomial sym_power_embed(const SpaceExpr& s, Index n) {
  const SpaceExpr cod = SpaceExpr::sympow(s, n);
  Monomial m(s, cod, n);
  const Index count = multiset_count(s.dim(), n);
  for (Index r = 0; r < count; ++r)
    m.set_coeff(multiset_unrank(s.dim(), n, r), r, Scalar(1));
  return m;
}

Monomial compose_monomials(const Monomial& g, const Monomial& f) {
  if (!(f.cod() == g.dom()))
    throw std::invalid_argument("compose_monomials: codomain of f differs from domain of g");
  const Index k = g.degree();
  const Index result_degree = k * f.degree();
  Monomial result(f.dom(), g.cod(), result_degree);

  if (k == 0) {
    const Vec c = g.coeff(Multiset{});
    if (!vec_is_zero(c)) result = Monomial::constant(f.dom(), g.cod(), c);
    return result;
  }

  std::vector<std::pair<Multiset, Vec>> f_support(f.coeffs().begin(), f.coeffs().end());
  if (f_support.empty()) return result;

  std::map<Multiset, Vec> buckets;
  std::vector<size_t> choice(static_cast<size_t>(k), 0);
  for (const auto& [n_set, gvec] : g.coeffs()) {
    const Scalar g_orderings = scalar_of(multiset_orderings(n_set));
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      // weight = prod_i orderings(A_i) * f_coeff(A_i)[n_i]
      Scalar weight = g_orderings;
      Multiset merged;
      for (Index i = 0; i < k && weight != 0; ++i) {
        const auto& [a_set, avec] = f_support[choice[static_cast<size_t>(i)]];
        const Scalar fc = avec[static_cast<size_t>(n_set[static_cast<size_t>(i)])];
        if (fc == 0) {
          weight = 0;
          break;
        }
        weight *= scalar_of(multiset_orderings(a_set)) * fc;
        merged.insert(merged.end(), a_set.begin(), a_set.end());
      }
      if (weight != 0) {
        std::sort(merged.begin(), merged.end());
        auto& dst = buckets[merged];
        if (dst.empty()) dst.assign(static_cast<size_t>(g.cod().dim()), Scalar(0));
        for (size_t j = 0; j < dst.size(); ++j) dst[j] += weight * gvec[j];
      }
      // next ordered k-tuple of f support entries
      Index pos = k - 1;
      while (pos >= 0) {
        if (++choice[static_cast<size_t>(pos)] < f_support.size()) break;
        choice[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }

  for (auto& [m, vec] : buckets) {
    const Scalar norm = Scalar(1) / scalar_of(multiset_orderings(m));
    for (size_t j = 0; j < vec.size(); ++j) {
      const Scalar v = vec[j] * norm;
      if (v != 0) result.add_coeff(m, static_cast<Index>(j), v);
    }
  }
  return result;
}

Monomial apply_multilinear(const Monomial& g, const std::vector<Monomial>& args) {
  const Index n = g.degree();
  if (static_cast<Index>(args.size()) != n)
    throw std::invalid_argument("apply_multilinear: wrong number of arguments");
  if (n == 0) {
    throw std::invalid_argument("apply_multilinear: degree-0 form takes no arguments");
  }
  const SpaceExpr dom = args.front().dom();
  Index result_degree = 0;
  for (const auto& u : args) {
    if (!(u.dom() == dom) || !(u.cod() == g.dom()))
      throw std::invalid_argument("apply_multilinear: argument shape mismatch");
    result_degree += u.degree();
  }
  Monomial result(dom, g.cod(), result_degree);

  std::vector<std::vector<std::pair<Multiset, Vec>>> supports;
  supports.reserve(args.size());
  for (const auto& u : args)
    supports.emplace_back(u.coeffs().begin(), u.coeffs().end());
  for (const auto& s : supports)
    if (s.empty()) return result;

  std::map<Multiset, Vec> buckets;
  for (const auto& [n_set, gvec] : g.coeffs()) {
    // sum over distinct orderings w of n_set; ghat(e_{w_1},..,e_{w_n})
    // equals the stored coefficient by symmetry
    Multiset w = n_set;
    do {
      std::vector<size_t> choice(static_cast<size_t>(n), 0);
      while (true) {
        Scalar weight = 1;
        Multiset merged;
        for (Index i = 0; i < n && weight != 0; ++i) {
          const auto& [a_set, avec] = supports[static_cast<size_t>(i)][choice[static_cast<size_t>(i)]];
          const Scalar fc = avec[static_cast<size_t>(w[static_cast<size_t>(i)])];
          if (fc == 0) {
            weight = 0;
            break;
          }
          weight *= scalar_of(multiset_orderings(a_set)) * fc;
          merged.insert(merged.end(), a_set.begin(), a_set.end());
        }
        if (weight != 0) {
          std::sort(merged.begin(), merged.end());
          auto& dst = buckets[merged];
          if (dst.empty()) dst.assign(static_cast<size_t>(g.cod().dim()), Scalar(0));
          for (size_t j = 0; j < dst.size(); ++j) dst[j] += weight * gvec[j];
        }
        Index pos = n - 1;
        while (pos >= 0) {
          if (++choice[static_cast<size_t>(pos)] < supports[static_cast<size_t>(pos)].size()) break;
          choice[static_cast<size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    } while (std::next_permutation(w.begin(), w.end()));
  }

  for (auto& [m, vec] : buckets) {
    const Scalar norm = Scalar(1) / scalar_of(multiset_orderings(m));
    for (size_t j = 0; j < vec.size(); ++j) {
      const Scalar v = vec[j] * norm;
      if (v != 0) result.add_coeff(m, static_cast<Index>(j), v);
    }
  }
  return result;
}

Monomial postcompose(const LinMap& g, const Monomial& f) {
  if (!(f.cod() == g.dom))
    throw std::invalid_argument("postcompose: shape mismatch");
  Monomial r(f.dom(), g.cod, f.degree());
  for (const auto& [m, vec] : f.coeffs()) {
    const Vec img = g.apply(vec);
    for (size_t j = 0; j < img.size(); ++j)
      if (img[j] != 0) r.add_coeff(m, static_cast<Index>(j), img[j]);
  }
  return r;
}

}  // namespace weakll
