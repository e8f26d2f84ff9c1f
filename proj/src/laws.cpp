#include "weakll/laws.hpp"

#include <algorithm>
#include <functional>
#include <atomic>
#include <thread>
#include <sstream>

#include "weakll/dsl.hpp"
#include "weakll/nonunit.hpp"

namespace weakll {

namespace {

LawResult ok(std::string law, std::map<std::string, std::string> params) {
  return {std::move(law), std::move(params), "pass", ""};
}
LawResult bad(std::string law, std::map<std::string, std::string> params, std::string w) {
  return {std::move(law), std::move(params), "fail", std::move(w)};
}
LawResult skipped(std::string law, std::map<std::string, std::string> params) {
  return {std::move(law), std::move(params), "skipped", ""};
}

LawResult check(std::string law, std::map<std::string, std::string> params, bool cond,
                const std::string& witness_on_fail) {
  return cond ? ok(std::move(law), std::move(params))
              : bad(std::move(law), std::move(params), witness_on_fail);
}

std::string diff_witness(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return "shape mismatch";
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

LawResult matrices_equal(std::string law, std::map<std::string, std::string> params,
                         const Matrix& a, const Matrix& b) {
  const std::string w = diff_witness(a, b);
  return w.empty() ? ok(std::move(law), std::move(params))
                   : bad(std::move(law), std::move(params), w);
}

Monomial random_monomial(Rng& rng, const SpaceExpr& dom, const SpaceExpr& cod, Index degree) {
  Monomial m(dom, cod, degree);
  const Index count = multiset_count(dom.dim(), degree);
  for (Index r = 0; r < count; ++r) {
    const Multiset ms = multiset_unrank(dom.dim(), degree, r);
    for (Index j = 0; j < cod.dim(); ++j) {
      const Scalar v = rng.small_rational();
      if (v != 0) m.add_coeff(ms, j, v);
    }
  }
  return m;
}

MonomialSeq random_seq(Rng& rng, const SpaceExpr& dom, const SpaceExpr& cod, Index trunc) {
  MonomialSeq s(dom, cod, trunc);
  for (Index n = 0; n <= trunc; ++n)
    s.monomials[static_cast<size_t>(n)] = random_monomial(rng, dom, cod, n);
  return s;
}

NonUnitSeq random_nonunit_seq(Rng& rng, const SpaceExpr& dom, const SpaceExpr& cod,
                              Index trunc) {
  NonUnitSeq s(dom, cod, trunc);
  for (Index n = 1; n <= trunc; ++n) s.at_degree(n) = random_monomial(rng, dom, cod, n);
  return s;
}

/// Exact homogeneous parts of the pointwise composite q(x(lambda)) via a
/// Vandermonde solve: independent oracle for composition semantics.
std::vector<Vec> homogeneous_parts(const std::function<Vec(const Vec&)>& f, const Vec& x,
                                   Index max_degree, Index cod_dim) {
  const Index n = max_degree + 1;
  Matrix vand(n, n);
  std::vector<Vec> values;
  for (Index r = 0; r < n; ++r) {
    Scalar pw = 1;
    for (Index c = 0; c < n; ++c) {
      vand.at(r, c) = pw;
      pw *= Scalar(r + 1);
    }
    Vec xs = x;
    for (auto& e : xs) e *= Scalar(r + 1);
    values.push_back(f(xs));
  }
  const Matrix inv = *vand.inverse();
  std::vector<Vec> parts(static_cast<size_t>(n), Vec(static_cast<size_t>(cod_dim)));
  for (Index c = 0; c < n; ++c)
    for (Index j = 0; j < cod_dim; ++j) {
      Scalar acc = 0;
      for (Index r = 0; r < n; ++r) acc += inv.at(c, r) * values[static_cast<size_t>(r)][static_cast<size_t>(j)];
      parts[static_cast<size_t>(c)][static_cast<size_t>(j)] = acc;
    }
  return parts;
}

using LawFn = std::function<LawResult(Rng)>;

struct LawTask {
  std::string name;
  LawFn fn;
};

std::map<std::string, std::string> dim_params(Index dim, Index degree) {
  return {{"dim", std::to_string(dim)}, {"degree", std::to_string(degree)}};
}

void add_core_laws(std::vector<LawTask>& tasks) {
  tasks.push_back({"linalg/kernel_iff_span", [](Rng rng) {
                     for (int it = 0; it < 50; ++it) {
                       const Index n = rng.between(1, 3);
                       std::vector<Vec> ls;
                       for (Index i = 0; i < n; ++i) ls.push_back(rng.vector(4));
                       const Vec l = rng.vector(4);
                       const auto [a, b] = kernel_containment_iff_span(l, ls);
                       if (a != b)
                         return bad("linalg/kernel_iff_span", {{"instances", "50"}},
                                    "containment and span membership disagree");
                     }
                     return ok("linalg/kernel_iff_span", {{"instances", "50"}});
                   }});
  tasks.push_back({"linalg/membership_recombination", [](Rng rng) {
                     for (int it = 0; it < 30; ++it) {
                       const Index dim = rng.between(2, 5);
                       const Index n = rng.between(1, 4);
                       std::vector<Vec> gens;
                       for (Index i = 0; i < n; ++i) gens.push_back(rng.vector(dim));
                       Vec target(static_cast<size_t>(dim));
                       std::vector<Scalar> cs;
                       for (Index i = 0; i < n; ++i) {
                         cs.push_back(rng.small_rational());
                         for (Index j = 0; j < dim; ++j)
                           target[static_cast<size_t>(j)] +=
                               cs.back() * gens[static_cast<size_t>(i)][static_cast<size_t>(j)];
                       }
                       const auto sol = solve_membership(target, gens);
                       if (!sol)
                         return bad("linalg/membership_recombination", {},
                                    "constructed member reported outside span");
                       Vec re(static_cast<size_t>(dim));
                       for (Index i = 0; i < n; ++i)
                         for (Index j = 0; j < dim; ++j)
                           re[static_cast<size_t>(j)] +=
                               (*sol)[static_cast<size_t>(i)] *
                               gens[static_cast<size_t>(i)][static_cast<size_t>(j)];
                       if (re != target)
                         return bad("linalg/membership_recombination", {},
                                    "recombination differs from target");
                     }
                     return ok("linalg/membership_recombination", {{"instances", "30"}});
                   }});
  tasks.push_back({"linalg/scalar_field_axioms", [](Rng rng) {
                     for (int it = 0; it < 100; ++it) {
                       const Scalar a = rng.small_rational(), b = rng.small_rational(),
                                    c = rng.small_rational();
                       if ((a + b) * c != a * c + b * c || a * b != b * a ||
                           (a + b) + c != a + (b + c))
                         return bad("linalg/scalar_field_axioms", {}, "axiom violated");
                       if (b != 0 && (a / b) * b != a)
                         return bad("linalg/scalar_field_axioms", {}, "division not exact");
                     }
                     return ok("linalg/scalar_field_axioms", {{"instances", "100"}});
                   }});
  tasks.push_back({"duality/double_dual_identity", [](Rng rng) {
                     for (int it = 0; it < 20; ++it) {
                       const SpaceExpr s = random_space(rng, 12);
                       const LinMap ev = double_dual_ev(s);
                       if (!(ev.mat == Matrix::identity(s.dim())) || !ev.mat.inverse())
                         return bad("duality/double_dual_identity",
                                    {{"space", s.to_string()}}, "not the identity");
                     }
                     return ok("duality/double_dual_identity", {{"instances", "20"}});
                   }});
  tasks.push_back({"duality/transpose_involution", [](Rng rng) {
                     const SpaceExpr s = SpaceExpr::base(3), t = SpaceExpr::base(2);
                     for (int it = 0; it < 10; ++it) {
                       const LinMap f(s, t, rng.matrix(2, 3));
                       if (!(transpose(transpose(f)).mat == f.mat))
                         return bad("duality/transpose_involution", {}, "double transpose");
                     }
                     return ok("duality/transpose_involution", {{"instances", "10"}});
                   }});
  tasks.push_back({"monoidal/tensor_functorial", [](Rng rng) {
                     const SpaceExpr b2 = SpaceExpr::base(2);
                     for (int it = 0; it < 10; ++it) {
                       const LinMap f(b2, b2, rng.matrix(2, 2)), fp(b2, b2, rng.matrix(2, 2));
                       const LinMap g(b2, b2, rng.matrix(2, 2)), gp(b2, b2, rng.matrix(2, 2));
                       const LinMap lhs = tensor_map(compose(f, fp), compose(g, gp));
                       const LinMap rhs = compose(tensor_map(f, g), tensor_map(fp, gp));
                       if (!(lhs.mat == rhs.mat))
                         return bad("monoidal/tensor_functorial", {}, "interchange fails");
                     }
                     return ok("monoidal/tensor_functorial", {{"instances", "10"}});
                   }});
  tasks.push_back({"monoidal/pentagon", [](Rng) {
                     const SpaceExpr a = SpaceExpr::base(2), b = SpaceExpr::base(2),
                                     c = SpaceExpr::base(2), d = SpaceExpr::base(2);
                     // ((a b) c) d -> a (b (c d)) along both pentagon paths
                     const LinMap top =
                         compose(tensor_map(LinMap::identity(a), associator(b, c, d)),
                                 compose(associator(a, SpaceExpr::tensor(b, c), d),
                                         tensor_map(associator(a, b, c), LinMap::identity(d))));
                     const LinMap bottom = compose(associator(a, b, SpaceExpr::tensor(c, d)),
                                                   associator(SpaceExpr::tensor(a, b), c, d));
                     return matrices_equal("monoidal/pentagon", {{"dims", "2,2,2,2"}}, top.mat,
                                           bottom.mat);
                   }});
  tasks.push_back({"monoidal/hexagon", [](Rng) {
                     const SpaceExpr a = SpaceExpr::base(2), b = SpaceExpr::base(3),
                                     c = SpaceExpr::base(2);
                     const LinMap lhs =
                         compose(tensor_map(LinMap::identity(b), symmetry(a, c)),
                                 compose(associator(b, a, c),
                                         tensor_map(symmetry(a, b), LinMap::identity(c))));
                     const LinMap rhs = compose(associator(b, c, a),
                                                compose(symmetry(a, SpaceExpr::tensor(b, c)),
                                                        associator(a, b, c)));
                     return matrices_equal("monoidal/hexagon", {{"dims", "2,3,2"}}, lhs.mat,
                                           rhs.mat);
                   }});
  tasks.push_back({"monoidal/symmetry_involution", [](Rng) {
                     const SpaceExpr a = SpaceExpr::base(2), b = SpaceExpr::base(3);
                     const LinMap s2 = compose(symmetry(b, a), symmetry(a, b));
                     return matrices_equal("monoidal/symmetry_involution", {},
                                           s2.mat, Matrix::identity(6));
                   }});
  tasks.push_back({"monoidal/closure_roundtrip", [](Rng rng) {
                     for (int it = 0; it < 30; ++it) {
                       const Index ds = rng.between(1, 3), dt = rng.between(1, 3),
                                   du = rng.between(1, 3);
                       const SpaceExpr s = SpaceExpr::base(ds), t = SpaceExpr::base(dt),
                                       u = SpaceExpr::base(du);
                       const LinMap f(SpaceExpr::tensor(s, t), u, rng.matrix(du, ds * dt));
                       if (!(uncurry(curry(f)) == f))
                         return bad("monoidal/closure_roundtrip", {}, "uncurry(curry) != id");
                       const LinMap g(s, SpaceExpr::hom(t, u), rng.matrix(dt * du, ds));
                       if (!(curry(uncurry(g)) == g))
                         return bad("monoidal/closure_roundtrip", {}, "curry(uncurry) != id");
                     }
                     return ok("monoidal/closure_roundtrip", {{"instances", "30"}});
                   }});
  tasks.push_back({"monoidal/par_natural", [](Rng rng) {
                     const SpaceExpr a = SpaceExpr::base(2), b = SpaceExpr::base(3);
                     const LinMap f(a, a, rng.matrix(2, 2)), g(b, b, rng.matrix(3, 3));
                     const LinMap lhs = compose(par_to_tensor(a, b), par_map(f, g));
                     const LinMap rhs = compose(tensor_map(f, g), par_to_tensor(a, b));
                     return matrices_equal("monoidal/par_natural", {}, lhs.mat, rhs.mat);
                   }});
  tasks.push_back({"additive/proj_inj", [](Rng) {
                     const SpaceExpr s = SpaceExpr::base(2), t = SpaceExpr::base(3);
                     // products and coproducts coincide on the carrier here,
                     // so projections compose with injections blockwise
                     const Matrix pi1 = projection_left(s, t).mat * injection_left(s, t).mat;
                     const Matrix pi2 = projection_right(s, t).mat * injection_left(s, t).mat;
                     if (!(pi1 == Matrix::identity(2)) || !pi2.is_zero())
                       return bad("additive/proj_inj", {}, "block identities fail");
                     return ok("additive/proj_inj", {{"dims", "2,3"}});
                   }});
  tasks.push_back({"additive/dual_prod", [](Rng) {
                     const SpaceExpr s = SpaceExpr::base(2), t = SpaceExpr::base(3);
                     const LinMap iso = dual_of_prod(s, t);
                     const LinMap iso2 = dual_of_coprod(s, t);
                     // canonical pairings: the iso must send the dual basis of
                     // the product to the matching block dual basis
                     const Matrix expected = Matrix::identity(5);
                     if (!(iso.mat == expected) || !(iso2.mat == expected))
                       return bad("additive/dual_prod", {}, "not the block permutation");
                     if (!iso.mat.inverse() || !iso2.mat.inverse())
                       return bad("additive/dual_prod", {}, "not invertible");
                     return ok("additive/dual_prod", {{"dims", "2,3"}});
                   }});
  tasks.push_back({"fund_prop/hom_dual_reconstruction", [](Rng rng) {
                     for (int it = 0; it < 30; ++it) {
                       const Index ds = rng.between(1, 3), dt = rng.between(1, 3);
                       const SpaceExpr s = SpaceExpr::base(ds), t = SpaceExpr::base(dt);
                       const Vec phi = rng.vector(ds * dt);
                       const auto terms = hom_dual_decompose(s, t, phi);
                       if (static_cast<Index>(terms.size()) > ds * dt)
                         return bad("fund_prop/hom_dual_reconstruction", {}, "too many terms");
                       for (Index si = 0; si < ds; ++si)
                         for (Index ti = 0; ti < dt; ++ti) {
                           // phi(h_{(si,ti)}) vs sum_i l_i(h(x_i))
                           Scalar acc = 0;
                           for (const auto& [x, l] : terms)
                             acc += x[static_cast<size_t>(si)] * l[static_cast<size_t>(ti)];
                           if (acc != phi[static_cast<size_t>(si * dt + ti)])
                             return bad("fund_prop/hom_dual_reconstruction", {},
                                        "reconstruction differs on a basis map");
                         }
                     }
                     return ok("fund_prop/hom_dual_reconstruction", {{"instances", "30"}});
                   }});
  tasks.push_back({"star_autonomy/ev_invertible", [](Rng rng) {
                     for (int it = 0; it < 50; ++it) {
                       const SpaceExpr s = random_space(rng, 16);
                       if (!star_autonomy_check(s))
                         return bad("star_autonomy/ev_invertible", {{"space", s.to_string()}},
                                    "canonical map not invertible");
                     }
                     return ok("star_autonomy/ev_invertible", {{"instances", "50"}});
                   }});
  tasks.push_back({"polarization/roundtrip", [](Rng rng) {
                     for (int it = 0; it < 50; ++it) {
                       const Index d = rng.between(1, 2), n = rng.between(0, 4);
                       const SpaceExpr s = SpaceExpr::base(d), k = SpaceExpr::base(1);
                       const Monomial m = random_monomial(rng, s, k, n);
                       const Monomial back =
                           polarize([&](const Vec& x) { return m.eval(x); }, n, s, k);
                       if (!(back == m))
                         return bad("polarization/roundtrip", {}, "coefficients differ");
                     }
                     return ok("polarization/roundtrip", {{"instances", "50"}});
                   }});
  tasks.push_back({"polarization/worked_example", [](Rng) {
                     // f(x) = x^2 on K polarizes to fhat(x,y) = xy
                     const SpaceExpr k = SpaceExpr::base(1);
                     const Monomial m = polarize(
                         [](const Vec& x) { return Vec{x[0] * x[0]}; }, 2, k, k);
                     if (m.coeff(Multiset{0, 0}) != Vec{Scalar(1)})
                       return bad("polarization/worked_example", {}, "fhat(e,e) != 1");
                     Monomial two(k, k, 2);
                     two.add_coeff({0, 0}, 0, Scalar(1));
                     if (!(m == two)) return bad("polarization/worked_example", {}, "mismatch");
                     return ok("polarization/worked_example", {});
                   }});
  tasks.push_back({"monomial/compose_pointwise", [](Rng rng) {
                     const SpaceExpr e2 = SpaceExpr::base(2);
                     for (int it = 0; it < 5; ++it) {
                       const Monomial f = random_monomial(rng, e2, e2, 2);
                       const Monomial g = random_monomial(rng, e2, e2, 2);
                       const Monomial gf = compose_monomials(g, f);
                       for (int pt = 0; pt < 20; ++pt) {
                         const Vec x = rng.vector(2);
                         if (gf.eval(x) != g.eval(f.eval(x)))
                           return bad("monomial/compose_pointwise", {}, "pointwise mismatch");
                       }
                     }
                     return ok("monomial/compose_pointwise", {{"instances", "5x20"}});
                   }});
  tasks.push_back({"monomial/linearize_embed", [](Rng rng) {
                     const SpaceExpr e2 = SpaceExpr::base(2), k = SpaceExpr::base(1);
                     for (int it = 0; it < 10; ++it) {
                       const Index n = rng.between(0, 3);
                       const Monomial m = random_monomial(rng, e2, k, n);
                       const LinMap lin = linearize(m);
                       const Monomial embed = sym_power_embed(e2, n);
                       const Vec x = rng.vector(2);
                       if (lin.apply(embed.eval(x)) != m.eval(x))
                         return bad("monomial/linearize_embed", {}, "factorization fails");
                     }
                     return ok("monomial/linearize_embed", {{"instances", "10"}});
                   }});
}

void add_exponential_laws(std::vector<LawTask>& tasks, const LawSuiteConfig& cfg) {
  for (const Index dim : cfg.dims) {
    const SpaceExpr s = SpaceExpr::base(dim);
    const Index d = cfg.degree;
    tasks.push_back({"comonad/counit_left", [=](Rng) { return comonad_counit_left(s, d); }});
    tasks.push_back(
        {"comonad/counit_right", [=](Rng) { return comonad_counit_right(s, d); }});
    tasks.push_back({"comonad/coassociativity", [=](Rng) { return comonad_coassoc(s, d); }});
    tasks.push_back({"kleisli/roundtrip", [=](Rng rng) {
                       if (d < 1) return skipped("kleisli/roundtrip", dim_params(dim, d));
                       const SpaceExpr b = SpaceExpr::bang(s, d);
                       for (int it = 0; it < 10; ++it) {
                         const LinMap f(b, s, rng.matrix(s.dim(), b.dim()));
                         if (!(seq_to_kleisli(kleisli_to_seq(f)) == f))
                           return bad("kleisli/roundtrip", dim_params(dim, d), "not inverse");
                         const MonomialSeq q = random_seq(rng, s, s, d);
                         if (!(kleisli_to_seq(seq_to_kleisli(q)) == q))
                           return bad("kleisli/roundtrip", dim_params(dim, d), "not inverse");
                       }
                       return ok("kleisli/roundtrip", dim_params(dim, d));
                     }});
    tasks.push_back({"kleisli/correspondence", [=](Rng rng) {
                       if (d < 1)
                         return skipped("kleisli/correspondence", dim_params(dim, d));
                       const SpaceExpr b = SpaceExpr::bang(s, d);
                       for (int it = 0; it < 5; ++it) {
                         const LinMap f(b, s, rng.matrix(s.dim(), b.dim()));
                         const LinMap g(b, s, rng.matrix(s.dim(), b.dim()));
                         const LinMap comonad_route = compose(
                             g, compose(bang_map(f, d), comultiplication(s, d)));
                         const MonomialSeq divisor_route =
                             kleisli_compose(kleisli_to_seq(g), kleisli_to_seq(f));
                         if (!(kleisli_to_seq(comonad_route) == divisor_route))
                           return bad("kleisli/correspondence", dim_params(dim, d),
                                      "divisor composition differs from comonad composite");
                       }
                       return ok("kleisli/correspondence", dim_params(dim, d));
                     }});
  }
  tasks.push_back({"kleisli/identity", [=](Rng rng) {
                     // dereliction is the co-Kleisli identity; postcomposing
                     // it projects away the grade-0 constant (only 0 divides
                     // 0), so the left law is stated on grades >= 1
                     const Index d = std::max<Index>(cfg.degree, 1);
                     const SpaceExpr s = SpaceExpr::base(2);
                     const MonomialSeq der = MonomialSeq::dereliction(s, d);
                     const MonomialSeq g = random_seq(rng, s, s, d);
                     if (!(kleisli_compose(g, der) == g))
                       return bad("kleisli/identity", {}, "right identity fails");
                     const MonomialSeq left = kleisli_compose(der, g);
                     for (Index p = 1; p <= d; ++p)
                       if (!(left.monomials[static_cast<size_t>(p)] ==
                             g.monomials[static_cast<size_t>(p)]))
                         return bad("kleisli/identity", {},
                                    "left identity fails at grade " + std::to_string(p));
                     if (!left.monomials[0].is_zero())
                       return bad("kleisli/identity", {},
                                  "left composite has an unexpected constant");
                     return ok("kleisli/identity", {{"degree", std::to_string(d)}});
                   }});
  tasks.push_back({"kleisli/scalar_witness", [](Rng rng) {
                     // (g . f)_4 = b1 a4 + b2 a2^2 + b4 a1^4 on scalar sequences
                     const SpaceExpr k = SpaceExpr::base(1);
                     MonomialSeq f(k, k, 4), g(k, k, 4);
                     Vec a(5), b(5);
                     for (int n = 1; n <= 4; ++n) {
                       a[n] = rng.small_rational_nonzero();
                       b[n] = rng.small_rational_nonzero();
                       f.monomials[n].add_coeff(Multiset(n, 0), 0, a[n]);
                       g.monomials[n].add_coeff(Multiset(n, 0), 0, b[n]);
                     }
                     const MonomialSeq gf = kleisli_compose(g, f);
                     const Scalar expected =
                         b[1] * a[4] + b[2] * a[2] * a[2] + b[4] * a[1] * a[1] * a[1] * a[1];
                     const Vec got = gf.monomials[4].coeff(Multiset(4, 0));
                     if (got != Vec{expected})
                       return bad("kleisli/scalar_witness", {},
                                  "grade-4 coefficient " + scalar_to_string(got[0]) +
                                      " != " + scalar_to_string(expected));
                     return ok("kleisli/scalar_witness", {{"degree", "4"}});
                   }});
  tasks.push_back({"seely/inverse", [=](Rng) {
                     const Index d = std::min<Index>(cfg.degree, 2);
                     const SpaceExpr s = SpaceExpr::base(1), t = SpaceExpr::base(2);
                     const LinMap iso = seely_iso(s, t, d), inv = seely_inv(s, t, d);
                     const Matrix round = inv.mat * iso.mat;
                     if (!(round == Matrix::identity(iso.dom.dim())))
                       return bad("seely/inverse", {}, "inv . iso != id");
                     const Matrix proj = iso.mat * inv.mat;
                     if (!(proj * proj == proj))
                       return bad("seely/inverse", {}, "iso . inv not idempotent");
                     return ok("seely/inverse", {{"degree", std::to_string(d)}});
                   }});
  tasks.push_back({"seely/naturality", [=](Rng rng) {
                     const Index d = std::min<Index>(cfg.degree, 2);
                     const SpaceExpr s = SpaceExpr::base(1), t = SpaceExpr::base(2);
                     const LinMap f(s, s, rng.matrix(1, 1)), g(t, t, rng.matrix(2, 2));
                     const LinMap lhs = compose(
                         tensor_map(bang_map(f, d), bang_map(g, d)), seely_iso(s, t, d));
                     const LinMap rhs =
                         compose(seely_iso(s, t, d), bang_map(prod_pair(compose(f, projection_left(s, t)),
                                                                        compose(g, projection_right(s, t))),
                                                              d));
                     return matrices_equal("seely/naturality",
                                           {{"degree", std::to_string(d)}}, lhs.mat, rhs.mat);
                   }});
  tasks.push_back({"seely/contraction_consistency", [=](Rng) {
                     const Index d = std::min<Index>(cfg.degree, 3);
                     const SpaceExpr s = SpaceExpr::base(2);
                     const LinMap diag =
                         prod_pair(LinMap::identity(s), LinMap::identity(s));
                     const LinMap via_seely =
                         compose(seely_iso(s, s, d), bang_map(diag, d));
                     return matrices_equal("seely/contraction_consistency",
                                           {{"degree", std::to_string(d)}},
                                           contraction(s, d).mat, via_seely.mat);
                   }});
  tasks.push_back({"cartesian/curryseq_roundtrip", [=](Rng rng) {
                     const Index d = std::min<Index>(cfg.degree, 4);
                     if (d < 1) return skipped("cartesian/curryseq_roundtrip", {});
                     const SpaceExpr s = SpaceExpr::base(1), t = SpaceExpr::base(1);
                     const SpaceExpr p = SpaceExpr::prod(s, t);
                     for (int it = 0; it < 10; ++it) {
                       const MonomialSeq f = random_seq(rng, p, s, d);
                       if (!(uncurry_seq(curry_seq(f), s, t) == f))
                         return bad("cartesian/curryseq_roundtrip", {},
                                    "uncurry_seq(curry_seq) != id");
                     }
                     return ok("cartesian/curryseq_roundtrip",
                               {{"degree", std::to_string(d)}});
                   }});
  tasks.push_back({"cartesian/bilinear_component", [](Rng) {
                     // h((x,y)) = xy curries to the (1,1) component x |-> (y |-> xy)
                     const SpaceExpr s = SpaceExpr::base(1), t = SpaceExpr::base(1);
                     const SpaceExpr p = SpaceExpr::prod(s, t);
                     MonomialSeq f(p, s, 2);
                     f.monomials[2].add_coeff({0, 1}, 0, Scalar(1, 2));  // fhat((x,0),(0,y))
                     const MonomialSeq h = curry_seq(f);
                     // expected: degree-1 outer monomial, coefficient 1 at the
                     // grade-1 hom coordinate (evaluates to x * y)
                     const auto layout = bang_layout(SpaceExpr::bang(t, 2));
                     const Index hom_idx = layout.grade_offset(1) + 0;
                     const Vec c = h.monomials[1].coeff({0});
                     if (c[static_cast<size_t>(hom_idx)] != 1)
                       return bad("cartesian/bilinear_component", {},
                                  "got " + scalar_to_string(c[static_cast<size_t>(hom_idx)]));
                     return ok("cartesian/bilinear_component", {});
                   }});
  tasks.push_back({"exp_monoidal/mu_pairing", [=](Rng) {
                     const Index d = std::min<Index>(cfg.degree, 2);
                     if (d < 1) return skipped("exp_monoidal/mu_pairing", {});
                     const SpaceExpr s = SpaceExpr::base(1), t = SpaceExpr::base(2);
                     const LinMap mu = monoidal_mu(s, t, d);
                     const auto ls = bang_layout(SpaceExpr::bang(s, d));
                     const auto lt = bang_layout(SpaceExpr::bang(t, d));
                     const Index bt_dim = SpaceExpr::bang(t, d).dim();
                     // grade (1,1) basis e (x) f_0 maps to (e (x) f_0) at grade 1
                     const Index col = (ls.grade_offset(1) + 0) * bt_dim + lt.grade_offset(1);
                     const auto lst = bang_layout(SpaceExpr::bang(SpaceExpr::tensor(s, t), d));
                     if (mu.mat.at(lst.grade_offset(1) + 0, col) != 1)
                       return bad("exp_monoidal/mu_pairing", {}, "grade (1,1) image wrong");
                     if (d >= 2) {
                       // mixed grades vanish
                       const Index col_mixed =
                           (ls.grade_offset(1) + 0) * bt_dim + lt.grade_offset(2);
                       for (Index r = 0; r < mu.mat.rows(); ++r)
                         if (mu.mat.at(r, col_mixed) != 0)
                           return bad("exp_monoidal/mu_pairing", {}, "mixed grade nonzero");
                     }
                     return ok("exp_monoidal/mu_pairing", {{"degree", std::to_string(d)}});
                   }});
  tasks.push_back({"exp_monoidal/mu_eps_coherence", [=](Rng) {
                     const Index d = std::max<Index>(1, std::min<Index>(cfg.degree, 2));
                     const SpaceExpr s = SpaceExpr::base(1), t = SpaceExpr::base(1);
                     const LinMap lhs =
                         compose(counit(SpaceExpr::tensor(s, t), d), monoidal_mu(s, t, d));
                     const LinMap rhs = tensor_map(counit(s, d), counit(t, d));
                     return matrices_equal("exp_monoidal/mu_eps_coherence",
                                           {{"degree", std::to_string(d)}}, lhs.mat, rhs.mat);
                   }});
  tasks.push_back({"exp_monoidal/mu_delta_coherence", [=](Rng) {
                     const Index d = std::min<Index>(cfg.degree, 2);
                     const SpaceExpr s = SpaceExpr::base(1), t = SpaceExpr::base(1);
                     const SpaceExpr st = SpaceExpr::tensor(s, t);
                     const LinMap lhs =
                         compose(comultiplication(st, d), monoidal_mu(s, t, d));
                     const LinMap rhs = compose(
                         bang_map(monoidal_mu(s, t, d), d),
                         compose(monoidal_mu(SpaceExpr::bang(s, d), SpaceExpr::bang(t, d), d),
                                 tensor_map(comultiplication(s, d), comultiplication(t, d))));
                     return matrices_equal("exp_monoidal/mu_delta_coherence",
                                           {{"degree", std::to_string(d)}}, lhs.mat, rhs.mat);
                   }});
  tasks.push_back({"exp_monoidal/mu0_unit", [=](Rng) {
                     const Index d = cfg.degree;
                     const SpaceExpr one = SpaceExpr::base(1);
                     // mu . (mu0 (x) id) == bang of the unitor
                     const LinMap mu = monoidal_mu(one, one, d);
                     const LinMap lhs = compose(
                         mu, tensor_map(monoidal_mu0(d),
                                        LinMap::identity(SpaceExpr::bang(one, d))));
                     const SpaceExpr b1 = SpaceExpr::bang(one, d);
                     const LinMap pre(b1, SpaceExpr::tensor(one, b1),
                                      Matrix::identity(b1.dim()));
                     const LinMap unitor_bang = bang_map(
                         LinMap(one, SpaceExpr::tensor(one, one), Matrix::identity(1)), d);
                     return matrices_equal("exp_monoidal/mu0_unit",
                                           {{"degree", std::to_string(d)}},
                                           compose(lhs, pre).mat, unitor_bang.mat);
                   }});
  for (const Index dim : cfg.dims) {
    tasks.push_back({"differential/suite", [=](Rng) {
                       const SpaceExpr s = SpaceExpr::base(dim);
                       const auto results = differential_category_suite(s, s, cfg.degree);
                       for (const auto& r : results)
                         if (r.status == "fail")
                           return bad("differential/suite", dim_params(dim, cfg.degree),
                                      r.law + ": " + r.witness);
                       return ok("differential/suite", dim_params(dim, cfg.degree));
                     }});
  }
}

void add_nonunit_laws(std::vector<LawTask>& tasks, const LawSuiteConfig& cfg) {
  const Index d = std::max<Index>(cfg.degree, 1);
  tasks.push_back({"nonunit/substitution_oracle", [=](Rng rng) {
                     const SpaceExpr k = SpaceExpr::base(1);
                     for (int it = 0; it < 20; ++it) {
                       NonUnitSeq f(k, k, d), g(k, k, d);
                       std::vector<Scalar> a(static_cast<size_t>(d + 1)),
                           b(static_cast<size_t>(d + 1));
                       for (Index n = 1; n <= d; ++n) {
                         a[static_cast<size_t>(n)] = rng.small_rational();
                         b[static_cast<size_t>(n)] = rng.small_rational();
                         if (a[static_cast<size_t>(n)] != 0)
                           f.at_degree(n).add_coeff(Multiset(n, 0), 0, a[static_cast<size_t>(n)]);
                         if (b[static_cast<size_t>(n)] != 0)
                           g.at_degree(n).add_coeff(Multiset(n, 0), 0, b[static_cast<size_t>(n)]);
                       }
                       // truncated polynomial substitution, independently
                       std::vector<Scalar> comp(static_cast<size_t>(d + 1));
                       std::vector<Scalar> pw(static_cast<size_t>(d + 1));
                       pw[0] = 1;  // f^0
                       for (Index n = 1; n <= d; ++n) {
                         // pw <- pw * f truncated
                         std::vector<Scalar> nxt(static_cast<size_t>(d + 1));
                         for (Index i = 0; i <= d; ++i)
                           for (Index j = 1; i + j <= d; ++j)
                             nxt[static_cast<size_t>(i + j)] +=
                                 pw[static_cast<size_t>(i)] * a[static_cast<size_t>(j)];
                         pw = nxt;
                         for (Index p = 0; p <= d; ++p)
                           comp[static_cast<size_t>(p)] +=
                               b[static_cast<size_t>(n)] * pw[static_cast<size_t>(p)];
                       }
                       const NonUnitSeq gf = substitute_compose(g, f);
                       for (Index p = 1; p <= d; ++p) {
                         const Vec c = gf.at_degree(p).coeff(Multiset(p, 0));
                         if (c[0] != comp[static_cast<size_t>(p)])
                           return bad("nonunit/substitution_oracle", {},
                                      "degree " + std::to_string(p) + ": " +
                                          scalar_to_string(c[0]) + " vs " +
                                          scalar_to_string(comp[static_cast<size_t>(p)]));
                       }
                     }
                     return ok("nonunit/substitution_oracle",
                               {{"degree", std::to_string(d)}, {"instances", "20"}});
                   }});
  tasks.push_back({"nonunit/identity", [=](Rng rng) {
                     const SpaceExpr s = SpaceExpr::base(2);
                     const NonUnitSeq idk = NonUnitSeq::identity_seq(s, d);
                     const NonUnitSeq g = random_nonunit_seq(rng, s, s, d);
                     if (!(substitute_compose(g, idk) == g) ||
                         !(substitute_compose(idk, g) == g))
                       return bad("nonunit/identity", {}, "identity law fails");
                     return ok("nonunit/identity", {{"degree", std::to_string(d)}});
                   }});
  tasks.push_back({"nonunit/associativity", [=](Rng rng) {
                     const SpaceExpr k = SpaceExpr::base(1);
                     for (int it = 0; it < 5; ++it) {
                       const NonUnitSeq f = random_nonunit_seq(rng, k, k, d);
                       const NonUnitSeq g = random_nonunit_seq(rng, k, k, d);
                       const NonUnitSeq h = random_nonunit_seq(rng, k, k, d);
                       if (!(substitute_compose(substitute_compose(h, g), f) ==
                             substitute_compose(h, substitute_compose(g, f))))
                         return bad("nonunit/associativity", {}, "association orders differ");
                     }
                     return ok("nonunit/associativity", {{"degree", std::to_string(d)}});
                   }});
  tasks.push_back({"nonunit/pointwise_agreement", [=](Rng rng) {
                     const SpaceExpr s = SpaceExpr::base(2);
                     const NonUnitSeq f = random_nonunit_seq(rng, s, s, std::min<Index>(d, 3));
                     const NonUnitSeq g = random_nonunit_seq(rng, s, s, std::min<Index>(d, 3));
                     const Index dd = std::min<Index>(d, 3);
                     const NonUnitSeq gf = substitute_compose(g, f);
                     for (int pt = 0; pt < 5; ++pt) {
                       const Vec x = rng.vector(2);
                       const auto parts = homogeneous_parts(
                           [&](const Vec& y) { return g.eval(f.eval(y)); }, x, dd * dd, 2);
                       for (Index p = 1; p <= dd; ++p) {
                         Vec mine = gf.at_degree(p).eval(x);
                         if (mine != parts[static_cast<size_t>(p)])
                           return bad("nonunit/pointwise_agreement", {},
                                      "degree " + std::to_string(p) + " differs");
                       }
                     }
                     return ok("nonunit/pointwise_agreement",
                               {{"degree", std::to_string(std::min<Index>(d, 3))}});
                   }});
  for (const Index dim : cfg.dims) {
    const SpaceExpr s = SpaceExpr::base(dim);
    tasks.push_back({"nonunit/counit_left", [=](Rng) {
                       if (cfg.degree < 1)
                         return skipped("nonunit/counit_left", dim_params(dim, cfg.degree));
                       return nonunit_counit_left(s, cfg.degree);
                     }});
    tasks.push_back({"nonunit/counit_right", [=](Rng) {
                       if (cfg.degree < 1)
                         return skipped("nonunit/counit_right", dim_params(dim, cfg.degree));
                       return nonunit_counit_right(s, cfg.degree);
                     }});
    tasks.push_back({"nonunit/coassociativity", [=](Rng) {
                       if (cfg.degree < 1)
                         return skipped("nonunit/coassociativity",
                                        dim_params(dim, cfg.degree));
                       return nonunit_coassoc(s, cfg.degree);
                     }});
  }
  tasks.push_back({"nonunit/seely_inverse", [=](Rng) {
                     const Index dd = std::max<Index>(1, std::min<Index>(cfg.degree, 2));
                     const SpaceExpr s = SpaceExpr::base(1), t = SpaceExpr::base(1);
                     const LinMap iso = nonunit_seely(s, t, dd);
                     const LinMap inv = nonunit_seely_inv(s, t, dd);
                     const Matrix round = inv.mat * iso.mat;
                     if (!(round == Matrix::identity(iso.dom.dim())))
                       return bad("nonunit/seely_inverse", {}, "inv . iso != id");
                     const Matrix proj = iso.mat * inv.mat;
                     if (!(proj * proj == proj))
                       return bad("nonunit/seely_inverse", {}, "iso . inv not idempotent");
                     return ok("nonunit/seely_inverse", {{"degree", std::to_string(dd)}});
                   }});
}

void add_distinctness_laws(std::vector<LawTask>& tasks) {
  tasks.push_back({"distinctness/divisor_not_pointwise", [](Rng) {
                     // f = (0, x, x^2), g = (0, 0, x^2): pointwise composition
                     // has the degree-3 term 2x^3; divisor composition's
                     // degree-3 component is zero.
                     const SpaceExpr k = SpaceExpr::base(1);
                     MonomialSeq f(k, k, 3), g(k, k, 3);
                     f.monomials[1].add_coeff({0}, 0, Scalar(1));
                     f.monomials[2].add_coeff({0, 0}, 0, Scalar(1));
                     g.monomials[2].add_coeff({0, 0}, 0, Scalar(1));
                     const MonomialSeq gf = kleisli_compose(g, f);
                     if (!gf.monomials[3].is_zero())
                       return bad("distinctness/divisor_not_pointwise", {},
                                  "divisor grade 3 unexpectedly nonzero");
                     const Vec x{Scalar(1)};
                     const auto parts = homogeneous_parts(
                         [&](const Vec& y) { return g.eval(f.eval(y)); }, x, 4, 1);
                     if (parts[3] != Vec{Scalar(2)})
                       return bad("distinctness/divisor_not_pointwise", {},
                                  "pointwise degree-3 part is not 2x^3");
                     return ok("distinctness/divisor_not_pointwise", {});
                   }});
  tasks.push_back({"distinctness/nonunit_is_pointwise", [](Rng) {
                     const SpaceExpr k = SpaceExpr::base(1);
                     NonUnitSeq f(k, k, 3), g(k, k, 3);
                     f.at_degree(1).add_coeff({0}, 0, Scalar(1));
                     f.at_degree(2).add_coeff({0, 0}, 0, Scalar(1));
                     g.at_degree(2).add_coeff({0, 0}, 0, Scalar(1));
                     const NonUnitSeq gf = substitute_compose(g, f);
                     const Vec x{Scalar(1)};
                     const auto parts = homogeneous_parts(
                         [&](const Vec& y) { return g.eval(f.eval(y)); }, x, 4, 1);
                     for (Index p = 1; p <= 3; ++p)
                       if (gf.at_degree(p).eval(x) != parts[static_cast<size_t>(p)])
                         return bad("distinctness/nonunit_is_pointwise", {},
                                    "degree " + std::to_string(p) + " differs");
                     return ok("distinctness/nonunit_is_pointwise", {});
                   }});
}

void add_polarity_law(std::vector<LawTask>& tasks) {
  tasks.push_back({"polarity/classification", [](Rng) {
                     struct Case {
                       const char* formula;
                       dsl::Polarity pol;
                       bool root_requires;  // root node in the shift set
                       bool shift_free;     // whole set empty
                     };
                     using dsl::Polarity;
                     const Case cases[] = {
                         {"~X", Polarity::Negative, false, true},
                         {"~X | ~Y", Polarity::Negative, false, true},
                         {"~X & ~Y", Polarity::Negative, false, true},
                         {"?~X", Polarity::Negative, false, true},
                         {"down(X)", Polarity::Negative, false, true},
                         {"?(~X | ~Y)", Polarity::Negative, false, true},
                         {"down(X) | ~Y", Polarity::Negative, false, true},
                         {"~(X * Y)", Polarity::Negative, false, true},
                         {"~!X", Polarity::Negative, false, true},
                         {"down(X + Y)", Polarity::Negative, false, true},
                         {"X", Polarity::Positive, true, false},
                         {"X * Y", Polarity::Positive, true, false},
                         {"X + Y", Polarity::Positive, false, false},
                         {"!X", Polarity::Positive, true, false},
                         {"up(~X)", Polarity::Positive, true, false},
                         {"!(X * Y)", Polarity::Positive, true, false},
                         {"(X * Y) + (X * Y)", Polarity::Positive, false, false},
                         {"X * (Y + Y)", Polarity::Positive, true, false},
                         {"!(X + Y)", Polarity::Positive, true, false},
                         {"X + (Y * Y)", Polarity::Positive, false, false},
                     };
                     for (const auto& c : cases) {
                       const std::string src = std::string("space X = base 1; space Y = base 1; formula F = ") +
                                               c.formula + ";";
                       const auto tp = dsl::typecheck(dsl::parse(src));
                       const auto& info = tp.formulas.at(0).second;
                       if (info.polarity != c.pol)
                         return bad("polarity/classification", {{"formula", c.formula}},
                                    "polarity differs");
                       bool root_in = false;
                       for (const auto& need : info.shifts_required)
                         if (need.path == "root") root_in = true;
                       if (root_in != c.root_requires)
                         return bad("polarity/classification", {{"formula", c.formula}},
                                    "root shift requirement differs");
                       if (c.shift_free != info.shifts_required.empty())
                         return bad("polarity/classification", {{"formula", c.formula}},
                                    "shift set emptiness differs");
                     }
                     return ok("polarity/classification", {{"corpus", "20"}});
                   }});
}

}  // namespace

SpaceExpr random_space(Rng& rng, Index max_dim, Index depth) {
  if (max_dim < 1) max_dim = 1;
  const Index kind = (depth >= 3) ? 0 : rng.between(0, 8);
  switch (kind) {
    default:
    case 0:
      return SpaceExpr::base(rng.between(1, std::min<Index>(4, max_dim)));
    case 1:
      return SpaceExpr::dual(random_space(rng, max_dim, depth + 1));
    case 2:
    case 3: {
      const SpaceExpr a = random_space(rng, std::max<Index>(1, max_dim / 2), depth + 1);
      const SpaceExpr b =
          random_space(rng, std::max<Index>(1, max_dim / std::max<Index>(1, a.dim())),
                       depth + 1);
      return kind == 2 ? SpaceExpr::tensor(a, b) : SpaceExpr::par(a, b);
    }
    case 4:
    case 5: {
      const SpaceExpr a = random_space(rng, std::max<Index>(1, max_dim - 1), depth + 1);
      const SpaceExpr b =
          random_space(rng, std::max<Index>(1, max_dim - a.dim()), depth + 1);
      return kind == 4 ? SpaceExpr::prod(a, b) : SpaceExpr::coprod(a, b);
    }
    case 6: {
      const SpaceExpr a = random_space(rng, std::max<Index>(1, max_dim / 2), depth + 1);
      const SpaceExpr b =
          random_space(rng, std::max<Index>(1, max_dim / std::max<Index>(1, a.dim())),
                       depth + 1);
      return SpaceExpr::hom(a, b);
    }
    case 7: {
      const SpaceExpr a = random_space(rng, std::min<Index>(3, max_dim), depth + 1);
      const Index n = rng.between(0, 2);
      const SpaceExpr sp = SpaceExpr::sympow(a, n);
      return sp.dim() <= max_dim ? sp : a;
    }
    case 8: {
      const SpaceExpr a = random_space(rng, 2, depth + 1);
      const Index d = rng.between(0, 2);
      const SpaceExpr bg = SpaceExpr::bang(a, d);
      return bg.dim() <= max_dim ? bg : a;
    }
  }
}

LawReport run_law_suite(const LawSuiteConfig& config) {
  for (Index d : config.dims)
    if (d < 1) throw std::invalid_argument("law suite: base dimensions must be >= 1");
  if (config.degree < 0) throw std::invalid_argument("law suite: degree must be >= 0");

  std::vector<LawTask> tasks;
  add_core_laws(tasks);
  add_exponential_laws(tasks, config);
  add_nonunit_laws(tasks, config);
  add_distinctness_laws(tasks);
  add_polarity_law(tasks);

  std::vector<size_t> selected;
  for (size_t i = 0; i < tasks.size(); ++i)
    if (config.filter.empty() || tasks[i].name.find(config.filter) != std::string::npos)
      selected.push_back(i);

  // Laws are independent and pure; a small worker pool evaluates them on
  // forked random streams and the report is assembled in canonical order,
  // so scheduling cannot affect the output bytes.
  const Rng base(config.seed);
  std::vector<LawResult> results(selected.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      const size_t k = next.fetch_add(1);
      if (k >= selected.size()) break;
      const size_t i = selected[k];
      try {
        results[k] = tasks[i].fn(base.fork(static_cast<std::uint64_t>(i)));
      } catch (const std::exception& e) {
        results[k] = LawResult{tasks[i].name, {}, "fail", std::string("exception: ") + e.what()};
      }
    }
  };
  const size_t pool = std::min<size_t>(
      selected.size(), std::max<size_t>(1, std::thread::hardware_concurrency()));
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (size_t w = 0; w < pool; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  LawReport report;
  report.config = config;
  report.all_pass = true;
  for (auto& r : results) {
    if (r.status == "fail") report.all_pass = false;
    report.results.push_back(std::move(r));
  }
  return report;
}

Json law_report_to_json(const LawReport& report) {
  Json j;
  j["seed"] = report.config.seed;
  j["dims"] = report.config.dims;
  j["degree"] = report.config.degree;
  j["filter"] = report.config.filter;
  j["laws"] = law_results_to_json(report.results);
  j["all_pass"] = report.all_pass;
  return j;
}

}  // namespace weakll
