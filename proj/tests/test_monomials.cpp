#include <doctest.h>

#include "weakll/json_io.hpp"
#include "weakll/monomial.hpp"
#include "weakll/rng.hpp"

using namespace weakll;

namespace {

const SpaceExpr k1 = SpaceExpr::base(1);
const SpaceExpr e2 = SpaceExpr::base(2);

Monomial random_monomial(Rng& rng, const SpaceExpr& dom, const SpaceExpr& cod, Index n) {
  Monomial m(dom, cod, n);
  for (Index r = 0; r < multiset_count(dom.dim(), n); ++r) {
    const Multiset ms = multiset_unrank(dom.dim(), n, r);
    for (Index j = 0; j < cod.dim(); ++j) {
      const Scalar v = rng.small_rational();
      if (v != 0) m.add_coeff(ms, j, v);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("polarizing x^2 yields the product form xy") {
  const Monomial m = polarize([](const Vec& x) { return Vec{x[0] * x[0]}; }, 2, k1, k1);
  CHECK(m.coeff({0, 0}) == Vec{Scalar(1)});
  CHECK(m.eval({Scalar(3)}) == Vec{Scalar(9)});
}

TEST_CASE("polarizing x1*x2 yields the symmetrized coefficients") {
  const Monomial m =
      polarize([](const Vec& x) { return Vec{x[0] * x[1]}; }, 2, e2, k1);
  // fhat((a1,a2),(b1,b2)) = (a1 b2 + a2 b1)/2, so fhat(e0,e1) = 1/2
  CHECK(m.coeff({0, 1}) == Vec{Scalar(1, 2)});
  CHECK(m.coeff({0, 0}) == Vec{Scalar(0)});
  CHECK(m.coeff({1, 1}) == Vec{Scalar(0)});
}

TEST_CASE("degree-1 polarization is the map itself") {
  Rng rng(31);
  const Matrix a = rng.matrix(2, 2);
  const Monomial m =
      polarize([&](const Vec& x) { return a.apply(x); }, 1, e2, e2);
  CHECK(m == Monomial::from_linmap(LinMap(e2, e2, a)));
}

TEST_CASE("polarize rejects an inhomogeneous oracle") {
  CHECK_THROWS_AS(
      polarize([](const Vec& x) { return Vec{x[0] * x[0] + Scalar(1)}; }, 2, k1, k1),
      std::invalid_argument);
}

TEST_CASE("polarize of eval recovers every stored monomial") {
  Rng rng(37);
  for (int it = 0; it < 30; ++it) {
    const Index n = rng.between(0, 4);
    const Monomial m = random_monomial(rng, e2, e2, n);
    CHECK(polarize([&](const Vec& x) { return m.eval(x); }, n, e2, e2) == m);
  }
}

TEST_CASE("degree-0 monomials are constants") {
  const Monomial c = Monomial::constant(e2, e2, {Scalar(3), Scalar(-1)});
  CHECK(c.eval({Scalar(7), Scalar(9)}) == Vec{Scalar(3), Scalar(-1)});
  CHECK(c.eval(Vec(2)) == Vec{Scalar(3), Scalar(-1)});
}

TEST_CASE("evaluation is homogeneous of the monomial's degree") {
  Rng rng(41);
  const Monomial m = random_monomial(rng, e2, e2, 3);
  for (int it = 0; it < 5; ++it) {
    const Vec x = rng.vector(2);
    const Scalar lambda = rng.small_rational_nonzero();
    Vec lx = x;
    for (auto& e : lx) e *= lambda;
    Vec expect = m.eval(x);
    for (auto& e : expect) e *= lambda * lambda * lambda;
    CHECK(m.eval(lx) == expect);
  }
}

TEST_CASE("linearize of a degree-1 monomial is its own matrix") {
  Rng rng(43);
  const Matrix a = rng.matrix(2, 2);
  const LinMap lin = linearize(Monomial::from_linmap(LinMap(e2, e2, a)));
  CHECK(lin.mat == a);
  CHECK(lin.dom == SpaceExpr::sympow(e2, 1));
}

TEST_CASE("linearize of x^2 on K is the 1x1 unit matrix") {
  Monomial m(k1, k1, 2);
  m.add_coeff({0, 0}, 0, Scalar(1));
  const LinMap lin = linearize(m);
  CHECK(lin.mat.rows() == 1);
  CHECK(lin.mat.cols() == 1);
  CHECK(lin.mat.at(0, 0) == 1);
}

TEST_CASE("linearize factors evaluation through the symmetric power embedding") {
  Rng rng(47);
  for (int it = 0; it < 10; ++it) {
    const Monomial m = random_monomial(rng, e2, k1, 2);
    const LinMap lin = linearize(m);
    const Monomial embed = sym_power_embed(e2, 2);
    const Vec x = rng.vector(2);
    CHECK(lin.apply(embed.eval(x)) == m.eval(x));
  }
}

TEST_CASE("symmetric power embedding carries multiplicities") {
  // dim 2, n = 2, x = (1,1): coefficients (1,2,1) on {e0e0, e0e1, e1e1}
  const Monomial embed = sym_power_embed(e2, 2);
  CHECK(embed.eval({Scalar(1), Scalar(1)}) == Vec{Scalar(1), Scalar(2), Scalar(1)});
  // n = 1 is the identity, n = 0 the constant 1
  CHECK(sym_power_embed(e2, 1).eval({Scalar(4), Scalar(5)}) == Vec{Scalar(4), Scalar(5)});
  CHECK(sym_power_embed(e2, 0).eval({Scalar(4), Scalar(5)}) == Vec{Scalar(1)});
}

TEST_CASE("composing x^2 after x^3 gives x^6") {
  Monomial g(k1, k1, 2), f(k1, k1, 3);
  g.add_coeff({0, 0}, 0, Scalar(1));
  f.add_coeff({0, 0, 0}, 0, Scalar(1));
  const Monomial gf = compose_monomials(g, f);
  CHECK(gf.degree() == 6);
  CHECK(gf.coeff(Multiset(6, 0)) == Vec{Scalar(1)});
  CHECK(gf.eval({Scalar(2)}) == Vec{Scalar(64)});
}

TEST_CASE("composing with a linear outer map is postcomposition") {
  Rng rng(53);
  const Monomial f = random_monomial(rng, e2, e2, 2);
  const LinMap g(e2, e2, rng.matrix(2, 2));
  CHECK(compose_monomials(Monomial::from_linmap(g), f) == postcompose(g, f));
}

TEST_CASE("monomial composition agrees with pointwise evaluation") {
  Rng rng(59);
  for (int it = 0; it < 3; ++it) {
    const Monomial f = random_monomial(rng, e2, e2, 2);
    const Monomial g = random_monomial(rng, e2, e2, 2);
    const Monomial gf = compose_monomials(g, f);
    CHECK(gf.degree() == 4);
    for (int pt = 0; pt < 20; ++pt) {
      const Vec x = rng.vector(2);
      CHECK(gf.eval(x) == g.eval(f.eval(x)));
    }
  }
}

TEST_CASE("monomial vector-space structure") {
  Rng rng(61);
  const Monomial m1 = random_monomial(rng, e2, e2, 2);
  const Monomial m2 = random_monomial(rng, e2, e2, 2);
  CHECK(Monomial::zero(e2, e2, 2) + m1 == m1);
  const Vec x = rng.vector(2);
  Vec sum = m1.eval(x);
  const Vec t = m2.eval(x);
  for (size_t i = 0; i < sum.size(); ++i) sum[i] += t[i];
  CHECK((m1 + m2).eval(x) == sum);
  Monomial sq(k1, k1, 2);
  sq.add_coeff({0, 0}, 0, Scalar(1));
  CHECK(sq.scaled(Scalar(2)).eval({Scalar(3)}) == Vec{Scalar(18)});
  CHECK_THROWS_AS(m1 + random_monomial(rng, e2, e2, 3), std::invalid_argument);
}

TEST_CASE("apply_multilinear expands the polarized form over argument tuples") {
  // ghat(u,v) = uv applied to (f1, f2) with f1 = x, f2 = x^2 gives x^3
  Monomial g(k1, k1, 2);
  g.add_coeff({0, 0}, 0, Scalar(1));
  Monomial f1(k1, k1, 1), f2(k1, k1, 2);
  f1.add_coeff({0}, 0, Scalar(1));
  f2.add_coeff({0, 0}, 0, Scalar(1));
  const Monomial r = apply_multilinear(g, {f1, f2});
  CHECK(r.degree() == 3);
  CHECK(r.eval({Scalar(2)}) == Vec{Scalar(8)});
}

TEST_CASE("monomial JSON round trip") {
  Rng rng(67);
  const Monomial m = random_monomial(rng, e2, e2, 3);
  const Json j = monomial_to_json(m);
  CHECK(monomial_from_json(j, e2, e2, 3) == m);
}
