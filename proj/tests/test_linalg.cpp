#include <doctest.h>

#include "weakll/matrix.hpp"
#include "weakll/rng.hpp"
#include "weakll/scalar.hpp"

using namespace weakll;

TEST_CASE("scalar parsing and formatting") {
  CHECK(scalar_to_string(scalar_from_string("3/6")) == "1/2");
  CHECK(scalar_to_string(scalar_from_string("-4/2")) == "-2");
  CHECK(scalar_to_string(scalar_from_string("7")) == "7");
  CHECK(scalar_to_string(Scalar(5, 1)) == "5");
  CHECK_THROWS_AS(scalar_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(scalar_from_string("abc"), std::invalid_argument);
}

TEST_CASE("scalar arithmetic is exact and division by zero throws") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Scalar a = rng.small_rational(), b = rng.small_rational(), c = rng.small_rational();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    if (c != 0) CHECK((a / c) * c == a);
  }
  CHECK_THROWS(Scalar(1) / Scalar(0));
}

TEST_CASE("solve_membership on the standard basis") {
  const auto sol = solve_membership({Scalar(2), Scalar(2)},
                                    {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}});
  REQUIRE(sol.has_value());
  CHECK(*sol == Vec{Scalar(2), Scalar(2)});
}

TEST_CASE("solve_membership detects the orthogonal complement case") {
  CHECK_FALSE(solve_membership({Scalar(1), Scalar(0)}, {{Scalar(0), Scalar(1)}}).has_value());
}

TEST_CASE("solve_membership recombines (3,5,7) over two generators") {
  const Vec target{Scalar(3), Scalar(5), Scalar(7)};
  const std::vector<Vec> gens{{Scalar(1), Scalar(1), Scalar(1)},
                              {Scalar(0), Scalar(1), Scalar(2)}};
  const auto sol = solve_membership(target, gens);
  REQUIRE(sol.has_value());
  CHECK(*sol == Vec{Scalar(3), Scalar(2)});
  Vec re(3);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 3; ++j) re[j] += (*sol)[i] * gens[i][j];
  CHECK(re == target);
}

TEST_CASE("solve_membership rejects mismatched dimensions") {
  CHECK_THROWS_AS(solve_membership({Scalar(1)}, {{Scalar(1), Scalar(2)}}),
                  std::invalid_argument);
}

TEST_CASE("kernel of the identity is trivial") {
  CHECK(kernel_basis(Matrix::identity(2)).empty());
}

TEST_CASE("kernel of a rank-1 functional") {
  Matrix m(1, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 1;
  const auto basis = kernel_basis(m);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0][0] * Scalar(-1) == basis[0][1]);  // (1,-1) up to scaling
  CHECK(basis[0][0] != 0);
}

TEST_CASE("kernel vectors of random low-rank matrices are annihilated") {
  Rng rng(5);
  for (int it = 0; it < 10; ++it) {
    const Matrix m = rng.matrix(3, 2) * rng.matrix(2, 5);  // rank <= 2
    const auto basis = kernel_basis(m);
    CHECK(basis.size() == static_cast<size_t>(5 - m.rank()));
    for (const auto& v : basis)
      for (const auto& e : m.apply(v)) CHECK(e == 0);
  }
}

TEST_CASE("kernel containment iff span membership, worked cases") {
  {
    const auto [a, b] = kernel_containment_iff_span(
        {Scalar(1), Scalar(1)}, {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}});
    CHECK(a);
    CHECK(b);
  }
  {
    const auto [a, b] =
        kernel_containment_iff_span({Scalar(1), Scalar(0)}, {{Scalar(0), Scalar(1)}});
    CHECK_FALSE(a);
    CHECK_FALSE(b);
  }
}

TEST_CASE("kernel containment iff span membership on random functionals") {
  Rng rng(7);
  for (int it = 0; it < 50; ++it) {
    const Index n = rng.between(1, 3);
    std::vector<Vec> ls;
    for (Index i = 0; i < n; ++i) ls.push_back(rng.vector(4));
    const auto [a, b] = kernel_containment_iff_span(rng.vector(4), ls);
    CHECK(a == b);
  }
}

TEST_CASE("matrix inverse round trip") {
  Rng rng(3);
  for (int it = 0; it < 10; ++it) {
    Matrix m = rng.matrix(4, 4);
    const auto inv = m.inverse();
    if (!inv) continue;
    CHECK(*inv * m == Matrix::identity(4));
    CHECK(m * *inv == Matrix::identity(4));
  }
  Matrix singular(2, 2);
  singular.at(0, 0) = 1;
  singular.at(1, 0) = 1;
  CHECK_FALSE(singular.inverse().has_value());
}

TEST_CASE("kron dimensions and block structure") {
  Matrix a(2, 2), b(1, 3);
  a.at(0, 0) = 2;
  a.at(1, 1) = 3;
  b.at(0, 2) = 5;
  const Matrix k = Matrix::kron(a, b);
  CHECK(k.rows() == 2);
  CHECK(k.cols() == 6);
  CHECK(k.at(0, 2) == 10);
  CHECK(k.at(1, 5) == 15);
}

TEST_CASE("multiset rank and unrank are inverse") {
  Rng rng(9);
  for (int it = 0; it < 50; ++it) {
    const Index d = rng.between(1, 6), n = rng.between(0, 4);
    const Index count = multiset_count(d, n);
    const Index r = rng.between(0, count - 1);
    const Multiset m = multiset_unrank(d, n, r);
    CHECK(multiset_rank(d, m) == r);
    CHECK(std::is_sorted(m.begin(), m.end()));
  }
  CHECK(multiset_count(2, 3) == 4);  // stars and bars
}
