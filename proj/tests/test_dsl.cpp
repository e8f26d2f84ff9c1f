#include <doctest.h>

#include "weakll/dsl.hpp"
#include "weakll/exponential.hpp"
#include "weakll/rng.hpp"

using namespace weakll;
namespace d = weakll::dsl;

TEST_CASE("parsing space declarations") {
  const auto p = d::parse("space E = base 2;");
  REQUIRE(p.statements.size() == 1);
  const auto& decl = std::get<d::SpaceDecl>(p.statements[0]);
  CHECK(decl.name == "E");
  CHECK(decl.expr->k == d::SpaceAst::K::Base);
  CHECK(decl.expr->param == 2);
}

TEST_CASE("parsing a bracketed combinator") {
  const auto p = d::parse("space E = base 2;\nlet dd = coder[E, 3];");
  const auto& decl = std::get<d::LetDecl>(p.statements[1]);
  CHECK(decl.expr->kind == d::MorphKind::Coder);
  CHECK(decl.expr->degree == 3);
  REQUIRE(decl.expr->spaces.size() == 1);
  CHECK(decl.expr->spaces[0]->name == "E");
}

TEST_CASE("syntax errors carry positions") {
  try {
    d::parse("let = ;");
    FAIL("expected a parse error");
  } catch (const d::DslError& e) {
    CHECK(e.pos.line == 1);
    CHECK(e.pos.col == 5);
  }
  CHECK_THROWS_AS(d::parse("space E = base 2"), d::DslError);  // missing ';'
  CHECK_THROWS_AS(d::parse("frobnicate x;"), d::DslError);
}

TEST_CASE("pretty-printed programs reparse to the same tree") {
  const char* src =
      "space E = base 2;\n"
      "space F = prod(E, dual(base 1));\n"
      "let a = compose(counit[E, 3], coder[E, 3]);\n"
      "let m = matrix[E -> E]{{1, 1/2}, {0, -3}};\n"
      "let s = seq[E -> E, 2]{0: {[-> 0] = 2}, 2: {[0, 1 -> 1] = 5/7}};\n"
      "let t = tensor(transpose(a), curry(uncurry(id[hom(E, F)])));\n"
      "formula G = !(X * Y) | ~E;\n";
  // formula atoms are checked at typecheck time, not parse time
  const auto p1 = d::parse(src);
  const std::string printed = d::pretty(p1);
  const auto p2 = d::parse(printed);
  CHECK(d::pretty(p2) == printed);
}

TEST_CASE("typecheck annotates domains and codomains") {
  const auto tp = d::typecheck(
      d::parse("space E = base 2; let r = compose(counit[E, 3], coder[E, 3]);"));
  REQUIRE(tp.let_types.size() == 1);
  const auto& t = tp.let_types[0].second;
  CHECK_FALSE(t.is_seq);
  CHECK(t.dom == SpaceExpr::base(2));
  CHECK(t.cod == SpaceExpr::base(2));
}

TEST_CASE("typecheck rejects mixed truncation degrees naming both") {
  try {
    d::typecheck(d::parse("space E = base 2; let x = compose(counit[E, 2], coder[E, 3]);"));
    FAIL("expected a type error");
  } catch (const d::DslError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2") != std::string::npos);
    CHECK(msg.find("3") != std::string::npos);
  }
  CHECK_THROWS_AS(
      d::typecheck(d::parse("space E = base 2; let x = tensor(coder[E, 2], coder[E, 3]);")),
      d::DslError);
}

TEST_CASE("typecheck rejects curry of a non-tensor domain") {
  CHECK_THROWS_AS(d::typecheck(d::parse("space E = base 2; let x = curry(id[E]);")),
                  d::DslError);
}

TEST_CASE("typecheck rejects unknown names and bad compositions") {
  CHECK_THROWS_AS(d::typecheck(d::parse("let x = blah;")), d::DslError);
  CHECK_THROWS_AS(d::typecheck(d::parse("space E = base 2; space F = base 3;"
                                        "let x = compose(id[E], id[F]);")),
                  d::DslError);
  CHECK_THROWS_AS(d::typecheck(d::parse("space E = base 2; formula F = Zed;")), d::DslError);
}

TEST_CASE("matrix literals check their shape") {
  CHECK_THROWS_AS(
      d::typecheck(d::parse("space E = base 2; let m = matrix[E -> E]{{1, 2}};")),
      d::DslError);
  const auto tp =
      d::typecheck(d::parse("space E = base 2; let m = matrix[E -> base 1]{{1, 2}};"));
  CHECK(tp.let_types[0].second.cod == SpaceExpr::base(1));
}

TEST_CASE("polarity of the worked connective table") {
  auto classify = [](const std::string& f) {
    const auto tp =
        d::typecheck(d::parse("space X = base 2; space Y = base 3; formula F = " + f + ";"));
    return tp.formulas.at(0).second;
  };
  // ?(X^bot) is negative and shift-free
  auto w = classify("?~X");
  CHECK(w.polarity == d::Polarity::Negative);
  CHECK(w.shifts_required.empty());
  // X (x) Y is positive with a shift at the root
  auto t = classify("X * Y");
  CHECK(t.polarity == d::Polarity::Positive);
  bool root = false;
  for (const auto& n : t.shifts_required) root = root || n.path == "root";
  CHECK(root);
  // binary plus is positive but exempt at the root
  auto pl = classify("X + Y");
  CHECK(pl.polarity == d::Polarity::Positive);
  for (const auto& n : pl.shifts_required) CHECK(n.path != "root");
  CHECK_FALSE(pl.shifts_required.empty());  // the atoms still need shifts
}

TEST_CASE("polarity rejects formulas outside the polarized grammar") {
  auto bad = [](const std::string& f) {
    return d::parse("space X = base 1; formula F = " + f + ";");
  };
  CHECK_THROWS_AS(d::typecheck(bad("X | X")), d::DslError);    // par of positives
  CHECK_THROWS_AS(d::typecheck(bad("~X * X")), d::DslError);   // tensor of a negative
  CHECK_THROWS_AS(d::typecheck(bad("!~X")), d::DslError);      // bang of a negative
  CHECK_THROWS_AS(d::typecheck(bad("?X")), d::DslError);       // whynot of a positive
  CHECK_THROWS_AS(d::typecheck(bad("down(~X)")), d::DslError); // shift of a negative
  CHECK_THROWS_AS(d::typecheck(bad("up(X)")), d::DslError);    // shift of a positive
}

TEST_CASE("evaluating counit after coder gives the identity") {
  const auto tp = d::typecheck(
      d::parse("space E = base 2; let r = compose(counit[E, 3], coder[E, 3]);"));
  const auto values = d::evaluate(tp);
  REQUIRE(values.size() == 1);
  CHECK(values[0].second.map->mat == Matrix::identity(2));
}

TEST_CASE("evaluating the seely combinator matches the library value") {
  const auto tp =
      d::typecheck(d::parse("let s = seely[base 1, base 1, 2];"));
  const auto values = d::evaluate(tp);
  CHECK(values[0].second.map->mat ==
        seely_iso(SpaceExpr::base(1), SpaceExpr::base(1), 2).mat);
  CHECK(values[0].second.map->mat.cols() == 6);
}

TEST_CASE("matrix literals evaluate to themselves") {
  const auto tp = d::typecheck(
      d::parse("space E = base 2; let m = matrix[E -> E]{{1, 1/2}, {0, -3}};"));
  const auto values = d::evaluate(tp);
  const Matrix& m = values[0].second.map->mat;
  CHECK(m.at(0, 1) == Scalar(1, 2));
  CHECK(m.at(1, 1) == Scalar(-3));
}

TEST_CASE("sequence literals and divisor composition in the language") {
  const char* src =
      "space K = base 1;\n"
      "let f = seq[K -> K, 4]{1: {[0 -> 0] = 1}, 2: {[0, 0 -> 0] = 1}};\n"
      "let g = seq[K -> K, 4]{1: {[0 -> 0] = 2}, 4: {[0, 0, 0, 0 -> 0] = 1}};\n"
      "let gf = compose(g, f);\n";
  const auto tp = d::typecheck(d::parse(src));
  CHECK(tp.let_types[2].second.is_seq);
  const auto values = d::evaluate(tp);
  const MonomialSeq& gf = *values[2].second.seq;
  // (g . f)_4 = g_1 . f_4 + g_2 . f_2 + g_4 . f_1 = 0 + 0 + 1
  CHECK(gf.monomials[4].coeff(Multiset(4, 0)) == Vec{Scalar(1)});
  // (g . f)_2 = g_1 . f_2 = 2 x^2
  CHECK(gf.monomials[2].coeff(Multiset(2, 0)) == Vec{Scalar(2)});
}

TEST_CASE("typechecked programs evaluate without shape errors") {
  // soundness probe over a generated family of well-typed programs
  Rng rng(191);
  const char* combos[] = {
      "compose(counit[E, 2], coder[E, 2])",
      "tensor(id[E], ev[E])",
      "transpose(proj1[E, F])",
      "curry(uncurry(id[hom(E, F)]))",
      "compose(weakening[E, 2], coweakening[E, 2])",
      "compose(cocontraction[E, 2], contraction[E, 2])",
      "compose(seely_inv[E, F, 2], seely[E, F, 2])",
      "compose(counit[tensor(E, F), 2], mu[E, F, 2])",
      "uncurry(curry(symmetry[E, F]))",
      "compose(proj1[E, F], id[prod(E, F)])",
      "compose(transpose(transpose(inj1[E, F])), ev[E])",
  };
  for (const char* c : combos) {
    const std::string src =
        std::string("space E = base 2; space F = base ") +
        std::to_string(rng.between(1, 3)) + "; let x = " + c + ";";
    const auto tp = d::typecheck(d::parse(src));
    CHECK_NOTHROW(d::evaluate(tp));
  }
}

TEST_CASE("evaluation honors external bindings") {
  const auto program = d::parse("space E = base 2; let y = compose(x, x);");
  const LinMap m(SpaceExpr::base(2), SpaceExpr::base(2), Matrix::identity(2).scaled(Scalar(3)));
  d::Value v;
  v.map = m;
  const auto tp = d::typecheck(program, {{"x", d::ValueType(false, m.dom, m.cod)}});
  const auto values = d::evaluate(tp, {{"x", v}});
  CHECK(values[0].second.map->mat == Matrix::identity(2).scaled(Scalar(9)));
}

TEST_CASE("parse_space handles structural expressions only") {
  CHECK(d::parse_space("bang(base 2, 3)").dim() == 10);
  CHECK(d::parse_space("hom(base 2, prod(base 1, base 2))").dim() == 6);
  CHECK_THROWS_AS(d::parse_space("E"), d::DslError);
}
