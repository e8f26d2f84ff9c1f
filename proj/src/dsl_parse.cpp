#include <cctype>
#include <functional>
#include <sstream>

#include "weakll/dsl.hpp"

namespace weakll::dsl {

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Index value = 0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++i_;
      } else if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
    cur_ = Token{};
    cur_.pos = {line_, col_};
    if (i_ >= src_.size()) {
      cur_.kind = Tok::End;
      return;
    }
    const char c = src_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
        ++j;
      cur_.kind = Tok::Ident;
      cur_.text = src_.substr(i_, j - i_);
      col_ += static_cast<int>(j - i_);
      i_ = j;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      cur_.kind = Tok::Int;
      cur_.text = src_.substr(i_, j - i_);
      cur_.value = std::stoll(cur_.text);
      col_ += static_cast<int>(j - i_);
      i_ = j;
      return;
    }
    // two-character arrow
    if (c == '-' && i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
      cur_.kind = Tok::Sym;
      cur_.text = "->";
      col_ += 2;
      i_ += 2;
      return;
    }
    cur_.kind = Tok::Sym;
    cur_.text = std::string(1, c);
    ++col_;
    ++i_;
  }

  const std::string& src_;
  size_t i_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Program parse_program() {
    Program p;
    while (lex_.peek().kind != Tok::End) {
      const Token t = lex_.peek();
      if (t.kind != Tok::Ident)
        throw DslError("expected a declaration keyword", t.pos);
      if (t.text == "space") {
        lex_.take();
        SpaceDecl d;
        d.pos = t.pos;
        d.name = expect_ident("space name");
        expect_sym("=");
        d.expr = parse_space_expr();
        expect_sym(";");
        p.statements.emplace_back(std::move(d));
      } else if (t.text == "let") {
        lex_.take();
        LetDecl d;
        d.pos = t.pos;
        d.name = expect_ident("morphism name");
        expect_sym("=");
        d.expr = parse_morph();
        expect_sym(";");
        p.statements.emplace_back(std::move(d));
      } else if (t.text == "formula") {
        lex_.take();
        FormulaDecl d;
        d.pos = t.pos;
        d.name = expect_ident("formula name");
        expect_sym("=");
        d.expr = parse_formula();
        expect_sym(";");
        p.statements.emplace_back(std::move(d));
      } else {
        throw DslError("unknown declaration '" + t.text + "'", t.pos);
      }
    }
    return p;
  }

  SpaceAstPtr parse_space_expr() {
    const Token t = lex_.peek();
    if (t.kind != Tok::Ident) throw DslError("expected a space expression", t.pos);
    auto node = std::make_shared<SpaceAst>();
    node->pos = t.pos;
    if (t.text == "base") {
      lex_.take();
      node->k = SpaceAst::K::Base;
      node->param = expect_int("base dimension");
      return node;
    }
    static const std::pair<const char*, SpaceAst::K> unary[] = {
        {"dual", SpaceAst::K::Dual}};
    static const std::pair<const char*, SpaceAst::K> binary[] = {
        {"tensor", SpaceAst::K::Tensor}, {"par", SpaceAst::K::Par},
        {"prod", SpaceAst::K::Prod},     {"coprod", SpaceAst::K::Coprod},
        {"hom", SpaceAst::K::Hom}};
    static const std::pair<const char*, SpaceAst::K> indexed[] = {
        {"sympow", SpaceAst::K::SymPow},
        {"bang", SpaceAst::K::Bang},
        {"bang1", SpaceAst::K::Bang1}};
    for (const auto& [kw, k] : unary)
      if (t.text == kw) {
        lex_.take();
        expect_sym("(");
        node->k = k;
        node->left = parse_space_expr();
        expect_sym(")");
        return node;
      }
    for (const auto& [kw, k] : binary)
      if (t.text == kw) {
        lex_.take();
        expect_sym("(");
        node->k = k;
        node->left = parse_space_expr();
        expect_sym(",");
        node->right = parse_space_expr();
        expect_sym(")");
        return node;
      }
    for (const auto& [kw, k] : indexed)
      if (t.text == kw) {
        lex_.take();
        expect_sym("(");
        node->k = k;
        node->left = parse_space_expr();
        expect_sym(",");
        node->param = expect_int("degree");
        expect_sym(")");
        return node;
      }
    lex_.take();
    node->k = SpaceAst::K::Name;
    node->name = t.text;
    return node;
  }

  FormulaPtr parse_formula() {
    FormulaPtr lhs = parse_formula_unary();
    while (lex_.peek().kind == Tok::Sym &&
           (lex_.peek().text == "*" || lex_.peek().text == "|" || lex_.peek().text == "&" ||
            lex_.peek().text == "+")) {
      const Token op = lex_.take();
      FormulaPtr rhs = parse_formula_unary();
      auto node = std::make_shared<Formula>();
      node->pos = op.pos;
      node->kind = op.text == "*"   ? FormulaKind::Tensor
                   : op.text == "|" ? FormulaKind::Par
                   : op.text == "&" ? FormulaKind::With
                                    : FormulaKind::Plus;
      node->left = lhs;
      node->right = rhs;
      lhs = node;
    }
    return lhs;
  }

  MorphPtr parse_morph() { return parse_morph_atom(); }

 private:
  FormulaPtr parse_formula_unary() {
    const Token t = lex_.peek();
    auto mk = [&](FormulaKind k, FormulaPtr child) {
      auto n = std::make_shared<Formula>();
      n->kind = k;
      n->left = std::move(child);
      n->pos = t.pos;
      return n;
    };
    if (t.kind == Tok::Sym && t.text == "~") {
      lex_.take();
      return mk(FormulaKind::Neg, parse_formula_unary());
    }
    if (t.kind == Tok::Sym && t.text == "!") {
      lex_.take();
      return mk(FormulaKind::Bang, parse_formula_unary());
    }
    if (t.kind == Tok::Sym && t.text == "?") {
      lex_.take();
      return mk(FormulaKind::WhyNot, parse_formula_unary());
    }
    if (t.kind == Tok::Sym && t.text == "(") {
      lex_.take();
      FormulaPtr f = parse_formula();
      expect_sym(")");
      return f;
    }
    if (t.kind == Tok::Ident && (t.text == "down" || t.text == "up")) {
      lex_.take();
      expect_sym("(");
      FormulaPtr f = parse_formula();
      expect_sym(")");
      return mk(t.text == "down" ? FormulaKind::ShiftDown : FormulaKind::ShiftUp, f);
    }
    if (t.kind == Tok::Ident) {
      lex_.take();
      auto n = std::make_shared<Formula>();
      n->kind = FormulaKind::Atom;
      n->atom = t.text;
      n->pos = t.pos;
      return n;
    }
    throw DslError("expected a formula", t.pos);
  }

  MorphPtr parse_morph_atom() {
    const Token t = lex_.peek();
    if (t.kind != Tok::Ident) throw DslError("expected a morphism expression", t.pos);

    static const std::pair<const char*, MorphKind> on_morphs[] = {
        {"compose", MorphKind::Compose}, {"tensor", MorphKind::TensorOf},
        {"curry", MorphKind::Curry},     {"uncurry", MorphKind::Uncurry},
        {"transpose", MorphKind::Transpose}};
    static const std::pair<const char*, MorphKind> bracketed[] = {
        {"id", MorphKind::Id},
        {"ev", MorphKind::Ev},
        {"associator", MorphKind::Associator},
        {"symmetry", MorphKind::Symmetry},
        {"inj1", MorphKind::Inj1},
        {"inj2", MorphKind::Inj2},
        {"proj1", MorphKind::Proj1},
        {"proj2", MorphKind::Proj2},
        {"counit", MorphKind::Counit},
        {"comult", MorphKind::Comult},
        {"coder", MorphKind::Coder},
        {"contraction", MorphKind::Contraction},
        {"weakening", MorphKind::Weakening},
        {"cocontraction", MorphKind::Cocontraction},
        {"coweakening", MorphKind::Coweakening},
        {"seely", MorphKind::Seely},
        {"seely_inv", MorphKind::SeelyInv},
        {"mu", MorphKind::Mu},
        {"mu0", MorphKind::Mu0}};

    for (const auto& [kw, k] : on_morphs)
      if (t.text == kw) {
        lex_.take();
        auto n = std::make_shared<Morph>();
        n->kind = k;
        n->pos = t.pos;
        expect_sym("(");
        n->args.push_back(parse_morph());
        if (k == MorphKind::Compose || k == MorphKind::TensorOf) {
          expect_sym(",");
          n->args.push_back(parse_morph());
        }
        expect_sym(")");
        return n;
      }

    for (const auto& [kw, k] : bracketed)
      if (t.text == kw) {
        lex_.take();
        auto n = std::make_shared<Morph>();
        n->kind = k;
        n->pos = t.pos;
        expect_sym("[");
        bool first = true;
        while (!(lex_.peek().kind == Tok::Sym && lex_.peek().text == "]")) {
          if (!first) expect_sym(",");
          first = false;
          if (lex_.peek().kind == Tok::Int)
            n->degree = expect_int("degree");
          else
            n->spaces.push_back(parse_space_expr());
        }
        expect_sym("]");
        return n;
      }

    if (t.text == "matrix") return parse_matrix_literal();
    if (t.text == "seq") return parse_seq_literal();

    lex_.take();
    auto n = std::make_shared<Morph>();
    n->kind = MorphKind::Ref;
    n->name = t.text;
    n->pos = t.pos;
    return n;
  }

  MorphPtr parse_matrix_literal() {
    const Token t = lex_.take();  // "matrix"
    auto n = std::make_shared<Morph>();
    n->kind = MorphKind::MatrixLit;
    n->pos = t.pos;
    expect_sym("[");
    n->spaces.push_back(parse_space_expr());
    expect_sym("->");
    n->spaces.push_back(parse_space_expr());
    expect_sym("]");
    expect_sym("{");
    bool first_row = true;
    while (!(lex_.peek().kind == Tok::Sym && lex_.peek().text == "}")) {
      if (!first_row) expect_sym(",");
      first_row = false;
      expect_sym("{");
      std::vector<Scalar> row;
      bool first = true;
      while (!(lex_.peek().kind == Tok::Sym && lex_.peek().text == "}")) {
        if (!first) expect_sym(",");
        first = false;
        row.push_back(parse_scalar());
      }
      expect_sym("}");
      n->matrix_rows.push_back(std::move(row));
    }
    expect_sym("}");
    return n;
  }

  MorphPtr parse_seq_literal() {
    const Token t = lex_.take();  // "seq"
    auto n = std::make_shared<Morph>();
    n->kind = MorphKind::SeqLit;
    n->pos = t.pos;
    expect_sym("[");
    n->spaces.push_back(parse_space_expr());
    expect_sym("->");
    n->spaces.push_back(parse_space_expr());
    expect_sym(",");
    n->degree = expect_int("truncation degree");
    expect_sym("]");
    expect_sym("{");
    bool first_block = true;
    while (!(lex_.peek().kind == Tok::Sym && lex_.peek().text == "}")) {
      if (!first_block) expect_sym(",");
      first_block = false;
      const Index deg = expect_int("component degree");
      expect_sym(":");
      expect_sym("{");
      bool first = true;
      while (!(lex_.peek().kind == Tok::Sym && lex_.peek().text == "}")) {
        if (!first) expect_sym(",");
        first = false;
        SeqLitEntry e;
        e.degree = deg;
        expect_sym("[");
        while (!(lex_.peek().kind == Tok::Sym && lex_.peek().text == "->")) {
          if (!e.multiset.empty()) expect_sym(",");
          e.multiset.push_back(expect_int("domain basis index"));
        }
        expect_sym("->");
        e.cod_index = expect_int("codomain basis index");
        expect_sym("]");
        expect_sym("=");
        e.value = parse_scalar();
        n->seq_entries.push_back(std::move(e));
      }
      expect_sym("}");
    }
    expect_sym("}");
    return n;
  }

  Scalar parse_scalar() {
    bool neg = false;
    if (lex_.peek().kind == Tok::Sym && lex_.peek().text == "-") {
      lex_.take();
      neg = true;
    }
    const Index num = expect_int("numerator");
    Index den = 1;
    if (lex_.peek().kind == Tok::Sym && lex_.peek().text == "/") {
      lex_.take();
      den = expect_int("denominator");
      if (den == 0) throw DslError("zero denominator", lex_.peek().pos);
    }
    Scalar s(num, den);
    return neg ? -s : s;
  }

  std::string expect_ident(const char* what) {
    const Token t = lex_.take();
    if (t.kind != Tok::Ident) throw DslError(std::string("expected ") + what, t.pos);
    return t.text;
  }

  Index expect_int(const char* what) {
    const Token t = lex_.take();
    if (t.kind != Tok::Int) throw DslError(std::string("expected ") + what, t.pos);
    return t.value;
  }

  void expect_sym(const char* s) {
    const Token t = lex_.take();
    if (t.kind != Tok::Sym || t.text != s)
      throw DslError("expected '" + std::string(s) + "', found '" + t.text + "'", t.pos);
  }

  Lexer lex_;
};

// ---------------------------------------------------------------- printer

void print_space(std::ostream& os, const SpaceAstPtr& s) {
  switch (s->k) {
    case SpaceAst::K::Base: os << "base " << s->param; return;
    case SpaceAst::K::Name: os << s->name; return;
    case SpaceAst::K::Dual:
      os << "dual(";
      print_space(os, s->left);
      os << ")";
      return;
    case SpaceAst::K::Tensor:
    case SpaceAst::K::Par:
    case SpaceAst::K::Prod:
    case SpaceAst::K::Coprod:
    case SpaceAst::K::Hom: {
      const char* kw = s->k == SpaceAst::K::Tensor   ? "tensor"
                       : s->k == SpaceAst::K::Par    ? "par"
                       : s->k == SpaceAst::K::Prod   ? "prod"
                       : s->k == SpaceAst::K::Coprod ? "coprod"
                                                     : "hom";
      os << kw << "(";
      print_space(os, s->left);
      os << ", ";
      print_space(os, s->right);
      os << ")";
      return;
    }
    case SpaceAst::K::SymPow:
    case SpaceAst::K::Bang:
    case SpaceAst::K::Bang1: {
      const char* kw = s->k == SpaceAst::K::SymPow ? "sympow"
                       : s->k == SpaceAst::K::Bang ? "bang"
                                                   : "bang1";
      os << kw << "(";
      print_space(os, s->left);
      os << ", " << s->param << ")";
      return;
    }
  }
}

void print_formula(std::ostream& os, const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom: os << f->atom; return;
    case FormulaKind::Neg:
      os << "~";
      print_formula(os, f->left);
      return;
    case FormulaKind::Bang:
      os << "!";
      print_formula(os, f->left);
      return;
    case FormulaKind::WhyNot:
      os << "?";
      print_formula(os, f->left);
      return;
    case FormulaKind::ShiftDown:
    case FormulaKind::ShiftUp:
      os << (f->kind == FormulaKind::ShiftDown ? "down(" : "up(");
      print_formula(os, f->left);
      os << ")";
      return;
    default: {
      const char* op = f->kind == FormulaKind::Tensor ? "*"
                       : f->kind == FormulaKind::Par  ? "|"
                       : f->kind == FormulaKind::With ? "&"
                                                      : "+";
      os << "(";
      print_formula(os, f->left);
      os << " " << op << " ";
      print_formula(os, f->right);
      os << ")";
      return;
    }
  }
}

void print_morph(std::ostream& os, const MorphPtr& m) {
  static const std::pair<MorphKind, const char*> names[] = {
      {MorphKind::Compose, "compose"},
      {MorphKind::TensorOf, "tensor"},
      {MorphKind::Curry, "curry"},
      {MorphKind::Uncurry, "uncurry"},
      {MorphKind::Transpose, "transpose"},
      {MorphKind::Id, "id"},
      {MorphKind::Ev, "ev"},
      {MorphKind::Associator, "associator"},
      {MorphKind::Symmetry, "symmetry"},
      {MorphKind::Inj1, "inj1"},
      {MorphKind::Inj2, "inj2"},
      {MorphKind::Proj1, "proj1"},
      {MorphKind::Proj2, "proj2"},
      {MorphKind::Counit, "counit"},
      {MorphKind::Comult, "comult"},
      {MorphKind::Coder, "coder"},
      {MorphKind::Contraction, "contraction"},
      {MorphKind::Weakening, "weakening"},
      {MorphKind::Cocontraction, "cocontraction"},
      {MorphKind::Coweakening, "coweakening"},
      {MorphKind::Seely, "seely"},
      {MorphKind::SeelyInv, "seely_inv"},
      {MorphKind::Mu, "mu"},
      {MorphKind::Mu0, "mu0"}};
  if (m->kind == MorphKind::Ref) {
    os << m->name;
    return;
  }
  if (m->kind == MorphKind::MatrixLit) {
    os << "matrix[";
    print_space(os, m->spaces[0]);
    os << " -> ";
    print_space(os, m->spaces[1]);
    os << "]{";
    for (size_t i = 0; i < m->matrix_rows.size(); ++i) {
      if (i) os << ", ";
      os << "{";
      for (size_t j = 0; j < m->matrix_rows[i].size(); ++j) {
        if (j) os << ", ";
        os << scalar_to_string(m->matrix_rows[i][j]);
      }
      os << "}";
    }
    os << "}";
    return;
  }
  if (m->kind == MorphKind::SeqLit) {
    os << "seq[";
    print_space(os, m->spaces[0]);
    os << " -> ";
    print_space(os, m->spaces[1]);
    os << ", " << m->degree << "]{";
    Index cur = -1;
    bool first_block = true;
    for (size_t i = 0; i < m->seq_entries.size(); ++i) {
      const auto& e = m->seq_entries[i];
      if (e.degree != cur) {
        if (cur >= 0) os << "}";
        if (!first_block) os << ", ";
        first_block = false;
        os << e.degree << ": {";
        cur = e.degree;
      } else {
        os << ", ";
      }
      os << "[";
      for (size_t j = 0; j < e.multiset.size(); ++j) {
        if (j) os << ", ";
        os << e.multiset[j];
      }
      os << " -> " << e.cod_index << "] = " << scalar_to_string(e.value);
    }
    if (cur >= 0) os << "}";
    os << "}";
    return;
  }
  const char* name = nullptr;
  for (const auto& [k, n] : names)
    if (k == m->kind) name = n;
  os << name;
  if (!m->args.empty()) {
    os << "(";
    for (size_t i = 0; i < m->args.size(); ++i) {
      if (i) os << ", ";
      print_morph(os, m->args[i]);
    }
    os << ")";
  } else {
    os << "[";
    bool first = true;
    for (const auto& s : m->spaces) {
      if (!first) os << ", ";
      first = false;
      print_space(os, s);
    }
    if (m->degree >= 0) {
      if (!first) os << ", ";
      os << m->degree;
    }
    os << "]";
  }
}

}  // namespace

Program parse(const std::string& source) { return Parser(source).parse_program(); }

std::string pretty(const Program& p) {
  std::ostringstream os;
  for (const auto& st : p.statements) {
    if (std::holds_alternative<SpaceDecl>(st)) {
      const auto& d = std::get<SpaceDecl>(st);
      os << "space " << d.name << " = ";
      print_space(os, d.expr);
      os << ";\n";
    } else if (std::holds_alternative<LetDecl>(st)) {
      const auto& d = std::get<LetDecl>(st);
      os << "let " << d.name << " = ";
      print_morph(os, d.expr);
      os << ";\n";
    } else {
      const auto& d = std::get<FormulaDecl>(st);
      os << "formula " << d.name << " = ";
      print_formula(os, d.expr);
      os << ";\n";
    }
  }
  return os.str();
}

SpaceExpr parse_space(const std::string& text) {
  Parser p(text);
  const SpaceAstPtr ast = p.parse_space_expr();
  // resolve without any named spaces
  std::function<SpaceExpr(const SpaceAstPtr&)> res = [&](const SpaceAstPtr& s) -> SpaceExpr {
    switch (s->k) {
      case SpaceAst::K::Base: return SpaceExpr::base(s->param);
      case SpaceAst::K::Name:
        throw DslError("unknown space name '" + s->name + "'", s->pos);
      case SpaceAst::K::Dual: return SpaceExpr::dual(res(s->left));
      case SpaceAst::K::Tensor: return SpaceExpr::tensor(res(s->left), res(s->right));
      case SpaceAst::K::Par: return SpaceExpr::par(res(s->left), res(s->right));
      case SpaceAst::K::Prod: return SpaceExpr::prod(res(s->left), res(s->right));
      case SpaceAst::K::Coprod: return SpaceExpr::coprod(res(s->left), res(s->right));
      case SpaceAst::K::Hom: return SpaceExpr::hom(res(s->left), res(s->right));
      case SpaceAst::K::SymPow: return SpaceExpr::sympow(res(s->left), s->param);
      case SpaceAst::K::Bang: return SpaceExpr::bang(res(s->left), s->param);
      case SpaceAst::K::Bang1: return SpaceExpr::bang_nonunit(res(s->left), s->param);
    }
    throw std::logic_error("parse_space: bad kind");
  };
  return res(ast);
}

}  // namespace weakll::dsl
