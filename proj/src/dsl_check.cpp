#include <functional>
#include <map>
#include <set>

#include "weakll/dsl.hpp"

namespace weakll::dsl {

namespace {

SpaceExpr resolve_space(const SpaceAstPtr& s,
                        const std::map<std::string, SpaceExpr>& spaces) {
  switch (s->k) {
    case SpaceAst::K::Base: return SpaceExpr::base(s->param);
    case SpaceAst::K::Name: {
      auto it = spaces.find(s->name);
      if (it == spaces.end())
        throw DslError("unknown space name '" + s->name + "'", s->pos);
      return it->second;
    }
    case SpaceAst::K::Dual: return SpaceExpr::dual(resolve_space(s->left, spaces));
    case SpaceAst::K::Tensor:
      return SpaceExpr::tensor(resolve_space(s->left, spaces), resolve_space(s->right, spaces));
    case SpaceAst::K::Par:
      return SpaceExpr::par(resolve_space(s->left, spaces), resolve_space(s->right, spaces));
    case SpaceAst::K::Prod:
      return SpaceExpr::prod(resolve_space(s->left, spaces), resolve_space(s->right, spaces));
    case SpaceAst::K::Coprod:
      return SpaceExpr::coprod(resolve_space(s->left, spaces), resolve_space(s->right, spaces));
    case SpaceAst::K::Hom:
      return SpaceExpr::hom(resolve_space(s->left, spaces), resolve_space(s->right, spaces));
    case SpaceAst::K::SymPow:
      return SpaceExpr::sympow(resolve_space(s->left, spaces), s->param);
    case SpaceAst::K::Bang:
      return SpaceExpr::bang(resolve_space(s->left, spaces), s->param);
    case SpaceAst::K::Bang1:
      return SpaceExpr::bang_nonunit(resolve_space(s->left, spaces), s->param);
  }
  throw std::logic_error("resolve_space: bad kind");
}

void collect_degrees(const SpaceExpr& s, std::set<Index>& degrees) {
  if (s.kind() == SpaceKind::Bang || s.kind() == SpaceKind::BangNonUnit) {
    degrees.insert(s.param());
    collect_degrees(s.left(), degrees);
  } else if (s.kind() != SpaceKind::Base) {
    collect_degrees(s.left(), degrees);
    if (s.kind() == SpaceKind::Tensor || s.kind() == SpaceKind::Par ||
        s.kind() == SpaceKind::Prod || s.kind() == SpaceKind::Coprod ||
        s.kind() == SpaceKind::Hom)
      collect_degrees(s.right(), degrees);
  }
}

struct CheckContext {
  std::map<std::string, SpaceExpr> spaces;
  std::map<std::string, ValueType> values;
};

struct Checked {
  ValueType type;
  std::set<Index> degrees;
};

void merge_degrees(std::set<Index>& into, const std::set<Index>& from, SourcePos pos) {
  for (Index d : from) into.insert(d);
  if (into.size() > 1) {
    auto it = into.begin();
    const Index a = *it++;
    const Index b = *it;
    throw DslError("mixed truncation degrees " + std::to_string(a) + " and " +
                       std::to_string(b) + " in one term",
                   pos);
  }
}

Checked check_morph(const MorphPtr& m, const CheckContext& ctx) {
  auto space_at = [&](size_t i) -> SpaceExpr {
    if (i >= m->spaces.size())
      throw DslError("missing space parameter", m->pos);
    return resolve_space(m->spaces[i], ctx.spaces);
  };
  auto need_spaces = [&](size_t n) {
    if (m->spaces.size() != n)
      throw DslError("expected " + std::to_string(n) + " space parameter(s), found " +
                         std::to_string(m->spaces.size()),
                     m->pos);
  };
  auto need_degree = [&]() -> Index {
    if (m->degree < 0) throw DslError("missing truncation degree parameter", m->pos);
    return m->degree;
  };
  auto simple = [&](SpaceExpr dom, SpaceExpr cod) {
    Checked c{ValueType(false, std::move(dom), std::move(cod)), {}};
    collect_degrees(c.type.dom, c.degrees);
    std::set<Index> cod_degrees;
    collect_degrees(c.type.cod, cod_degrees);
    merge_degrees(c.degrees, cod_degrees, m->pos);
    if (m->degree >= 0) merge_degrees(c.degrees, {m->degree}, m->pos);
    return c;
  };

  switch (m->kind) {
    case MorphKind::Ref: {
      auto it = ctx.values.find(m->name);
      if (it == ctx.values.end())
        throw DslError("unknown morphism name '" + m->name + "'", m->pos);
      Checked c{it->second, {}};
      collect_degrees(c.type.dom, c.degrees);
      std::set<Index> more;
      collect_degrees(c.type.cod, more);
      merge_degrees(c.degrees, more, m->pos);
      if (c.type.is_seq) merge_degrees(c.degrees, {c.type.truncation}, m->pos);
      return c;
    }
    case MorphKind::Compose: {
      Checked outer = check_morph(m->args[0], ctx);
      Checked inner = check_morph(m->args[1], ctx);
      if (outer.type.is_seq != inner.type.is_seq)
        throw DslError("compose: cannot mix a linear map with a monomial sequence", m->pos);
      if (outer.type.is_seq && outer.type.truncation != inner.type.truncation)
        throw DslError("compose: truncation degrees differ (" +
                           std::to_string(outer.type.truncation) + " vs " +
                           std::to_string(inner.type.truncation) + ")",
                       m->pos);
      if (!(inner.type.cod == outer.type.dom))
        throw DslError("compose: codomain " + inner.type.cod.to_string() +
                           " does not match domain " + outer.type.dom.to_string(),
                       m->pos);
      Checked c{ValueType(outer.type.is_seq, inner.type.dom, outer.type.cod,
                          outer.type.truncation),
                outer.degrees};
      merge_degrees(c.degrees, inner.degrees, m->pos);
      return c;
    }
    case MorphKind::TensorOf: {
      Checked a = check_morph(m->args[0], ctx);
      Checked b = check_morph(m->args[1], ctx);
      if (a.type.is_seq || b.type.is_seq)
        throw DslError("tensor: expects linear maps", m->pos);
      Checked c{ValueType(false, SpaceExpr::tensor(a.type.dom, b.type.dom),
                          SpaceExpr::tensor(a.type.cod, b.type.cod)),
                a.degrees};
      merge_degrees(c.degrees, b.degrees, m->pos);
      return c;
    }
    case MorphKind::Curry: {
      Checked a = check_morph(m->args[0], ctx);
      if (a.type.is_seq) throw DslError("curry: expects a linear map", m->pos);
      if (a.type.dom.kind() != SpaceKind::Tensor)
        throw DslError("curry: domain " + a.type.dom.to_string() + " is not a tensor", m->pos);
      a.type = ValueType(false, a.type.dom.left(),
                         SpaceExpr::hom(a.type.dom.right(), a.type.cod));
      return a;
    }
    case MorphKind::Uncurry: {
      Checked a = check_morph(m->args[0], ctx);
      if (a.type.is_seq) throw DslError("uncurry: expects a linear map", m->pos);
      if (a.type.cod.kind() != SpaceKind::Hom)
        throw DslError("uncurry: codomain " + a.type.cod.to_string() + " is not a hom",
                       m->pos);
      a.type = ValueType(false, SpaceExpr::tensor(a.type.dom, a.type.cod.left()),
                         a.type.cod.right());
      return a;
    }
    case MorphKind::Transpose: {
      Checked a = check_morph(m->args[0], ctx);
      if (a.type.is_seq) throw DslError("transpose: expects a linear map", m->pos);
      a.type = ValueType(false, SpaceExpr::dual(a.type.cod), SpaceExpr::dual(a.type.dom));
      return a;
    }
    case MorphKind::Id: {
      need_spaces(1);
      const SpaceExpr s = space_at(0);
      return simple(s, s);
    }
    case MorphKind::Ev: {
      need_spaces(1);
      const SpaceExpr s = space_at(0);
      return simple(s, SpaceExpr::dual(SpaceExpr::dual(s)));
    }
    case MorphKind::Associator: {
      need_spaces(3);
      const SpaceExpr s = space_at(0), t = space_at(1), u = space_at(2);
      return simple(SpaceExpr::tensor(SpaceExpr::tensor(s, t), u),
                    SpaceExpr::tensor(s, SpaceExpr::tensor(t, u)));
    }
    case MorphKind::Symmetry: {
      need_spaces(2);
      const SpaceExpr s = space_at(0), t = space_at(1);
      return simple(SpaceExpr::tensor(s, t), SpaceExpr::tensor(t, s));
    }
    case MorphKind::Inj1: {
      need_spaces(2);
      return simple(space_at(0), SpaceExpr::coprod(space_at(0), space_at(1)));
    }
    case MorphKind::Inj2: {
      need_spaces(2);
      return simple(space_at(1), SpaceExpr::coprod(space_at(0), space_at(1)));
    }
    case MorphKind::Proj1: {
      need_spaces(2);
      return simple(SpaceExpr::prod(space_at(0), space_at(1)), space_at(0));
    }
    case MorphKind::Proj2: {
      need_spaces(2);
      return simple(SpaceExpr::prod(space_at(0), space_at(1)), space_at(1));
    }
    case MorphKind::Counit: {
      need_spaces(1);
      const Index d = need_degree();
      if (d < 1) throw DslError("counit requires degree >= 1", m->pos);
      return simple(SpaceExpr::bang(space_at(0), d), space_at(0));
    }
    case MorphKind::Comult: {
      need_spaces(1);
      const Index d = need_degree();
      const SpaceExpr b = SpaceExpr::bang(space_at(0), d);
      return simple(b, SpaceExpr::bang(b, d));
    }
    case MorphKind::Coder: {
      need_spaces(1);
      const Index d = need_degree();
      if (d < 1) throw DslError("coder requires degree >= 1", m->pos);
      return simple(space_at(0), SpaceExpr::bang(space_at(0), d));
    }
    case MorphKind::Contraction: {
      need_spaces(1);
      const Index d = need_degree();
      const SpaceExpr b = SpaceExpr::bang(space_at(0), d);
      return simple(b, SpaceExpr::tensor(b, b));
    }
    case MorphKind::Weakening: {
      need_spaces(1);
      return simple(SpaceExpr::bang(space_at(0), need_degree()), SpaceExpr::base(1));
    }
    case MorphKind::Cocontraction: {
      need_spaces(1);
      const SpaceExpr b = SpaceExpr::bang(space_at(0), need_degree());
      return simple(SpaceExpr::tensor(b, b), b);
    }
    case MorphKind::Coweakening: {
      need_spaces(1);
      return simple(SpaceExpr::base(1), SpaceExpr::bang(space_at(0), need_degree()));
    }
    case MorphKind::Seely: {
      need_spaces(2);
      const Index d = need_degree();
      const SpaceExpr s = space_at(0), t = space_at(1);
      return simple(SpaceExpr::bang(SpaceExpr::prod(s, t), d),
                    SpaceExpr::tensor(SpaceExpr::bang(s, d), SpaceExpr::bang(t, d)));
    }
    case MorphKind::SeelyInv: {
      need_spaces(2);
      const Index d = need_degree();
      const SpaceExpr s = space_at(0), t = space_at(1);
      return simple(SpaceExpr::tensor(SpaceExpr::bang(s, d), SpaceExpr::bang(t, d)),
                    SpaceExpr::bang(SpaceExpr::prod(s, t), d));
    }
    case MorphKind::Mu: {
      need_spaces(2);
      const Index d = need_degree();
      const SpaceExpr s = space_at(0), t = space_at(1);
      return simple(SpaceExpr::tensor(SpaceExpr::bang(s, d), SpaceExpr::bang(t, d)),
                    SpaceExpr::bang(SpaceExpr::tensor(s, t), d));
    }
    case MorphKind::Mu0: {
      need_spaces(0);
      const Index d = need_degree();
      return simple(SpaceExpr::base(1), SpaceExpr::bang(SpaceExpr::base(1), d));
    }
    case MorphKind::MatrixLit: {
      need_spaces(2);
      const SpaceExpr dom = space_at(0), cod = space_at(1);
      if (static_cast<Index>(m->matrix_rows.size()) != cod.dim())
        throw DslError("matrix literal: expected " + std::to_string(cod.dim()) +
                           " rows, found " + std::to_string(m->matrix_rows.size()),
                       m->pos);
      for (const auto& row : m->matrix_rows)
        if (static_cast<Index>(row.size()) != dom.dim())
          throw DslError("matrix literal: expected " + std::to_string(dom.dim()) +
                             " columns, found " + std::to_string(row.size()),
                         m->pos);
      return simple(dom, cod);
    }
    case MorphKind::SeqLit: {
      need_spaces(2);
      const Index d = need_degree();
      const SpaceExpr dom = space_at(0), cod = space_at(1);
      for (const auto& e : m->seq_entries) {
        if (e.degree < 0 || e.degree > d)
          throw DslError("sequence literal: component degree " + std::to_string(e.degree) +
                             " outside 0.." + std::to_string(d),
                         m->pos);
        if (static_cast<Index>(e.multiset.size()) != e.degree)
          throw DslError("sequence literal: multiset size differs from component degree",
                         m->pos);
        for (Index i : e.multiset)
          if (i < 0 || i >= dom.dim())
            throw DslError("sequence literal: domain index out of range", m->pos);
        if (e.cod_index < 0 || e.cod_index >= cod.dim())
          throw DslError("sequence literal: codomain index out of range", m->pos);
      }
      Checked c{ValueType(true, dom, cod, d), {}};
      collect_degrees(dom, c.degrees);
      std::set<Index> more;
      collect_degrees(cod, more);
      merge_degrees(c.degrees, more, m->pos);
      merge_degrees(c.degrees, {d}, m->pos);
      return c;
    }
  }
  throw std::logic_error("check_morph: bad kind");
}

void check_formula_grammar(const FormulaPtr& f, Polarity pol, const char* what);

Polarity formula_polarity(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::Tensor:
    case FormulaKind::Plus:
    case FormulaKind::Bang:
    case FormulaKind::ShiftUp:
      return Polarity::Positive;
    case FormulaKind::Neg:
      return formula_polarity(f->left) == Polarity::Positive ? Polarity::Negative
                                                             : Polarity::Positive;
    default:
      return Polarity::Negative;
  }
}

void check_formula_grammar(const FormulaPtr& f, Polarity pol, const char* what) {
  if (formula_polarity(f) != pol)
    throw DslError(std::string(what) + " requires a " +
                       (pol == Polarity::Positive ? "positive" : "negative") + " operand",
                   f->pos);
}

void validate_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom: return;
    case FormulaKind::Neg: validate_formula(f->left); return;
    case FormulaKind::Tensor:
    case FormulaKind::Plus:
      check_formula_grammar(f->left, Polarity::Positive,
                            f->kind == FormulaKind::Tensor ? "tensor" : "plus");
      check_formula_grammar(f->right, Polarity::Positive,
                            f->kind == FormulaKind::Tensor ? "tensor" : "plus");
      validate_formula(f->left);
      validate_formula(f->right);
      return;
    case FormulaKind::Par:
    case FormulaKind::With:
      check_formula_grammar(f->left, Polarity::Negative,
                            f->kind == FormulaKind::Par ? "par" : "with");
      check_formula_grammar(f->right, Polarity::Negative,
                            f->kind == FormulaKind::Par ? "par" : "with");
      validate_formula(f->left);
      validate_formula(f->right);
      return;
    case FormulaKind::Bang:
      check_formula_grammar(f->left, Polarity::Positive, "bang");
      validate_formula(f->left);
      return;
    case FormulaKind::WhyNot:
      check_formula_grammar(f->left, Polarity::Negative, "whynot");
      validate_formula(f->left);
      return;
    case FormulaKind::ShiftDown:
      check_formula_grammar(f->left, Polarity::Positive, "shift down");
      validate_formula(f->left);
      return;
    case FormulaKind::ShiftUp:
      check_formula_grammar(f->left, Polarity::Negative, "shift up");
      validate_formula(f->left);
      return;
  }
}

// A node needs a shift only while "exposed": a negation or a shift-down
// anywhere above it already re-equips the whole subtree with the weak
// topology (duals always carry it), discharging every requirement below.
void collect_shifts(const FormulaPtr& f, bool exposed, const std::string& path,
                    std::vector<ShiftNeed>& out) {
  const bool requiring = f->kind == FormulaKind::Atom || f->kind == FormulaKind::Tensor ||
                         f->kind == FormulaKind::Bang || f->kind == FormulaKind::ShiftUp;
  if (exposed && requiring) out.push_back({f->kind, path, f->pos});
  const bool child_exposed =
      exposed && f->kind != FormulaKind::Neg && f->kind != FormulaKind::ShiftDown;
  if (f->left) collect_shifts(f->left, child_exposed, path + ".left", out);
  if (f->right) collect_shifts(f->right, child_exposed, path + ".right", out);
}

}  // namespace

PolarityInfo polarity(const FormulaPtr& f) {
  validate_formula(f);
  PolarityInfo info{formula_polarity(f), {}};
  collect_shifts(f, true, "root", info.shifts_required);
  return info;
}

TypedProgram typecheck(const Program& p,
                       const std::vector<std::pair<std::string, ValueType>>& binding_types) {
  TypedProgram tp{p, {}, {}, {}};
  CheckContext ctx;
  for (const auto& [name, type] : binding_types) ctx.values.emplace(name, type);
  for (const auto& st : p.statements) {
    if (std::holds_alternative<SpaceDecl>(st)) {
      const auto& d = std::get<SpaceDecl>(st);
      const SpaceExpr s = resolve_space(d.expr, ctx.spaces);
      ctx.spaces.insert_or_assign(d.name, s);
      tp.spaces.emplace_back(d.name, s);
    } else if (std::holds_alternative<LetDecl>(st)) {
      const auto& d = std::get<LetDecl>(st);
      const Checked c = check_morph(d.expr, ctx);
      ctx.values.insert_or_assign(d.name, c.type);
      tp.let_types.emplace_back(d.name, c.type);
    } else {
      const auto& d = std::get<FormulaDecl>(st);
      // atoms must resolve to declared spaces
      std::function<void(const FormulaPtr&)> check_atoms = [&](const FormulaPtr& f) {
        if (f->kind == FormulaKind::Atom) {
          if (ctx.spaces.find(f->atom) == ctx.spaces.end())
            throw DslError("formula atom '" + f->atom + "' is not a declared space", f->pos);
          return;
        }
        if (f->left) check_atoms(f->left);
        if (f->right) check_atoms(f->right);
      };
      check_atoms(d.expr);
      tp.formulas.emplace_back(d.name, polarity(d.expr));
    }
  }
  return tp;
}

}  // namespace weakll::dsl
