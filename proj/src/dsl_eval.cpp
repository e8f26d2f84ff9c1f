#include <algorithm>
#include <map>

#include "weakll/dsl.hpp"

namespace weakll::dsl {

namespace {

struct EvalContext {
  std::map<std::string, SpaceExpr> spaces;
  std::map<std::string, Value> values;
};

SpaceExpr resolve(const SpaceAstPtr& s, const EvalContext& ctx) {
  switch (s->k) {
    case SpaceAst::K::Base: return SpaceExpr::base(s->param);
    case SpaceAst::K::Name: {
      auto it = ctx.spaces.find(s->name);
      if (it == ctx.spaces.end())
        throw DslError("unknown space name '" + s->name + "'", s->pos);
      return it->second;
    }
    case SpaceAst::K::Dual: return SpaceExpr::dual(resolve(s->left, ctx));
    case SpaceAst::K::Tensor:
      return SpaceExpr::tensor(resolve(s->left, ctx), resolve(s->right, ctx));
    case SpaceAst::K::Par: return SpaceExpr::par(resolve(s->left, ctx), resolve(s->right, ctx));
    case SpaceAst::K::Prod:
      return SpaceExpr::prod(resolve(s->left, ctx), resolve(s->right, ctx));
    case SpaceAst::K::Coprod:
      return SpaceExpr::coprod(resolve(s->left, ctx), resolve(s->right, ctx));
    case SpaceAst::K::Hom: return SpaceExpr::hom(resolve(s->left, ctx), resolve(s->right, ctx));
    case SpaceAst::K::SymPow: return SpaceExpr::sympow(resolve(s->left, ctx), s->param);
    case SpaceAst::K::Bang: return SpaceExpr::bang(resolve(s->left, ctx), s->param);
    case SpaceAst::K::Bang1: return SpaceExpr::bang_nonunit(resolve(s->left, ctx), s->param);
  }
  throw std::logic_error("resolve: bad kind");
}

Value map_value(LinMap m) {
  Value v;
  v.map = std::move(m);
  return v;
}

Value eval_morph(const MorphPtr& m, const EvalContext& ctx) {
  auto space_at = [&](size_t i) { return resolve(m->spaces[i], ctx); };
  switch (m->kind) {
    case MorphKind::Ref: {
      auto it = ctx.values.find(m->name);
      if (it == ctx.values.end())
        throw DslError("unknown morphism name '" + m->name + "'", m->pos);
      return it->second;
    }
    case MorphKind::Compose: {
      const Value outer = eval_morph(m->args[0], ctx);
      const Value inner = eval_morph(m->args[1], ctx);
      if (outer.is_seq())
        return [&] {
          Value v;
          v.seq = kleisli_compose(*outer.seq, *inner.seq);
          return v;
        }();
      return map_value(compose(*outer.map, *inner.map));
    }
    case MorphKind::TensorOf: {
      const Value a = eval_morph(m->args[0], ctx);
      const Value b = eval_morph(m->args[1], ctx);
      return map_value(tensor_map(*a.map, *b.map));
    }
    case MorphKind::Curry: return map_value(curry(*eval_morph(m->args[0], ctx).map));
    case MorphKind::Uncurry: return map_value(uncurry(*eval_morph(m->args[0], ctx).map));
    case MorphKind::Transpose: return map_value(transpose(*eval_morph(m->args[0], ctx).map));
    case MorphKind::Id: return map_value(LinMap::identity(space_at(0)));
    case MorphKind::Ev: return map_value(double_dual_ev(space_at(0)));
    case MorphKind::Associator:
      return map_value(associator(space_at(0), space_at(1), space_at(2)));
    case MorphKind::Symmetry: return map_value(symmetry(space_at(0), space_at(1)));
    case MorphKind::Inj1: return map_value(injection_left(space_at(0), space_at(1)));
    case MorphKind::Inj2: return map_value(injection_right(space_at(0), space_at(1)));
    case MorphKind::Proj1: return map_value(projection_left(space_at(0), space_at(1)));
    case MorphKind::Proj2: return map_value(projection_right(space_at(0), space_at(1)));
    case MorphKind::Counit: return map_value(counit(space_at(0), m->degree));
    case MorphKind::Comult: return map_value(comultiplication(space_at(0), m->degree));
    case MorphKind::Coder: return map_value(coder(space_at(0), m->degree));
    case MorphKind::Contraction: return map_value(contraction(space_at(0), m->degree));
    case MorphKind::Weakening: return map_value(weakening(space_at(0), m->degree));
    case MorphKind::Cocontraction: return map_value(cocontraction(space_at(0), m->degree));
    case MorphKind::Coweakening: return map_value(coweakening(space_at(0), m->degree));
    case MorphKind::Seely: return map_value(seely_iso(space_at(0), space_at(1), m->degree));
    case MorphKind::SeelyInv:
      return map_value(seely_inv(space_at(0), space_at(1), m->degree));
    case MorphKind::Mu: return map_value(monoidal_mu(space_at(0), space_at(1), m->degree));
    case MorphKind::Mu0: return map_value(monoidal_mu0(m->degree));
    case MorphKind::MatrixLit: {
      const SpaceExpr dom = space_at(0), cod = space_at(1);
      Matrix mat(cod.dim(), dom.dim());
      for (Index i = 0; i < cod.dim(); ++i)
        for (Index j = 0; j < dom.dim(); ++j)
          mat.at(i, j) = m->matrix_rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
      return map_value(LinMap(dom, cod, std::move(mat)));
    }
    case MorphKind::SeqLit: {
      const SpaceExpr dom = space_at(0), cod = space_at(1);
      MonomialSeq seq(dom, cod, m->degree);
      for (const auto& e : m->seq_entries) {
        Multiset ms = e.multiset;
        std::sort(ms.begin(), ms.end());
        seq.monomials[static_cast<size_t>(e.degree)].add_coeff(ms, e.cod_index, e.value);
      }
      Value v;
      v.seq = std::move(seq);
      return v;
    }
  }
  throw std::logic_error("eval_morph: bad kind");
}

}  // namespace

std::vector<std::pair<std::string, Value>> evaluate(
    const TypedProgram& tp, const std::vector<std::pair<std::string, Value>>& bindings) {
  EvalContext ctx;
  for (const auto& [name, v] : bindings) ctx.values.insert_or_assign(name, v);
  std::vector<std::pair<std::string, Value>> out;
  for (const auto& st : tp.program.statements) {
    if (std::holds_alternative<SpaceDecl>(st)) {
      const auto& d = std::get<SpaceDecl>(st);
      ctx.spaces.insert_or_assign(d.name, resolve(d.expr, ctx));
    } else if (std::holds_alternative<LetDecl>(st)) {
      const auto& d = std::get<LetDecl>(st);
      Value v = eval_morph(d.expr, ctx);
      ctx.values.insert_or_assign(d.name, v);
      out.emplace_back(d.name, std::move(v));
    }
  }
  return out;
}

}  // namespace weakll::dsl
