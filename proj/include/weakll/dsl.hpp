#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "weakll/exponential.hpp"

namespace weakll::dsl {

struct SourcePos {
  int line = 1;
  int col = 1;
};

struct DslError : std::runtime_error {
  SourcePos pos;
  DslError(const std::string& msg, SourcePos p)
      : std::runtime_error(msg + " (line " + std::to_string(p.line) + ", column " +
                           std::to_string(p.col) + ")"),
        pos(p) {}
};

// ---------------------------------------------------------------- spaces

struct SpaceAst;
using SpaceAstPtr = std::shared_ptr<const SpaceAst>;

struct SpaceAst {
  enum class K { Base, Name, Dual, Tensor, Par, Prod, Coprod, Hom, SymPow, Bang, Bang1 };
  K k;
  Index param = 0;    // Base dim / SymPow n / Bang degree
  std::string name;   // Name
  SpaceAstPtr left, right;
  SourcePos pos;
};

// --------------------------------------------------------------- formulas

enum class FormulaKind { Atom, Neg, Tensor, Par, With, Plus, Bang, WhyNot, ShiftDown, ShiftUp };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::string atom;           // Atom
  FormulaPtr left, right;     // unary connectives use left
  SourcePos pos;
};

enum class Polarity { Positive, Negative };

struct ShiftNeed {
  FormulaKind kind;
  std::string path;  // "root", "root.left", ...
  SourcePos pos;
};

/// Polarity classification plus the set of subformulas that need a
/// shift-down before interpretation: tensor, bang, shift-up and bare
/// atom nodes not directly under a shift-down (atoms under a negation
/// are negative literals and exempt; binary plus is exempt as a finite
/// coproduct). Throws DslError on formulas outside the polarized grammar.
struct PolarityInfo {
  Polarity polarity;
  std::vector<ShiftNeed> shifts_required;
};

PolarityInfo polarity(const FormulaPtr& f);

// -------------------------------------------------------------- morphisms

enum class MorphKind {
  Ref,
  Compose,
  TensorOf,
  Curry,
  Uncurry,
  Transpose,
  Id,
  Ev,
  Associator,
  Symmetry,
  Inj1,
  Inj2,
  Proj1,
  Proj2,
  Counit,
  Comult,
  Coder,
  Contraction,
  Weakening,
  Cocontraction,
  Coweakening,
  Seely,
  SeelyInv,
  Mu,
  Mu0,
  MatrixLit,
  SeqLit
};

struct SeqLitEntry {
  Index degree;
  Multiset multiset;
  Index cod_index;
  Scalar value;
};

struct Morph;
using MorphPtr = std::shared_ptr<const Morph>;

struct Morph {
  MorphKind kind;
  SourcePos pos;
  std::string name;                     // Ref
  std::vector<MorphPtr> args;           // morphism arguments
  std::vector<SpaceAstPtr> spaces;      // bracket space parameters
  Index degree = -1;                    // bracket truncation parameter
  std::vector<std::vector<Scalar>> matrix_rows;  // MatrixLit
  std::vector<SeqLitEntry> seq_entries;          // SeqLit
};

// --------------------------------------------------------------- programs

struct SpaceDecl {
  std::string name;
  SpaceAstPtr expr;
  SourcePos pos;
};
struct LetDecl {
  std::string name;
  MorphPtr expr;
  SourcePos pos;
};
struct FormulaDecl {
  std::string name;
  FormulaPtr expr;
  SourcePos pos;
};

struct Program {
  std::vector<std::variant<SpaceDecl, LetDecl, FormulaDecl>> statements;
};

Program parse(const std::string& source);
std::string pretty(const Program& p);

/// Space expression with no named atoms, e.g. for the dump command.
SpaceExpr parse_space(const std::string& text);

// -------------------------------------------------------------- semantics

struct Value {
  std::optional<LinMap> map;
  std::optional<MonomialSeq> seq;
  bool is_seq() const { return seq.has_value(); }
};

struct ValueType {
  bool is_seq = false;
  SpaceExpr dom;
  SpaceExpr cod;
  Index truncation = -1;  // sequences only
  ValueType(bool sq, SpaceExpr d, SpaceExpr c, Index t = -1)
      : is_seq(sq), dom(std::move(d)), cod(std::move(c)), truncation(t) {}
};

struct TypedProgram {
  Program program;
  std::vector<std::pair<std::string, SpaceExpr>> spaces;        // declaration order
  std::vector<std::pair<std::string, ValueType>> let_types;     // declaration order
  std::vector<std::pair<std::string, PolarityInfo>> formulas;   // declaration order
};

/// Shape/degree checking. Every subterm is given a dom/cod; mixing两
/// distinct truncation degrees anywhere inside one term is an error
/// naming both. `binding_types` supplies the types of external names.
TypedProgram typecheck(const Program& p,
                       const std::vector<std::pair<std::string, ValueType>>& binding_types = {});

/// Evaluates every let declaration of a typechecked program.
/// Never raises a shape error on input that passed typecheck.
std::vector<std::pair<std::string, Value>> evaluate(
    const TypedProgram& tp, const std::vector<std::pair<std::string, Value>>& bindings = {});

}  // namespace weakll::dsl
