#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "weakll/dsl.hpp"
#include "weakll/json_io.hpp"
#include "weakll/laws.hpp"

namespace {

using weakll::Index;
using weakll::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
  }
}

weakll::dsl::Value value_from_json(const Json& j) {
  weakll::dsl::Value v;
  if (j.contains("variant")) {
    v.seq = weakll::seq_from_json(j);
  } else {
    v.map = weakll::linmap_from_json(j);
  }
  return v;
}

Json value_to_json(const weakll::dsl::Value& v) {
  if (v.is_seq()) return weakll::seq_to_json(*v.seq);
  return weakll::linmap_to_json(*v.map);
}

int cmd_check_laws(const weakll::LawSuiteConfig& cfg, const std::string& out_path) {
  const weakll::LawReport report = weakll::run_law_suite(cfg);
  write_output(weakll::law_report_to_json(report), out_path);
  return report.all_pass ? 0 : 1;
}

int cmd_eval(const std::string& file, const std::string& bind_path,
             const std::string& out_path) {
  const auto program = weakll::dsl::parse(read_file(file));

  std::vector<std::pair<std::string, weakll::dsl::Value>> bindings;
  std::vector<std::pair<std::string, weakll::dsl::ValueType>> binding_types;
  if (!bind_path.empty()) {
    const Json bj = Json::parse(read_file(bind_path));
    for (const auto& [name, jv] : bj.items()) {
      weakll::dsl::Value v = value_from_json(jv);
      if (v.is_seq())
        binding_types.emplace_back(
            name, weakll::dsl::ValueType(true, v.seq->dom, v.seq->cod, v.seq->truncation));
      else
        binding_types.emplace_back(name,
                                   weakll::dsl::ValueType(false, v.map->dom, v.map->cod));
      bindings.emplace_back(name, std::move(v));
    }
  }

  const auto typed = weakll::dsl::typecheck(program, binding_types);
  const auto values = weakll::dsl::evaluate(typed, bindings);

  Json out;
  Json spaces;
  for (const auto& [name, s] : typed.spaces) spaces[name] = weakll::space_to_json(s);
  out["spaces"] = std::move(spaces);
  Json vals;
  for (const auto& [name, v] : values) vals[name] = value_to_json(v);
  out["values"] = std::move(vals);
  write_output(out, out_path);
  return 0;
}

int cmd_typecheck(const std::string& file, const std::string& out_path) {
  const auto program = weakll::dsl::parse(read_file(file));
  const auto typed = weakll::dsl::typecheck(program);
  Json out;
  Json spaces;
  for (const auto& [name, s] : typed.spaces) spaces[name] = weakll::space_to_json(s);
  out["spaces"] = std::move(spaces);
  Json morphs;
  for (const auto& [name, t] : typed.let_types) {
    Json jt;
    jt["kind"] = t.is_seq ? "monomial_seq" : "linmap";
    jt["dom"] = weakll::space_to_json(t.dom);
    jt["cod"] = weakll::space_to_json(t.cod);
    if (t.is_seq) jt["truncation"] = t.truncation;
    morphs[name] = std::move(jt);
  }
  out["morphisms"] = std::move(morphs);
  Json formulas;
  for (const auto& [name, info] : typed.formulas) {
    Json jf;
    jf["polarity"] = info.polarity == weakll::dsl::Polarity::Positive ? "positive" : "negative";
    Json shifts = Json::array();
    for (const auto& need : info.shifts_required) {
      Json js;
      static const char* kind_names[] = {"atom",   "neg",  "tensor", "par",  "with",
                                         "plus",   "bang", "whynot", "down", "up"};
      js["connective"] = kind_names[static_cast<int>(need.kind)];
      js["path"] = need.path;
      js["line"] = need.pos.line;
      js["col"] = need.pos.col;
      shifts.push_back(std::move(js));
    }
    jf["shifts_required"] = std::move(shifts);
    formulas[name] = std::move(jf);
  }
  out["formulas"] = std::move(formulas);
  write_output(out, out_path);
  return 0;
}

int cmd_dump(const std::string& expr, const std::string& out_path) {
  const weakll::SpaceExpr s = weakll::dsl::parse_space(expr);
  if (s.dim() > 100000)
    throw std::runtime_error("space too large to enumerate (dim " +
                             std::to_string(s.dim()) + ")");
  Json out;
  out["space"] = weakll::space_to_json(s);
  out["dim"] = s.dim();
  Json basis = Json::array();
  for (Index i = 0; i < s.dim(); ++i) basis.push_back(s.basis_label(i));
  out["basis"] = std::move(basis);
  write_output(out, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weakll: exact graded linear-logic semantics toolkit"};
  app.require_subcommand(1);

  weakll::LawSuiteConfig cfg;
  std::string out_path, file, bind_path, expr;

  auto* laws = app.add_subcommand("check-laws", "run the categorical law suite");
  laws->add_option("--dims", cfg.dims, "base dimensions")->delimiter(',');
  laws->add_option("--degree", cfg.degree, "exponential truncation degree");
  laws->add_option("--seed", cfg.seed, "random seed");
  laws->add_option("--filter", cfg.filter, "substring filter on law names");
  laws->add_option("--out", out_path, "write the JSON report to a file");

  auto* ev = app.add_subcommand("eval", "evaluate the morphisms of a source file");
  ev->add_option("file", file, "source file")->required();
  ev->add_option("--bind", bind_path, "JSON file with named morphism bindings");
  ev->add_option("--out", out_path, "write JSON values to a file");

  auto* tc = app.add_subcommand("typecheck", "typecheck a source file");
  tc->add_option("file", file, "source file")->required();
  tc->add_option("--out", out_path, "write JSON diagnostics to a file");

  auto* dp = app.add_subcommand("dump", "print the canonical basis of a space expression");
  dp->add_option("expr", expr, "space expression, e.g. \"bang(base 2, 3)\"")->required();
  dp->add_option("--out", out_path, "write JSON to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (laws->parsed()) return cmd_check_laws(cfg, out_path);
    if (ev->parsed()) return cmd_eval(file, bind_path, out_path);
    if (tc->parsed()) return cmd_typecheck(file, out_path);
    if (dp->parsed()) return cmd_dump(expr, out_path);
  } catch (const weakll::dsl::DslError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
