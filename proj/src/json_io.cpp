#include "weakll/json_io.hpp"

#include <stdexcept>

namespace weakll {

Json space_to_json(const SpaceExpr& s) {
  Json j;
  switch (s.kind()) {
    case SpaceKind::Base:
      j["kind"] = "base";
      j["dim"] = s.param();
      return j;
    case SpaceKind::Dual:
      j["kind"] = "dual";
      j["arg"] = space_to_json(s.left());
      return j;
    case SpaceKind::Tensor:
    case SpaceKind::Par:
    case SpaceKind::Prod:
    case SpaceKind::Coprod:
    case SpaceKind::Hom: {
      const char* names[] = {"tensor", "par", "prod", "coprod", "hom"};
      j["kind"] = names[static_cast<int>(s.kind()) - static_cast<int>(SpaceKind::Tensor)];
      j["left"] = space_to_json(s.left());
      j["right"] = space_to_json(s.right());
      return j;
    }
    case SpaceKind::SymPow:
      j["kind"] = "sympow";
      j["arg"] = space_to_json(s.left());
      j["n"] = s.param();
      return j;
    case SpaceKind::Bang:
      j["kind"] = "bang";
      j["arg"] = space_to_json(s.left());
      j["degree"] = s.param();
      return j;
    case SpaceKind::BangNonUnit:
      j["kind"] = "bang1";
      j["arg"] = space_to_json(s.left());
      j["degree"] = s.param();
      return j;
  }
  throw std::logic_error("space_to_json: bad kind");
}

SpaceExpr space_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "base") return SpaceExpr::base(j.at("dim").get<Index>());
  if (kind == "dual") return SpaceExpr::dual(space_from_json(j.at("arg")));
  if (kind == "sympow")
    return SpaceExpr::sympow(space_from_json(j.at("arg")), j.at("n").get<Index>());
  if (kind == "bang")
    return SpaceExpr::bang(space_from_json(j.at("arg")), j.at("degree").get<Index>());
  if (kind == "bang1")
    return SpaceExpr::bang_nonunit(space_from_json(j.at("arg")), j.at("degree").get<Index>());
  const SpaceExpr l = space_from_json(j.at("left"));
  const SpaceExpr r = space_from_json(j.at("right"));
  if (kind == "tensor") return SpaceExpr::tensor(l, r);
  if (kind == "par") return SpaceExpr::par(l, r);
  if (kind == "prod") return SpaceExpr::prod(l, r);
  if (kind == "coprod") return SpaceExpr::coprod(l, r);
  if (kind == "hom") return SpaceExpr::hom(l, r);
  throw std::invalid_argument("space_from_json: unknown kind: " + kind);
}

Json linmap_to_json(const LinMap& f) {
  Json j;
  j["dom"] = space_to_json(f.dom);
  j["cod"] = space_to_json(f.cod);
  j["rows"] = f.mat.rows();
  j["cols"] = f.mat.cols();
  Json rows = Json::array();
  for (Index i = 0; i < f.mat.rows(); ++i) {
    Json row = Json::array();
    for (Index c = 0; c < f.mat.cols(); ++c) row.push_back(scalar_to_string(f.mat.at(i, c)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

LinMap linmap_from_json(const Json& j) {
  const SpaceExpr dom = space_from_json(j.at("dom")), cod = space_from_json(j.at("cod"));
  const Index rows = j.at("rows").get<Index>(), cols = j.at("cols").get<Index>();
  Matrix m(rows, cols);
  const Json& entries = j.at("entries");
  if (static_cast<Index>(entries.size()) != rows)
    throw std::invalid_argument("linmap_from_json: row count mismatch");
  for (Index i = 0; i < rows; ++i) {
    const Json& row = entries.at(static_cast<size_t>(i));
    if (static_cast<Index>(row.size()) != cols)
      throw std::invalid_argument("linmap_from_json: column count mismatch");
    for (Index c = 0; c < cols; ++c)
      m.at(i, c) = scalar_from_string(row.at(static_cast<size_t>(c)).get<std::string>());
  }
  return LinMap(dom, cod, std::move(m));
}

Json monomial_to_json(const Monomial& m, bool with_shapes) {
  Json j;
  if (with_shapes) {
    j["dom"] = space_to_json(m.dom());
    j["cod"] = space_to_json(m.cod());
  }
  j["degree"] = m.degree();
  Json coeffs = Json::array();
  for (const auto& [ms, vec] : m.coeffs()) {
    for (size_t c = 0; c < vec.size(); ++c) {
      if (vec[c] == 0) continue;
      Json e;
      e["multiset"] = ms;
      e["cod"] = static_cast<Index>(c);
      e["value"] = scalar_to_string(vec[c]);
      coeffs.push_back(std::move(e));
    }
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

Monomial monomial_from_json(const Json& j, const SpaceExpr& dom, const SpaceExpr& cod,
                            Index degree) {
  Monomial m(dom, cod, degree);
  for (const auto& e : j.at("coeffs")) {
    Multiset ms = e.at("multiset").get<Multiset>();
    m.add_coeff(ms, e.at("cod").get<Index>(),
                scalar_from_string(e.at("value").get<std::string>()));
  }
  return m;
}

Json seq_to_json(const MonomialSeq& s) {
  Json j;
  j["variant"] = "bang";
  j["dom"] = space_to_json(s.dom);
  j["cod"] = space_to_json(s.cod);
  j["truncation"] = s.truncation;
  Json ms = Json::array();
  for (const auto& m : s.monomials) ms.push_back(monomial_to_json(m, false));
  j["monomials"] = std::move(ms);
  return j;
}

MonomialSeq seq_from_json(const Json& j) {
  if (j.at("variant").get<std::string>() != "bang")
    throw std::invalid_argument("seq_from_json: expected variant \"bang\"");
  const SpaceExpr dom = space_from_json(j.at("dom")), cod = space_from_json(j.at("cod"));
  const Index trunc = j.at("truncation").get<Index>();
  MonomialSeq s(dom, cod, trunc);
  const Json& ms = j.at("monomials");
  for (size_t i = 0; i < ms.size(); ++i) {
    const Index deg = ms.at(i).at("degree").get<Index>();
    if (deg < 0 || deg > trunc)
      throw std::invalid_argument("seq_from_json: degree out of range");
    s.monomials[static_cast<size_t>(deg)] = monomial_from_json(ms.at(i), dom, cod, deg);
  }
  return s;
}

Json nonunit_seq_to_json(const NonUnitSeq& s) {
  Json j;
  j["variant"] = "bang1";
  j["dom"] = space_to_json(s.dom);
  j["cod"] = space_to_json(s.cod);
  j["truncation"] = s.truncation;
  Json ms = Json::array();
  for (const auto& m : s.monomials) ms.push_back(monomial_to_json(m, false));
  j["monomials"] = std::move(ms);
  return j;
}

NonUnitSeq nonunit_seq_from_json(const Json& j) {
  if (j.at("variant").get<std::string>() != "bang1")
    throw std::invalid_argument("nonunit_seq_from_json: expected variant \"bang1\"");
  const SpaceExpr dom = space_from_json(j.at("dom")), cod = space_from_json(j.at("cod"));
  const Index trunc = j.at("truncation").get<Index>();
  NonUnitSeq s(dom, cod, trunc);
  const Json& ms = j.at("monomials");
  for (size_t i = 0; i < ms.size(); ++i) {
    const Index deg = ms.at(i).at("degree").get<Index>();
    if (deg < 1 || deg > trunc)
      throw std::invalid_argument("nonunit_seq_from_json: degree out of range");
    s.at_degree(deg) = monomial_from_json(ms.at(i), dom, cod, deg);
  }
  return s;
}

Json law_results_to_json(const std::vector<LawResult>& rs) {
  Json arr = Json::array();
  for (const auto& r : rs) {
    Json j;
    j["law"] = r.law;
    Json params;
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = std::move(params);
    j["status"] = r.status;
    if (!r.witness.empty()) j["witness"] = r.witness;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace weakll
