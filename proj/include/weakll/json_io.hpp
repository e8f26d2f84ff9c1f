#pragma once

#include <json.hpp>

#include "weakll/exponential.hpp"
#include "weakll/nonunit.hpp"

namespace weakll {

/// Ordered JSON keeps key order deterministic so reports are
/// byte-identical across runs. Scalars serialize as "p/q" strings
/// ("p" when the denominator is 1).
using Json = nlohmann::ordered_json;

Json space_to_json(const SpaceExpr& s);
SpaceExpr space_from_json(const Json& j);

Json linmap_to_json(const LinMap& f);
LinMap linmap_from_json(const Json& j);

Json monomial_to_json(const Monomial& m, bool with_shapes = true);
Monomial monomial_from_json(const Json& j, const SpaceExpr& dom, const SpaceExpr& cod,
                            Index degree);

Json seq_to_json(const MonomialSeq& s);
MonomialSeq seq_from_json(const Json& j);

Json nonunit_seq_to_json(const NonUnitSeq& s);
NonUnitSeq nonunit_seq_from_json(const Json& j);

Json law_results_to_json(const std::vector<LawResult>& rs);

}  // namespace weakll
