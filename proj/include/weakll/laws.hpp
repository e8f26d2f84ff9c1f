#pragma once

#include <cstdint>

#include "weakll/exponential.hpp"
#include "weakll/json_io.hpp"
#include "weakll/rng.hpp"

namespace weakll {

struct LawSuiteConfig {
  std::vector<Index> dims = {1, 2};  // base dimensions the laws range over
  Index degree = 3;                  // exponential truncation
  std::uint64_t seed = 42;
  std::string filter;                // substring on law names; empty = all
};

struct LawReport {
  LawSuiteConfig config;
  std::vector<LawResult> results;  // canonical order
  bool all_pass = false;           // every result "pass" or "skipped"
};

/// Runs the categorical law suite. Independent laws are evaluated
/// concurrently on deterministically forked random streams and the
/// report is assembled in canonical order, so a fixed seed yields a
/// byte-identical report.
LawReport run_law_suite(const LawSuiteConfig& config);

Json law_report_to_json(const LawReport& report);

/// Deterministic random space expression of total dimension <= max_dim.
SpaceExpr random_space(Rng& rng, Index max_dim, Index depth = 0);

}  // namespace weakll
