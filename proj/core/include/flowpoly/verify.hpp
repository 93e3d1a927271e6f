#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flowpoly/limits.hpp"
#include "flowpoly/multigraph.hpp"

namespace flowpoly {

struct GraphSummary {
  int vertices = 0;
  int edges = 0;
  int components = 0;
  int rank = 0;
  int cycle_rank = 0;
  std::vector<int> bridges;
  bool bridgeless = true;
};

GraphSummary summarize(const MultiGraph& g);

struct CheckResult {
  std::string name;
  // False when the graph does not meet the identity's hypothesis; such a
  // check never fails the report.
  bool applicable = true;
  bool passed = true;
  std::string detail;
  nlohmann::json witness;  // null unless the check failed
};

struct VerificationReport {
  GraphSummary graph;
  int q_max = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
};

// Runs every cross-method comparison and identity on g. Modulus-dependent
// checks (lifting, fibers, BS1, cone decomposition) run for q up to q_max.
VerificationReport verify(const MultiGraph& g, int q_max = 4,
                          const Limits& limits = {});

}  // namespace flowpoly
