#pragma once

#include "vpbridge/model.hpp"

#include <string>
#include <vector>

namespace vpb {

struct Report {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
  void add(std::string s) { issues.push_back(std::move(s)); }
};

struct GhostGraph {
  std::vector<std::string> vertices;
  std::vector<GhostEdge> edges;
  int components = 0; // 0 when there are no vertices
  int isolated = 0;
  int leaves = 0;
  bool connected() const { return components == 1; }
};

GhostGraph ghost_graph(const Body &b);

// Least genus of the plus surface for which a handle presentation of the
// body exists: the minus genera, plus the cycle rank forced by ghost arcs,
// plus one handle per core loop.
int genus_lower_bound(const Body &b, const Diagram &d);

Report validate_body(const Body &b, const Diagram &d);
Report validate_diagram(const Diagram &d);

// Checks on the transverse orientation alone: coherence and acyclicity.
Report validate_orientation(const Diagram &d);

} // namespace vpb
