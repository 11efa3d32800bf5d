#pragma once

#include "vpbridge/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vpb {

struct IdentityCheck {
  std::string name;
  bool holds = true;
  Q lhs, rhs;
  std::string note;
};

struct InvariantReport {
  Q netext;
  Q width;
  int netchi = 0;
  std::optional<Q> gabai_width;
  std::map<std::string, Q> delta_by_body;
  std::vector<IdentityCheck> identity_checks;
};

enum class DeltaZeroClass {
  ball_arc,
  solid_torus_empty,
  solid_torus_core,
  vertical_ghost_type4,
  not_delta_zero
};
const char *to_string(DeltaZeroClass c);

Q ext(const Surface &s);
Q ext(const Diagram &d, const std::vector<std::string> &ids);

Q netext(const Diagram &d);
Q width(const Diagram &d);
int netchi(const Diagram &d);
std::optional<Q> gabai_width(const Diagram &d);

// ext(plus) - ext(minus), with a pocket vertex counted as drilled
Q delta(const Body &b, const Diagram &d);

DeltaZeroClass classify_delta_zero(const Body &b, const Diagram &d);

// Euler characteristic of T, rebuilt from the arc decorations
int chi_T(const Diagram &d);
// surfaces of the boundary of M proper (not the drilled vertex spheres)
std::vector<std::string> boundary_ids(const Diagram &d);

std::vector<IdentityCheck> check_identities(const Diagram &d);

struct NonnegativityResult {
  Q bound;
  bool satisfied = false;
  bool width_checked = false;
  bool width_ok = true;
};
bool width_hypothesis(const Diagram &d);
NonnegativityResult nonnegativity_bound(const Diagram &d);

// throws Error if the diagram is not valid
InvariantReport invariants(const Diagram &d, bool with_identities = false);

std::string format_report(const InvariantReport &r, const Diagram &d);

} // namespace vpb
