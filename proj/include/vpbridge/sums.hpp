#pragma once

#include "vpbridge/model.hpp"
#include "vpbridge/moves.hpp"
#include "vpbridge/validate.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace vpb {

// Where a summing sphere goes. Kind 2: a point on an arc decoration of the
// body. Kind 3: a drilled trivalent vertex sphere among the body's minus
// surfaces.
struct SumPoint {
  std::string body;
  int kind = 2;
  ArcRef arc;         // kind 2
  std::string vertex; // kind 3
};
SumPoint parse_sum_point(const std::string &s, int kind);
std::string print_sum_point(const SumPoint &p);

// Reverses every transverse orientation.
Diagram flip(const Diagram &d);

// Copies d with every surface and body id prefixed.
Diagram rename_all(const Diagram &d, const std::string &prefix);

struct GlueResult {
  Diagram diagram;
  std::string sphere; // id of the new thin summing sphere
  bool flipped = false;
};
// d2's ids are prefixed when they clash with d1's.
GlueResult glue(const Diagram &d1, const SumPoint &s1, const Diagram &d2, const SumPoint &s2,
                const std::string &prefix = "r_");

struct DualEdge {
  int a = 0, b = 0; // factor indices
  int kind = 2;
  std::string sphere;
};

struct FactorizationResult {
  std::vector<Diagram> factors;
  int p2 = 0, p3 = 0;
  std::vector<DualEdge> dual_tree;
  int pruned_unknots = 0, pruned_thetas = 0;
};

// Splits along thin twice- and thrice-punctured spheres. Twice-punctured
// scars are capped with a ball and arc; thrice-punctured scars become
// drilled trivalent vertices.
FactorizationResult split_prime(const Diagram &d);

// The capping ball of a thrice-punctured scar as a body with one pocket
// tree, in a one-body context where the scar is a thick sphere.
Diagram cap_body(const std::string &sphere_id);

bool is_unknot_factor(const Diagram &d);
bool is_trivial_theta_factor(const Diagram &d);

Report additivity_check(const std::vector<Diagram> &parts, const Diagram &whole, int p2, int p3);

} // namespace vpb
