#pragma once

#include "vpbridge/model.hpp"
#include "vpbridge/moves.hpp"

#include <vector>

namespace vpb {

// One thick sphere meeting T in 2b points between two balls of b bridge arcs.
Diagram bridge_position(int b);
inline Diagram unknot() { return bridge_position(1); }

// A knot in S^3 as a stack of thick spheres with the given puncture counts,
// separated by thin spheres with the given puncture counts. Bodies are
// filled with vertical arcs to the thin surface below and bridge arcs.
Diagram sphere_stack(const std::vector<int> &thick, const std::vector<int> &thin);

// The three-level diagram of width 92: thick spheres 10,10,10, thin 4,4.
Diagram width92_diagram();
// The thinner diagram of width 74: thick 6,10,10,6, thin 4,4,4.
Diagram width74_diagram();
// Script turning width92_diagram() into a copy of width74_diagram() up to
// relabeling: one elementary thinning, then one unperturbing.
std::vector<MoveSpec> width92_to_74_script();

// Braid closure in S^1 x S^2: 2n thick twice-punctured spheres bounding
// (ball, arc) pieces, alternating with slabs between thin spheres that hold
// one ghost arc and two vertical arcs each. n >= 1; netext 0.
Diagram s1xs2_closure(int n);

// theta graph with the two vertices drilled; thick sphere meeting T in
// 3 + 2*extra points. extra = 0 is the trivial theta (netext 1/2).
Diagram theta_diagram(int extra);

} // namespace vpb
