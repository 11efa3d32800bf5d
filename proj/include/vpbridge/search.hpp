#pragma once

#include "vpbridge/handles.hpp"
#include "vpbridge/invariants.hpp"
#include "vpbridge/model.hpp"
#include "vpbridge/moves.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vpb {

// ---------------------------------------------------------------- bodies

struct BodyLimits {
  int max_genus = 2;
  int max_punctures = 6;
  int max_minus = 3;
};

// A body together with a one-body context holding its plus surface "H" and
// its minus surfaces "F1".. .
struct BodyShape {
  Diagram context;
  std::string body_id;
  const Body &body() const { return context.body(body_id); }
};
BodyShape make_shape(const Body &b, const Diagram &d);

// Key invariant under renaming of the minus surfaces.
std::string body_key(const Body &b, const Diagram &d);

struct EnumeratedBody {
  BodyShape shape;
  std::string key;
  std::optional<HandlePresentation> witness; // empty: unrealizable
  Q delta;
};

// Every summary within the limits that passes validate_body, with pocket
// balls included. Throws when the limits exceed the guard.
std::vector<EnumeratedBody> enumerate_bodies(const BodyLimits &lim);

// Delta-zero classes read off from template handle presentations of each
// class, keyed by body_key of the derived summary.
std::map<std::string, std::vector<DeltaZeroClass>> delta_zero_templates(const BodyLimits &lim);

struct OracleReport {
  std::size_t bodies = 0;
  std::size_t unrealizable = 0;
  std::size_t negative = 0;       // delta < 0 other than the empty ball
  std::size_t delta_zero = 0;
  std::size_t class_agree = 0;
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};
OracleReport delta_oracle(const BodyLimits &lim);

// ---------------------------------------------------------------- diagrams

// Same string for isomorphic diagrams: refinement of surface and body
// colours, then the least serialization over individualizations.
std::string canonical_form(const Diagram &d);

struct SearchBudget {
  int max_depth = 2;
  std::size_t max_diagrams = 50000;
  std::optional<int> netchi_cap; // empty: no cap
  bool width_tracking = false;
  std::size_t beam = 16;
  std::size_t max_certificates = 20000; // untelescope certificates per diagram
  std::optional<int> heegaard_genus;    // checked against the cap: x >= 2g - 2
};

struct SearchResult {
  Diagram best;
  InvariantReport upper_bounds;
  std::vector<MoveSpec> script; // replays d0 to best
  bool exhausted = false;       // stopped by max_diagrams
  std::size_t explored = 0;
};

// Candidate moves generated from the diagram's combinatorics. Not all of
// them apply.
std::vector<MoveSpec> candidate_moves(const Diagram &d, const SearchBudget &b);

// Beam search for small netext (and width when tracked). The result is an
// upper bound only.
SearchResult minimize(const Diagram &d0, const SearchBudget &b);

} // namespace vpb
