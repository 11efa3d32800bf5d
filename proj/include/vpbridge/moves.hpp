#pragma once

#include "vpbridge/model.hpp"
#include "vpbridge/validate.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vpb {

// An arc decoration of a body, named by type.
struct ArcRef {
  enum Kind { none, bridge, vertical, ghost, loop } kind = none;
  std::string a, b; // vertical: a; ghost: a, b
  bool operator==(const ArcRef &) const = default;
};
ArcRef parse_arc_ref(const std::string &s);
std::string print_arc_ref(const ArcRef &r);

// How the two curves c+ = bd D+ and c- = bd D- sit in the thick surface.
//   NN1: both nonseparating, jointly nonseparating (one region)
//   NN2: both nonseparating, jointly separating (two regions, both curves join them)
//   SN:  c+ separates region 0 from region 1, c- nonseparating inside region 0
//   NS:  c- separates region 0 from region 1, c+ nonseparating inside region 0
//   SS:  region 0 -c+- region 1 -c-- region 2
enum class CurveShape { NN1, NN2, SN, NS, SS };
const char *to_string(CurveShape s);
CurveShape parse_shape(const std::string &s);

struct Region {
  int genus = 0;
  int punctures = 0;
  bool operator==(const Region &) const = default;
};

// What happens to one of the two old bodies when it is cut along its disc.
// Pieces are numbered like the components of the compressed surface, in
// order of their least region index.
struct CutSide {
  std::map<std::string, int> minus_piece; // default piece 0
  std::optional<int> bridge0;             // uncut bridges kept in piece 0; derived when absent
  int loops0 = -1;                        // uncut loops kept in piece 0; -1 means all
  ArcRef cut;                             // the arc the disc meets (disc meets T once)
  bool operator==(const CutSide &) const = default;
};

struct UntelescopeSpec {
  std::string thick;
  std::string upper; // the body holding D+
  int i = 0, j = 0;
  CurveShape shape = CurveShape::NN1;
  std::vector<Region> regions;
  CutSide upper_side, lower_side;
  bool operator==(const UntelescopeSpec &) const = default;
};

struct ConsolidateSpec {
  std::string thin, thick;
  std::vector<int> match; // optional endpoint permutation at the product
  bool operator==(const ConsolidateSpec &) const = default;
};

enum class DestabKind {
  plain,
  meridional,
  boundary,
  meridional_boundary,
  ghost_boundary,
  ghost_meridional_boundary
};
const char *to_string(DestabKind k);
DestabKind parse_destab_kind(const std::string &s);

struct DestabilizeSpec {
  DestabKind kind = DestabKind::plain;
  std::string thick;
  std::string disc; // body holding the disc (the side that loses genus or the G set)
  ArcRef cut;       // meridional: the arc the cut disc meets
  std::vector<std::string> gset;
  std::vector<GhostEdge> bb;        // bridges of the other side that become ghost arcs
  std::map<std::string, int> bh;    // bridges of the other side that become verticals to G
  std::vector<GhostEdge> vf;        // (F, G) verticals to F that become ghost arcs
  ArcRef hat;                       // meridional boundary: the distinguished arc
  bool operator==(const DestabilizeSpec &) const = default;
};

struct UnperturbSpec {
  std::string thick;
  std::string side; // body that loses the bridge arc a
  ArcRef e;         // the arc on the other side continuing a' + a
  bool operator==(const UnperturbSpec &) const = default;
};

struct RemoveArcSpec {
  std::string thick;
  std::string side; // body holding the removable bridge arc
  ArcRef e1, e2;    // arcs on the other side at the two ends; e2 none = same bridge as e1
  bool operator==(const RemoveArcSpec &) const = default;
};

struct ThinSpec {
  UntelescopeSpec u;
  bool operator==(const ThinSpec &) const = default;
};

using MoveSpec = std::variant<UntelescopeSpec, ThinSpec, ConsolidateSpec, DestabilizeSpec,
                              UnperturbSpec, RemoveArcSpec>;

struct MoveOptions {
  bool track_width = false; // untelescoping must meet the width hypotheses
};

// Any bookkeeping failure throws Error. Results are validated diagrams.
Diagram untelescope(const Diagram &d, const UntelescopeSpec &u, const MoveOptions &o = {});
Diagram consolidate(const Diagram &d, const ConsolidateSpec &c);
Diagram destabilize(const Diagram &d, const DestabilizeSpec &s);
Diagram unperturb(const Diagram &d, const UnperturbSpec &s);
Diagram remove_removable_arc(const Diagram &d, const RemoveArcSpec &s);
Diagram elementary_thinning(const Diagram &d, const UntelescopeSpec &u, const MoveOptions &o = {});
Diagram apply_move(const Diagram &d, const MoveSpec &m, const MoveOptions &o = {});

// Pairs (thin, thick) that cobound a trivial product which can be consolidated.
std::vector<ConsolidateSpec> consolidation_candidates(const Diagram &d);

struct StepRecord {
  MoveSpec move;
  Q netext, width;
  int netchi = 0;
};

struct ThinningRun {
  Diagram result;
  std::vector<StepRecord> steps; // invariants after each step
};

// Applies the script, asserting after every step that netchi and netext do
// not increase, and width too when the width hypotheses hold.
ThinningRun extended_thinning(const Diagram &d, const std::vector<MoveSpec> &script,
                              const MoveOptions &o = {}, std::size_t budget = 10000);

Report locally_thin_lint(const Diagram &d);

// Extents around one elementary thinning of a thick surface of extent x:
// x'+ = x + i - 1 - x''+, x'- = x + j - 1 - x''-, y = x + i + j - 2 - x''+ - x''-.
// lhs = x'+^2 + x'-^2 - y^2 and rhs = x^2 - 2((j-1) - x''-)((i-1) - x''+).
struct WidthAlgebra {
  Q xp, xm, y, lhs, rhs;
};
WidthAlgebra thinning_width_algebra(const Q &x, int i, int j, const Q &xpp, const Q &xmm);

std::string move_name(const MoveSpec &m);
std::string print_move(const MoveSpec &m);
MoveSpec parse_move(const std::string &line, int lineno = 1);
std::vector<MoveSpec> parse_moves(std::istream &in);
std::vector<MoveSpec> load_moves(const std::string &path);

} // namespace vpb
