#include "doctest.h"

#include "vpbridge/builders.hpp"
#include "vpbridge/invariants.hpp"
#include "vpbridge/moves.hpp"
#include "vpbridge/text_io.hpp"

#include <sstream>

using namespace vpb;

TEST_CASE("builders produce valid diagrams") {
  for (int b = 1; b <= 4; ++b)
    CHECK(validate_diagram(bridge_position(b)).ok());
  CHECK(validate_diagram(width92_diagram()).ok());
  CHECK(validate_diagram(width74_diagram()).ok());
  for (int n = 1; n <= 3; ++n)
    CHECK(validate_diagram(s1xs2_closure(n)).ok());
  for (int e = 0; e <= 2; ++e)
    CHECK(validate_diagram(theta_diagram(e)).ok());
}

TEST_CASE("width of the three-level diagram is 92") {
  auto d = width92_diagram();
  CHECK(width(d) == Q(92));
  CHECK(netext(d) == Q(10));
  auto e = width74_diagram();
  CHECK(width(e) == Q(74));
  CHECK(netext(e) == Q(9));
}

TEST_CASE("thinning script reaches width 74") {
  auto run = extended_thinning(width92_diagram(), width92_to_74_script());
  REQUIRE(run.steps.size() == 2);
  CHECK(run.steps[0].width == Q(84));
  CHECK(run.steps[0].netext == Q(10));
  CHECK(run.steps[1].width == Q(74));
  CHECK(run.steps[1].netext == Q(9));
  auto a = invariants(run.result);
  auto b = invariants(width74_diagram());
  CHECK(a.width == b.width);
  CHECK(a.netext == b.netext);
  CHECK(a.netchi == b.netchi);
  CHECK(locally_thin_lint(run.result).ok());
}

TEST_CASE("identities hold on the closure family") {
  for (int n = 1; n <= 3; ++n) {
    auto d = s1xs2_closure(n);
    CHECK(netext(d) == Q(0));
    for (auto &c : check_identities(d))
      CHECK_MESSAGE(c.holds, c.name);
  }
}

TEST_CASE("untelescoping preserves netext and netchi") {
  auto d = bridge_position(3);
  UntelescopeSpec u;
  u.thick = "H";
  u.upper = "above";
  u.shape = CurveShape::SS;
  u.regions = {{0, 2}, {0, 2}, {0, 2}};
  auto e = untelescope(d, u);
  CHECK(validate_diagram(e).ok());
  CHECK(netext(e) == netext(d));
  CHECK(netchi(e) == netchi(d));
  // H+ and H- each have two pieces, F has three; consolidation tidies up
  CHECK(e.ids_with_role(Role::thick).size() == 4);
  CHECK(e.ids_with_role(Role::thin).size() == 3);
  auto t = elementary_thinning(d, u);
  CHECK(validate_diagram(t).ok());
  CHECK(netext(t) == netext(d));
  CHECK(width(t) < width(d));
}

TEST_CASE("untelescoping a genus two surface along nonseparating curves") {
  Diagram d;
  d.meta.tkind = TKind::empty;
  d.surfaces["H"] = Surface{"H", 2, 0, Role::thick};
  Body lo{"lo", "H", {}, 0, {}, {}, 0, 0};
  Body hi{"hi", "H", {}, 0, {}, {}, 0, 0};
  d.bodies["lo"] = lo;
  d.bodies["hi"] = hi;
  d.orient["H"] = {"lo", "hi"};
  REQUIRE(validate_diagram(d).ok());
  UntelescopeSpec u;
  u.thick = "H";
  u.upper = "hi";
  u.shape = CurveShape::NN1;
  u.regions = {{0, 0}};
  auto e = untelescope(d, u);
  CHECK(validate_diagram(e).ok());
  CHECK(netext(e) == netext(d));
  CHECK(netchi(e) == netchi(d));
  for (auto &id : e.ids_with_role(Role::thick))
    CHECK(e.surface(id).genus == 1);
  for (auto &id : e.ids_with_role(Role::thin))
    CHECK(e.surface(id).genus == 0);
}

TEST_CASE("move text round-trips") {
  for (auto &m : width92_to_74_script()) {
    auto text = print_move(m);
    CHECK(parse_move(text) == m);
  }
  std::istringstream in("# comment\n\nconsolidate thin=F thick=H\nunperturb thick=H side=b e=bridge\n");
  auto ms = parse_moves(in);
  REQUIRE(ms.size() == 2);
  CHECK(move_name(ms[0]) == "consolidate");
  CHECK_THROWS_AS(parse_move("wobble x=1", 7), Error);
}

TEST_CASE("moves reject bad input") {
  auto d = bridge_position(2);
  CHECK_THROWS_AS(consolidate(d, ConsolidateSpec{"nope", "H", {}}), Error);
  CHECK_THROWS_AS(unperturb(d, UnperturbSpec{"H", "ghost", {ArcRef::bridge, "", ""}}), Error);
}

TEST_CASE("unperturbing a 2-bridge gives the unknot") {
  auto d = bridge_position(2);
  auto e = unperturb(d, UnperturbSpec{"H", "above", {ArcRef::bridge, "", ""}});
  CHECK(validate_diagram(e).ok());
  CHECK(e.surface("H").punctures == 2);
  CHECK(netext(e) == Q(0));
}

TEST_CASE("consolidating a trivial product drops two surfaces") {
  auto d = bridge_position(3);
  UntelescopeSpec u;
  u.thick = "H";
  u.upper = "above";
  u.shape = CurveShape::SS;
  u.regions = {{0, 2}, {0, 2}, {0, 2}};
  auto e = untelescope(d, u);
  auto cands = consolidation_candidates(e);
  REQUIRE_FALSE(cands.empty());
  auto f = consolidate(e, cands.front());
  CHECK(f.surfaces.size() + 2 == e.surfaces.size());
  CHECK(netext(f) == netext(e));
  CHECK(netchi(f) == netchi(e));
  CHECK(width(f) == width(e));
}

TEST_CASE("extended thinning needs a first thinning step") {
  CHECK_THROWS_AS(extended_thinning(width92_diagram(), {}), Error);
  std::vector<MoveSpec> s{UnperturbSpec{"A", "body1", {ArcRef::bridge, "", ""}}};
  CHECK_THROWS_AS(extended_thinning(width92_diagram(), s), Error);
}

TEST_CASE("locally thin lint") {
  CHECK(locally_thin_lint(unknot()).ok());
  // a product between a thick sphere and a thin sphere with only vertical arcs
  auto d = sphere_stack({4, 4}, {4});
  CHECK_FALSE(locally_thin_lint(d).ok());
  auto e = width92_diagram();
  e.surfaces["F1"].punctures = 0;
  CHECK_FALSE(locally_thin_lint(e).ok());
}
