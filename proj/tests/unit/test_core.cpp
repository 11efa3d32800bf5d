#include "doctest.h"

#include "vpbridge/handles.hpp"
#include "vpbridge/invariants.hpp"
#include "vpbridge/text_io.hpp"
#include "vpbridge/validate.hpp"

using namespace vpb;

namespace {

const char *kUnknot = R"(
meta tkind=link valences=[] flags=irr,ssep gbound=none
surface H role=thick genus=0 punctures=2
body a plus=H bridge=1
body b plus=H bridge=1
orient H a b
)";

bool mentions(const Report &r, const std::string &needle) {
  for (auto &s : r.issues)
    if (s.find(needle) != std::string::npos)
      return true;
  return false;
}

} // namespace

TEST_CASE("extent of spheres and bridge spheres") {
  CHECK(Surface{"s", 0, 2, Role::thick}.ext() == Q(0));
  CHECK(Surface{"s", 0, 10, Role::thick}.ext() == Q(4));
  for (int b = 1; b < 6; ++b)
    CHECK(Surface{"s", 0, 2 * b, Role::thick}.ext() == Q(b - 1));
  CHECK(Surface{"s", 0, 0, Role::thick}.ext() == Q(-1));
}

TEST_CASE("unknot diagram is valid and its identities hold") {
  Diagram d = parse_diagram_string(kUnknot);
  CHECK(validate_diagram(d).ok());
  auto r = invariants(d, true);
  CHECK(r.netext == Q(0));
  CHECK(r.width == Q(0));
  for (auto &c : r.identity_checks)
    CHECK_MESSAGE(c.holds, c.name);
  auto nb = nonnegativity_bound(d);
  CHECK(nb.bound == Q(0));
  CHECK(nb.satisfied);
}

TEST_CASE("a two-cycle of bodies is a closed flow line") {
  Diagram d = parse_diagram_string(R"(
surface H role=thick genus=0 punctures=2
surface K role=thick genus=0 punctures=2
surface F role=thin genus=0 punctures=2
body a plus=H bridge=1
body b plus=H minus=[F] vertical={F:2}
body c plus=K minus=[F] vertical={F:2}
body e plus=K bridge=1
orient H a b
orient F b c
orient K c e
)");
  CHECK(validate_diagram(d).ok());
  d.orient["F"] = {"c", "b"};
  Report r = validate_diagram(d);
  CHECK_FALSE(r.ok());
}

TEST_CASE("two-cycle between two bodies sharing two surfaces") {
  Diagram d = parse_diagram_string(R"(
surface H role=thick genus=0 punctures=2
surface F role=thin genus=0 punctures=2
body a plus=H minus=[F] vertical={F:2}
body b plus=H minus=[F] vertical={F:2}
orient H a b
orient F b a
)");
  Report r = validate_diagram(d);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "closed flow line"));
}

TEST_CASE("validate_body bookkeeping and once-punctured spheres") {
  Diagram d = parse_diagram_string(kUnknot);
  d.surfaces["P"] = Surface{"P", 0, 3, Role::thick};
  Body b{"x", "P", {}, 2, {}, {}, 0, 0};
  CHECK_FALSE(validate_body(b, d).ok());
  d.surfaces["S"] = Surface{"S", 0, 1, Role::thin};
  d.surfaces["Q"] = Surface{"Q", 0, 1, Role::thick};
  Body c{"y", "Q", {"S"}, 0, {{"S", 1}}, {}, 0, 0};
  Report r = validate_body(c, d);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "once-punctured"));
  Body ok{"z", "H", {}, 1, {}, {}, 0, 0};
  CHECK(validate_body(ok, d).ok());
}

TEST_CASE("ghost graph shapes") {
  Body b{"c", "H", {"T"}, 0, {}, {}, 0, 0};
  GhostGraph g = ghost_graph(b);
  CHECK(g.isolated == 1);
  CHECK(g.components == 1);
  Body e{"c", "H", {"A", "B"}, 0, {}, {ghost_edge("A", "B")}, 0, 0};
  g = ghost_graph(e);
  CHECK(g.leaves == 2);
  CHECK(g.isolated == 0);
  Body p{"c", "H", {"A", "B", "C"}, 0, {}, {ghost_edge("A", "B"), ghost_edge("B", "C")}, 0, 0};
  g = ghost_graph(p);
  CHECK(g.leaves == 2);
  CHECK(g.connected());
}

TEST_CASE("derive_summary on small presentations") {
  HandlePresentation h;
  h.zero.push_back({ZeroHandle::ball_arc});
  DerivedBody r = derive_summary(h);
  CHECK(r.plus_genus == 0);
  CHECK(r.plus_punctures == 2);
  CHECK(r.body.bridge == 1);

  HandlePresentation t;
  t.zero.push_back({ZeroHandle::product, "T", 1, 0});
  r = derive_summary(t);
  CHECK(r.plus_genus == 1);
  CHECK(r.plus_punctures == 0);
  CHECK(r.body.bridge == 0);
  CHECK(r.body.vertical.empty());
  Diagram ctx = r.context();
  CHECK(delta(r.body, ctx) == Q(0));

  // every binding of one endpoint of each arc gives one bridge arc
  for (int e1 = 0; e1 < 2; ++e1)
    for (int e2 = 0; e2 < 2; ++e2) {
      HandlePresentation two;
      two.zero.push_back({ZeroHandle::ball_arc});
      two.zero.push_back({ZeroHandle::ball_arc});
      two.one.push_back({true, 0, 1, {{0, e1}, {1, e2}}});
      r = derive_summary(two);
      CHECK(r.plus_genus == 0);
      CHECK(r.plus_punctures == 2);
      CHECK(r.body.bridge == 1);
      CHECK(validate_body(r.body, r.context()).ok());
    }
}

TEST_CASE("derive_summary errors") {
  HandlePresentation h;
  h.zero.push_back({ZeroHandle::ball_arc});
  h.zero.push_back({ZeroHandle::ball_arc});
  CHECK_THROWS_WITH_AS(derive_summary(h), doctest::Contains("disconnected"), Error);
  h.one.push_back({true, 0, 1, {{0, 0}}});
  CHECK_THROWS_WITH_AS(derive_summary(h), doctest::Contains("dangling"), Error);
  h.one[0].bindings = {{0, 0}, {1, 7}};
  CHECK_THROWS_WITH_AS(derive_summary(h), doctest::Contains("dangling"), Error);
}

TEST_CASE("a loop closed by a cored handle") {
  HandlePresentation h;
  h.zero.push_back({ZeroHandle::ball_arc});
  h.one.push_back({true, 0, 0, {{0, 0}, {0, 1}}});
  DerivedBody r = derive_summary(h);
  CHECK(r.plus_genus == 1);
  CHECK(r.plus_punctures == 0);
  CHECK(r.body.loops == 1);
  CHECK(classify_delta_zero(r.body, r.context()) == DeltaZeroClass::solid_torus_core);
}

TEST_CASE("delta of the basic bodies") {
  Diagram d;
  d.surfaces["S"] = Surface{"S", 0, 0, Role::thick};
  d.surfaces["A"] = Surface{"A", 0, 2, Role::thick};
  Body empty{"e", "S", {}, 0, {}, {}, 0, 0};
  Body arc{"a", "A", {}, 1, {}, {}, 0, 0};
  CHECK(delta(empty, d) == Q(-1));
  CHECK(delta(arc, d) == Q(0));
  CHECK(classify_delta_zero(arc, d) == DeltaZeroClass::ball_arc);
}

TEST_CASE("type 4 classification needs the genus count") {
  Diagram d;
  d.surfaces["X"] = Surface{"X", 0, 3, Role::thin};
  d.surfaces["Y"] = Surface{"Y", 0, 3, Role::thin};
  d.surfaces["H1"] = Surface{"H1", 1, 2, Role::thick};
  d.surfaces["H0"] = Surface{"H0", 0, 4, Role::thick};
  Body two{"c", "H1", {"X", "Y"}, 0, {{"X", 1}, {"Y", 1}}, {ghost_edge("X", "Y"), ghost_edge("X", "Y")}, 0, 0};
  CHECK(classify_delta_zero(two, d) == DeltaZeroClass::vertical_ghost_type4);
  Body one{"c", "H1", {"X", "Y"}, 0, {{"X", 2}, {"Y", 2}}, {ghost_edge("X", "Y")}, 0, 0};
  d.surfaces["H1"].punctures = 4;
  CHECK_THROWS_AS(classify_delta_zero(one, d), Error);
  Body flat{"c", "H0", {"X", "Y"}, 0, {{"X", 2}, {"Y", 2}}, {ghost_edge("X", "Y")}, 0, 0};
  CHECK(classify_delta_zero(flat, d) == DeltaZeroClass::vertical_ghost_type4);
  Body bridged{"c", "H0", {"X", "Y"}, 1, {{"X", 1}, {"Y", 1}}, {ghost_edge("X", "Y"), ghost_edge("X", "Y")}, 0, 0};
  d.surfaces["H0"].punctures = 4;
  // genus bound fails here, so classification is refused
  CHECK_THROWS_AS(classify_delta_zero(bridged, d), Error);
}

TEST_CASE("text format round trip") {
  Diagram d = parse_diagram_string(kUnknot);
  std::string s = print_diagram(d);
  CHECK(parse_diagram_string(s) == d);
  CHECK(print_diagram(parse_diagram_string(s)) == s);
  CHECK_THROWS_WITH_AS(parse_diagram_string("surface H role=thick genus=x punctures=2"),
                       doctest::Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(parse_diagram_string("\n\nbogus H"), doctest::Contains("line 3"), Error);
}

TEST_CASE("two-bridge Gabai width") {
  Diagram d = parse_diagram_string(R"(
surface H role=thick genus=0 punctures=4
body a plus=H bridge=2
body b plus=H bridge=2
orient H a b
)");
  auto r = invariants(d);
  CHECK(r.netext == Q(1));
  REQUIRE(r.gabai_width);
  CHECK(*r.gabai_width == Q(8));
}
