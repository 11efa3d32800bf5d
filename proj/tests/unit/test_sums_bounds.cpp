#include "doctest.h"

#include "vpbridge/bounds.hpp"
#include "vpbridge/builders.hpp"
#include "vpbridge/invariants.hpp"
#include "vpbridge/sums.hpp"

using namespace vpb;

TEST_CASE("kind 2 glue adds netext and splits back") {
  auto a = bridge_position(2);
  auto b = bridge_position(3);
  SumPoint s1{"above", 2, {ArcRef::bridge, "", ""}, ""};
  SumPoint s2{"below", 2, {ArcRef::bridge, "", ""}, ""};
  auto g = glue(a, s1, b, s2);
  REQUIRE(validate_diagram(g.diagram).ok());
  CHECK(g.diagram.surface(g.sphere).punctures == 2);
  CHECK(netext(g.diagram) == netext(a) + netext(b));
  auto f = split_prime(g.diagram);
  CHECK(f.p2 == 1);
  CHECK(f.p3 == 0);
  CHECK(f.factors.size() == 2);
  CHECK(additivity_check(f.factors, g.diagram, f.p2, f.p3).ok());
}

TEST_CASE("kind 3 glue merges drilled vertices") {
  auto a = theta_diagram(1);
  auto b = theta_diagram(2);
  SumPoint s1{"above", 3, {}, "V2"};
  SumPoint s2{"below", 3, {}, "V1"};
  auto g = glue(a, s1, b, s2);
  REQUIRE(validate_diagram(g.diagram).ok());
  CHECK(g.diagram.surface(g.sphere).punctures == 3);
  CHECK(g.diagram.surface(g.sphere).role == Role::thin);
  auto f = split_prime(g.diagram);
  CHECK(f.p3 == 1);
  CHECK(f.factors.size() == 2);
  CHECK(additivity_check(f.factors, g.diagram, f.p2, f.p3).ok());
}

TEST_CASE("sum points parse") {
  auto p = parse_sum_point("above/bridge", 2);
  CHECK(p.body == "above");
  CHECK(p.arc.kind == ArcRef::bridge);
  auto q = parse_sum_point("below/V1", 3);
  CHECK(q.vertex == "V1");
  CHECK(print_sum_point(q) == "below/V1");
  CHECK_THROWS_AS(parse_sum_point("nobody", 2), Error);
}

TEST_CASE("tunnel bounds") {
  SummandProfile p;
  p.n = 3;
  p.j = 2;
  p.tunnel = {1, 2, 4};
  auto r = tunnel_bounds(p);
  CHECK(r.lower == 1 + 3);
  CHECK(r.upper == 2 + 7);
  p.j = 4;
  CHECK_THROWS_AS(tunnel_bounds(p), Error);
  p.j = 0;
  p.tunnel = {0, 1, 1};
  CHECK_THROWS_AS(tunnel_bounds(p), Error);
}

TEST_CASE("morimoto bounds") {
  auto m = morimoto_bounds(1, 2);
  CHECK(m.max_summands == 2);
  CHECK(m.min_11 == 2);
  CHECK(m.min_2bridge == 1);
  auto z = morimoto_bounds(2, 0);
  CHECK(z.max_summands == 1);
  CHECK(z.min_11 == 0);
  CHECK(z.min_2bridge == 0);
  CHECK_THROWS_AS(morimoto_bounds(0, 0), Error);
}

TEST_CASE("bridge superadditivity and summand bound") {
  CHECK(bridge_superadditivity_check(1, 3, {{0, 2, false}, {1, 1, false}}).ok());
  CHECK_FALSE(bridge_superadditivity_check(0, 2, {{0, 2, false}, {0, 2, false}}).ok());
  CHECK_FALSE(bridge_superadditivity_check(0, 4, {{0, 2, true}, {0, 2, true}}).ok());
  CHECK(schubert_summand_bound(Q(1)) == 1);
  CHECK(schubert_summand_bound(Q(5, 2)) == 2);
  CHECK_THROWS_AS(schubert_summand_bound(Q(-1)), Error);
}

TEST_CASE("flip is an involution preserving invariants") {
  auto d = width92_diagram();
  CHECK(flip(flip(d)) == d);
  auto f = flip(d);
  CHECK(validate_diagram(f).ok());
  CHECK(netext(f) == netext(d));
  CHECK(width(f) == width(d));
  CHECK(netchi(f) == netchi(d));
}

TEST_CASE("summing with the unknot keeps width") {
  auto d = width74_diagram();
  auto g = glue(d, {"c1", 2, {ArcRef::bridge, "", ""}, ""}, unknot(),
                {"below", 2, {ArcRef::bridge, "", ""}, ""});
  REQUIRE(validate_diagram(g.diagram).ok());
  CHECK(width(g.diagram) == width(d));
  CHECK(netext(g.diagram) == netext(d));
  CHECK(netchi(g.diagram) == netchi(d) + netchi(unknot()) + 2);
}

TEST_CASE("a diagram without summing spheres is its own factor") {
  auto f = split_prime(width74_diagram());
  CHECK(f.factors.size() == 1);
  CHECK(f.p2 == 0);
  CHECK(f.p3 == 0);
  CHECK(width(f.factors[0]) == Q(74));
}

TEST_CASE("the cap of a thrice-punctured scar is a pocket ball") {
  auto c = cap_body("S"); // a one-body context, not a whole diagram
  bool pocket = false;
  for (auto &[id, b] : c.bodies)
    pocket |= b.pockets == 1 && validate_body(b, c).ok();
  CHECK(pocket);
}
