#include "doctest.h"

#include "vpbridge/builders.hpp"
#include "vpbridge/search.hpp"
#include "vpbridge/sums.hpp"

using namespace vpb;

TEST_CASE("small enumeration holds the two balls") {
  auto bodies = enumerate_bodies({0, 2, 0});
  int balls = 0;
  for (auto &e : bodies) {
    const Body &b = e.shape.body();
    if (is_ball_empty(b, e.shape.context)) {
      ++balls;
      CHECK(e.delta == Q(-1));
    }
    if (is_ball_arc(b, e.shape.context)) {
      ++balls;
      CHECK(e.delta == Q(0));
    }
    CHECK(e.witness.has_value());
  }
  CHECK(balls == 2);
  CHECK(bodies.size() == 2);
  CHECK_THROWS_AS(enumerate_bodies({5, 2, 0}), Error);
}

TEST_CASE("delta oracle on small limits") {
  auto r = delta_oracle({1, 4, 2});
  for (auto &s : r.issues)
    MESSAGE(s);
  CHECK(r.ok());
  CHECK(r.negative == 0);
  CHECK(r.delta_zero > 0);
  CHECK(r.class_agree == r.delta_zero);
}

TEST_CASE("canonical form ignores labels") {
  auto a = width92_diagram();
  auto b = rename_all(a, "x_");
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK(canonical_form(flip(a)) == canonical_form(a)); // symmetric stack
  CHECK(canonical_form(width74_diagram()) != canonical_form(a));
  auto c1 = s1xs2_closure(2);
  CHECK(canonical_form(c1) == canonical_form(rename_all(c1, "q")));
}

TEST_CASE("search on the unknot finds nothing better") {
  SearchBudget b;
  b.max_depth = 2;
  auto r = minimize(unknot(), b);
  CHECK(r.upper_bounds.netext == Q(0));
  CHECK(r.script.empty());
}

TEST_CASE("search reaches width 74 from width 92") {
  SearchBudget b;
  b.max_depth = 2;
  b.width_tracking = true;
  auto r = minimize(width92_diagram(), b);
  CHECK(r.upper_bounds.width <= Q(74));
  Diagram d = width92_diagram();
  for (auto &m : r.script)
    d = apply_move(d, m, MoveOptions{true});
  CHECK(canonical_form(d) == canonical_form(r.best));
}

TEST_CASE("search respects the netchi cap contract") {
  SearchBudget b;
  b.netchi_cap = -10;
  CHECK_THROWS_AS(minimize(width92_diagram(), b), Error);
  b.netchi_cap = 21; // netchi is 20, but 21 < 2*12 - 2
  b.heegaard_genus = 12;
  CHECK_THROWS_AS(minimize(width92_diagram(), b), Error);
}

TEST_CASE("search on a sum does no worse than on its parts") {
  SearchBudget b;
  b.max_depth = 3;
  auto best = [&](const Diagram &d) { return minimize(d, b).upper_bounds.netext; };
  auto a = bridge_position(2), c = bridge_position(3);
  auto g2 = glue(a, {"above", 2, {ArcRef::bridge, "", ""}, ""}, c,
                 {"below", 2, {ArcRef::bridge, "", ""}, ""});
  CHECK(best(g2.diagram) <= best(a) + best(c));
  auto t1 = theta_diagram(1), t2 = theta_diagram(2);
  auto g3 = glue(t1, {"above", 3, {}, "V2"}, t2, {"below", 3, {}, "V1"});
  CHECK(best(g3.diagram) <= best(t1) + best(t2));
}
