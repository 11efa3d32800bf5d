#include "vpbridge/builders.hpp"

namespace vpb {

namespace {

void add_surface(Diagram &d, const std::string &id, int g, int p, Role r) {
  d.surfaces[id] = Surface{id, g, p, r};
}

void add_body(Diagram &d, Body b) {
  b.normalize();
  d.bodies[b.id] = b;
}

} // namespace

Diagram bridge_position(int b) {
  if (b < 1)
    throw Error("bridge position needs at least one bridge");
  Diagram d;
  d.meta.tkind = TKind::link;
  d.meta.irreducible = true;
  d.meta.spheres_separate = true;
  d.meta.surfaces_separate = true;
  add_surface(d, "H", 0, 2 * b, Role::thick);
  add_body(d, Body{"below", "H", {}, b, {}, {}, 0, 0});
  add_body(d, Body{"above", "H", {}, b, {}, {}, 0, 0});
  d.orient["H"] = {"below", "above"};
  return d;
}

Diagram sphere_stack(const std::vector<int> &thick, const std::vector<int> &thin) {
  if (thick.empty() || thin.size() + 1 != thick.size())
    throw Error("sphere stack needs one more thick level than thin levels");
  Diagram d;
  d.meta.tkind = TKind::link;
  d.meta.irreducible = true;
  d.meta.spheres_separate = true;
  d.meta.surfaces_separate = true;
  const size_t n = thick.size();
  std::vector<std::string> hs, fs;
  for (size_t k = 0; k < n; ++k) {
    hs.push_back("H" + std::to_string(k + 1));
    add_surface(d, hs.back(), 0, thick[k], Role::thick);
  }
  for (size_t k = 0; k + 1 < n; ++k) {
    fs.push_back("F" + std::to_string(k + 1));
    add_surface(d, fs.back(), 0, thin[k], Role::thin);
  }
  // level k has a body below H_k (minus F_{k-1}) and above H_k (minus F_k)
  std::vector<std::string> below(n), above(n);
  for (size_t k = 0; k < n; ++k) {
    below[k] = "c" + std::to_string(2 * k);
    above[k] = "c" + std::to_string(2 * k + 1);
    auto fill = [&](const std::string &id, const std::string *f) {
      Body b{id, hs[k], {}, 0, {}, {}, 0, 0};
      int p = thick[k];
      if (f) {
        int q = d.surface(*f).punctures;
        if (q > p || (p - q) % 2)
          throw Error("sphere stack: thin level " + *f + " does not fit under " + hs[k]);
        b.minus = {*f};
        b.vertical[*f] = q;
        p -= q;
      } else if (p % 2) {
        throw Error("sphere stack: odd punctures on an end level");
      }
      b.bridge = p / 2;
      add_body(d, b);
    };
    fill(below[k], k > 0 ? &fs[k - 1] : nullptr);
    fill(above[k], k + 1 < n ? &fs[k] : nullptr);
  }
  for (size_t k = 0; k < n; ++k)
    d.orient[hs[k]] = {below[k], above[k]};
  for (size_t k = 0; k + 1 < n; ++k)
    d.orient[fs[k]] = {above[k], below[k + 1]};
  return d;
}

Diagram width92_diagram() {
  Diagram d;
  d.meta.tkind = TKind::link;
  d.meta.irreducible = true;
  d.meta.spheres_separate = true;
  d.meta.surfaces_separate = true;
  add_surface(d, "A", 0, 10, Role::thick);
  add_surface(d, "B", 0, 10, Role::thick);
  add_surface(d, "C", 0, 10, Role::thick);
  add_surface(d, "F1", 0, 4, Role::thin);
  add_surface(d, "F2", 0, 4, Role::thin);
  add_body(d, Body{"ball0", "A", {}, 5, {}, {}, 0, 0});
  add_body(d, Body{"body1", "A", {"F1"}, 3, {{"F1", 4}}, {}, 0, 0});
  add_body(d, Body{"body2", "B", {"F1"}, 3, {{"F1", 4}}, {}, 0, 0});
  add_body(d, Body{"body3", "B", {"F2"}, 3, {{"F2", 4}}, {}, 0, 0});
  add_body(d, Body{"body4", "C", {"F2"}, 3, {{"F2", 4}}, {}, 0, 0});
  add_body(d, Body{"ball5", "C", {}, 5, {}, {}, 0, 0});
  d.orient["A"] = {"ball0", "body1"};
  d.orient["F1"] = {"body1", "body2"};
  d.orient["B"] = {"body2", "body3"};
  d.orient["F2"] = {"body3", "body4"};
  d.orient["C"] = {"body4", "ball5"};
  return d;
}

Diagram width74_diagram() { return sphere_stack({6, 10, 10, 6}, {4, 4, 4}); }

std::vector<MoveSpec> width92_to_74_script() {
  // Split A by two separating curves bounding discs on both sides: the upper
  // disc cuts off 4 punctures, the lower one 2. Consolidating the two
  // trivial products leaves thick spheres of 6 and 8 punctures around a
  // thin 4-punctured sphere; unperturbing the 8 brings it down to 6.
  UntelescopeSpec u;
  u.thick = "A";
  u.upper = "ball0";
  u.i = 0;
  u.j = 0;
  u.shape = CurveShape::SS;
  u.regions = {{0, 4}, {0, 4}, {0, 2}};
  UnperturbSpec p{"Am", "body1", ArcRef{ArcRef::bridge, "", ""}};
  return {ThinSpec{u}, p};
}

Diagram s1xs2_closure(int n) {
  if (n < 1)
    throw Error("closure needs at least one pair of slabs");
  const int m = 2 * n;
  Diagram d;
  d.meta.tkind = TKind::link;
  auto H = [](int k) { return "H" + std::to_string(k); };
  auto F = [&](int k) { return "F" + std::to_string(((k - 1) % m + m) % m + 1); };
  auto Bb = [](int k) { return "ball" + std::to_string(k); };
  auto C = [&](int k) { return "slab" + std::to_string(((k - 1) % m + m) % m + 1); };
  for (int k = 1; k <= m; ++k) {
    add_surface(d, H(k), 0, 2, Role::thick);
    add_surface(d, F(k), 0, 2, Role::thin);
  }
  for (int k = 1; k <= m; ++k) {
    add_body(d, Body{Bb(k), H(k), {}, 1, {}, {}, 0, 0});
    add_body(d, Body{C(k), H(k), {F(k), F(k + 1)}, 0, {{F(k), 1}, {F(k + 1), 1}},
                     {ghost_edge(F(k), F(k + 1))}, 0, 0});
    // odd slabs take flow in from their ball and pass it to the even slabs
    if (k % 2)
      d.orient[H(k)] = {Bb(k), C(k)};
    else
      d.orient[H(k)] = {C(k), Bb(k)};
    // F(k) separates slab k-1 from slab k
    d.orient[F(k)] = (k % 2) ? Orient{C(k), C(k - 1)} : Orient{C(k - 1), C(k)};
  }
  return d;
}

Diagram theta_diagram(int extra) {
  if (extra < 0)
    throw Error("negative extra bridges");
  Diagram d;
  d.meta.tkind = TKind::graph;
  d.meta.irreducible = true;
  d.meta.spheres_separate = true;
  d.meta.surfaces_separate = true;
  d.meta.valences = {3, 3};
  d.meta.drilled = {"V1", "V2"};
  add_surface(d, "H", 0, 3 + 2 * extra, Role::thick);
  add_surface(d, "V1", 0, 3, Role::boundary);
  add_surface(d, "V2", 0, 3, Role::boundary);
  add_body(d, Body{"below", "H", {"V1"}, extra, {{"V1", 3}}, {}, 0, 0});
  add_body(d, Body{"above", "H", {"V2"}, extra, {{"V2", 3}}, {}, 0, 0});
  d.orient["H"] = {"below", "above"};
  return d;
}

} // namespace vpb
