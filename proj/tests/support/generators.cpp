#include "generators.hpp"

#include "vpbridge/builders.hpp"
#include "vpbridge/invariants.hpp"
#include "vpbridge/search.hpp"
#include "vpbridge/validate.hpp"

#include <algorithm>

namespace vpb::gen {

namespace {

int uniform(Rng &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng &rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <class T> const T &pick(Rng &rng, const std::vector<T> &v) {
  return v[std::size_t(uniform(rng, 0, int(v.size()) - 1))];
}

// Splits punctures of each minus surface into vertical arcs and ghost ends,
// pairs the ghost ends at random. Returns false when the ghost ends are odd.
bool decorate_minus(Rng &rng, Body &b, const Diagram &d) {
  std::vector<std::string> ends;
  for (auto &m : b.minus) {
    int p = d.surface(m).punctures;
    int v = uniform(rng, 0, p);
    if (v)
      b.vertical[m] = v;
    for (int k = v; k < p; ++k)
      ends.push_back(m);
  }
  if (ends.size() % 2)
    return false;
  std::shuffle(ends.begin(), ends.end(), rng);
  for (std::size_t k = 0; k < ends.size(); k += 2)
    b.ghost.push_back(ghost_edge(ends[k], ends[k + 1]));
  return true;
}

} // namespace

std::optional<Diagram> random_diagram(Rng &rng, const DiagramParams &p) {
  const int n = uniform(rng, 1, p.max_chunks);
  Diagram d;
  d.meta.tkind = TKind::link;
  if (p.width_flags) {
    d.meta.irreducible = true;
    d.meta.spheres_separate = true;
    d.meta.surfaces_separate = true;
  }
  std::vector<std::string> H(n), L(n), U(n);
  for (int k = 0; k < n; ++k) {
    H[k] = "H" + std::to_string(k);
    L[k] = "L" + std::to_string(k);
    U[k] = "U" + std::to_string(k);
  }
  std::vector<std::vector<std::string>> minus_of_L(n), minus_of_U(n);
  int nthin = 0;
  auto add_thin = [&](int from_upper, int to_lower) {
    std::string id = "F" + std::to_string(nthin++);
    int g = p.width_flags ? 0 : uniform(rng, 0, p.max_genus);
    int pu = uniform(rng, 0, p.max_punctures);
    if (g == 0 && pu < 2)
      pu = 2 + uniform(rng, 0, std::max(0, p.max_punctures - 2));
    d.surfaces[id] = Surface{id, g, pu, Role::thin};
    d.orient[id] = {U[from_upper], L[to_lower]};
    minus_of_U[from_upper].push_back(id);
    minus_of_L[to_lower].push_back(id);
  };
  // a random tree of chunks with random edge directions
  for (int k = 1; k < n; ++k) {
    int parent = uniform(rng, 0, k - 1);
    if (coin(rng))
      add_thin(parent, k);
    else
      add_thin(k, parent);
  }
  if (p.extra_thin && n >= 2 && coin(rng, 0.3)) {
    // only upward edges in chunk order keep the digraph acyclic when all
    // tree edges also point upward; otherwise skip
    bool upward = true;
    for (auto &[sid, o] : d.orient) {
      int a = std::stoi(o.first.substr(1)), b = std::stoi(o.second.substr(1));
      upward = upward && a < b;
    }
    if (upward) {
      int a = uniform(rng, 0, n - 2);
      add_thin(a, uniform(rng, a + 1, n - 1));
      d.meta.spheres_separate = false;
      d.meta.surfaces_separate = false;
    }
  }
  int nb = uniform(rng, 0, p.max_boundary);
  for (int k = 0; k < nb; ++k) {
    std::string id = "D" + std::to_string(k);
    int g = uniform(rng, 0, p.max_genus);
    int pu = g == 0 ? uniform(rng, 3, std::max(3, p.max_punctures)) : uniform(rng, 0, 2);
    d.surfaces[id] = Surface{id, g, pu, Role::boundary};
    int c = uniform(rng, 0, n - 1);
    (coin(rng) ? minus_of_L[c] : minus_of_U[c]).push_back(id);
  }
  for (int k = 0; k < n; ++k) {
    Body lo{L[k], H[k], minus_of_L[k], 0, {}, {}, 0, 0};
    Body up{U[k], H[k], minus_of_U[k], 0, {}, {}, 0, 0};
    if (!decorate_minus(rng, lo, d) || !decorate_minus(rng, up, d))
      return std::nullopt;
    int vl = lo.vertical_total(), vu = up.vertical_total();
    if ((vl - vu) % 2)
      return std::nullopt;
    int base = std::max(vl, vu);
    int punct = base + 2 * uniform(rng, 0, 2);
    if (punct == 0 && p.width_flags)
      punct = 2;
    lo.bridge = (punct - vl) / 2;
    up.bridge = (punct - vu) / 2;
    if (!p.width_flags && coin(rng, 0.15))
      (coin(rng) ? lo : up).loops = 1;
    lo.normalize();
    up.normalize();
    d.surfaces[H[k]] = Surface{H[k], 0, punct, Role::thick};
    int g = std::max(genus_lower_bound(lo, d), genus_lower_bound(up, d));
    g += uniform(rng, 0, p.max_genus);
    if (p.width_flags)
      g = std::min(g, 2);
    d.surfaces[H[k]].genus = g;
    d.bodies[lo.id] = lo;
    d.bodies[up.id] = up;
    d.orient[H[k]] = {L[k], U[k]};
  }
  bool any = false;
  for (auto &[sid, s] : d.surfaces)
    any |= s.punctures > 0;
  for (auto &[bid, b] : d.bodies)
    any |= b.loops > 0;
  if (!any)
    d.meta.tkind = TKind::empty;
  if (!validate_diagram(d).ok())
    return std::nullopt;
  return d;
}

Diagram random_valid_diagram(Rng &rng, const DiagramParams &p) {
  for (;;)
    if (auto d = random_diagram(rng, p))
      return *d;
}

namespace {

std::vector<ArcRef> arcs_of(const Body &b) {
  std::vector<ArcRef> r;
  if (b.bridge > 0)
    r.push_back({ArcRef::bridge, "", ""});
  for (auto &[f, v] : b.vertical)
    r.push_back({ArcRef::vertical, f, ""});
  for (auto &e : b.ghost)
    r.push_back({ArcRef::ghost, e.first, e.second});
  if (b.loops > 0)
    r.push_back({ArcRef::loop, "", ""});
  return r;
}

CutSide random_side(Rng &rng, const Body &b, int meets) {
  CutSide s;
  for (auto &m : b.minus)
    if (coin(rng))
      s.minus_piece[m] = 1;
  if (meets) {
    auto arcs = arcs_of(b);
    if (!arcs.empty())
      s.cut = pick(rng, arcs);
  }
  return s;
}

} // namespace

UntelescopeSpec random_untelescope(Rng &rng, const Diagram &d) {
  auto thick = d.ids_with_role(Role::thick);
  UntelescopeSpec u;
  u.thick = pick(rng, thick);
  const Surface &H = d.surface(u.thick);
  auto sides = d.plus_bodies(u.thick);
  u.upper = pick(rng, sides);
  std::vector<CurveShape> shapes{CurveShape::SS};
  if (H.genus >= 1) {
    shapes.push_back(CurveShape::SN);
    shapes.push_back(CurveShape::NS);
    shapes.push_back(CurveShape::NN2);
  }
  if (H.genus >= 2)
    shapes.push_back(CurveShape::NN1);
  u.shape = pick(rng, shapes);
  int nreg = u.shape == CurveShape::NN1 ? 1 : u.shape == CurveShape::SS ? 3 : 2;
  int gleft = H.genus - 3 + nreg, pleft = H.punctures;
  for (int r = 0; r < nreg; ++r) {
    Region reg;
    reg.genus = r + 1 == nreg ? gleft : uniform(rng, 0, gleft);
    reg.punctures = r + 1 == nreg ? pleft : uniform(rng, 0, pleft);
    gleft -= reg.genus;
    pleft -= reg.punctures;
    u.regions.push_back(reg);
  }
  u.i = uniform(rng, 0, 1);
  u.j = uniform(rng, 0, 1);
  u.upper_side = random_side(rng, d.body(u.upper), u.i);
  u.lower_side = random_side(rng, d.body(d.across(u.thick, u.upper)), u.j);
  return u;
}

std::vector<MoveSpec> random_script(Rng &rng, const Diagram &d, int extra_moves, bool track_width) {
  MoveOptions o{track_width};
  std::vector<MoveSpec> script;
  Diagram cur;
  bool started = false;
  for (int attempt = 0; attempt < 200 && !started; ++attempt) {
    ThinSpec t{random_untelescope(rng, d)};
    try {
      cur = apply_move(d, t, o);
      script.push_back(t);
      started = true;
    } catch (const Error &) {
    }
  }
  if (!started)
    return {};
  SearchBudget b;
  b.width_tracking = track_width;
  b.max_certificates = 200;
  for (int k = 0; k < extra_moves; ++k) {
    auto cands = candidate_moves(cur, b);
    std::shuffle(cands.begin(), cands.end(), rng);
    bool moved = false;
    for (std::size_t c = 0; c < cands.size() && c < 200 && !moved; ++c) {
      try {
        cur = apply_move(cur, cands[c], o);
        script.push_back(cands[c]);
        moved = true;
      } catch (const Error &) {
      }
    }
    if (!moved)
      break;
  }
  return script;
}

Diagram random_factor(Rng &rng, bool want_vertices) {
  if (want_vertices)
    return theta_diagram(uniform(rng, 1, 3));
  switch (uniform(rng, 0, 2)) {
  case 0:
    return bridge_position(uniform(rng, 2, 4));
  case 1: {
    int mid = 2 * uniform(rng, 2, 3);
    return sphere_stack({mid + 2, mid + 2}, {mid});
  }
  default:
    return width74_diagram();
  }
}

namespace {

std::vector<SumPoint> arc_points(const Diagram &d) {
  std::vector<SumPoint> r;
  for (auto &[bid, b] : d.bodies) {
    if (b.pockets)
      continue;
    for (auto &a : arcs_of(b))
      r.push_back(SumPoint{bid, 2, a, ""});
  }
  return r;
}

std::vector<SumPoint> vertex_points(const Diagram &d) {
  std::vector<SumPoint> r;
  for (auto &v : d.meta.drilled)
    for (auto &bid : d.minus_bodies(v))
      if (d.surface(v).punctures == 3)
        r.push_back(SumPoint{bid, 3, {}, v});
  return r;
}

} // namespace

std::optional<GlueTree> random_glue_tree(Rng &rng, int max_parts) {
  GlueTree t;
  const int n = uniform(rng, 2, max_parts);
  for (int k = 0; k < n; ++k) {
    Diagram part = rename_all(random_factor(rng, coin(rng, 0.4)), "p" + std::to_string(k) + "_");
    if (k == 0) {
      t.parts.push_back(part);
      t.whole = part;
      continue;
    }
    bool done = false;
    for (int attempt = 0; attempt < 20 && !done; ++attempt) {
      int kind = coin(rng) ? 3 : 2;
      auto p1 = kind == 2 ? arc_points(t.whole) : vertex_points(t.whole);
      auto p2 = kind == 2 ? arc_points(part) : vertex_points(part);
      if (p1.empty() || p2.empty())
        continue;
      try {
        GlueResult g = glue(t.whole, pick(rng, p1), part, pick(rng, p2));
        if (!locally_thin_lint(g.diagram).ok())
          continue;
        t.whole = g.diagram;
        (kind == 2 ? t.p2 : t.p3)++;
        done = true;
      } catch (const Error &) {
      }
    }
    if (!done)
      return std::nullopt;
    t.parts.push_back(part);
  }
  return t;
}

} // namespace vpb::gen
