#include "vpbridge/sums.hpp"

#include "vpbridge/handles.hpp"
#include "vpbridge/invariants.hpp"
#include "vpbridge/text_io.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace vpb {

SumPoint parse_sum_point(const std::string &s, int kind) {
  // body/arc for kind 2, body/vertex for kind 3
  auto slash = s.find('/');
  if (slash == std::string::npos)
    throw Error("sum point '" + s + "' must look like body/arc or body/vertex");
  SumPoint p;
  p.body = s.substr(0, slash);
  p.kind = kind;
  std::string rest = s.substr(slash + 1);
  if (kind == 2)
    p.arc = parse_arc_ref(rest);
  else if (kind == 3)
    p.vertex = rest;
  else
    throw Error("sum kind must be 2 or 3");
  return p;
}

std::string print_sum_point(const SumPoint &p) {
  return p.body + "/" + (p.kind == 2 ? print_arc_ref(p.arc) : p.vertex);
}

Diagram flip(const Diagram &d) {
  Diagram out = d;
  for (auto &[sid, o] : out.orient)
    std::swap(o.first, o.second);
  return out;
}

Diagram rename_all(const Diagram &d, const std::string &prefix) {
  auto S = [&](const std::string &x) { return prefix + x; };
  Diagram out;
  out.meta = d.meta;
  for (auto &x : out.meta.drilled)
    x = S(x);
  for (auto &[id, s] : d.surfaces) {
    Surface t = s;
    t.id = S(id);
    out.surfaces[t.id] = t;
  }
  for (auto &[id, b] : d.bodies) {
    Body c = b;
    c.id = S(id);
    c.plus = S(b.plus);
    for (auto &m : c.minus)
      m = S(m);
    c.vertical.clear();
    for (auto &[f, v] : b.vertical)
      c.vertical[S(f)] = v;
    for (auto &e : c.ghost)
      e = ghost_edge(S(e.first), S(e.second));
    c.normalize();
    out.bodies[c.id] = c;
  }
  for (auto &[sid, o] : d.orient)
    out.orient[S(sid)] = {S(o.first), S(o.second)};
  out.normalize();
  return out;
}

namespace {

// Cuts the arc named by p at a point and lets it run into the new sphere.
void open_arc(Body &b, const ArcRef &a, const std::string &P, const std::string &what) {
  switch (a.kind) {
  case ArcRef::bridge:
    if (b.bridge < 1)
      throw Error(what + ": no bridge arc in " + b.id);
    b.bridge -= 1;
    b.vertical[P] += 2;
    break;
  case ArcRef::vertical:
    if (b.vert(a.a) < 1)
      throw Error(what + ": no vertical arc to '" + a.a + "' in " + b.id);
    b.vertical[a.a] -= 1;
    b.vertical[P] += 1;
    b.ghost.push_back(ghost_edge(P, a.a));
    break;
  case ArcRef::ghost: {
    GhostEdge e = ghost_edge(a.a, a.b);
    auto it = std::find(b.ghost.begin(), b.ghost.end(), e);
    if (it == b.ghost.end())
      throw Error(what + ": no ghost arc (" + a.a + "," + a.b + ") in " + b.id);
    b.ghost.erase(it);
    b.ghost.push_back(ghost_edge(e.first, P));
    b.ghost.push_back(ghost_edge(P, e.second));
    break;
  }
  case ArcRef::loop:
    if (b.loops < 1)
      throw Error(what + ": no core loop in " + b.id);
    b.loops -= 1;
    b.ghost.push_back(ghost_edge(P, P));
    break;
  case ArcRef::none:
    throw Error(what + ": a kind 2 sum point needs an arc");
  }
  b.minus.push_back(P);
  b.normalize();
}

// Joins the two ends of T at a twice-punctured minus sphere: undoes open_arc.
Body cap_twice_punctured(const Body &b, const std::string &P) {
  using End = ArcTracer::End;
  ArcTracer tr;
  int p = tr.new_port(), q = tr.new_port();
  tr.segment(End::at_port(p), End::at_port(q));
  std::vector<int> ends{p, q};
  size_t used = 0;
  auto port = [&]() {
    if (used >= 2)
      throw Error("scar " + P + " in " + b.id + " meets T more than twice");
    return ends[used++];
  };
  for (int k = 0; k < b.bridge; ++k)
    tr.segment(End::on_plus(), End::on_plus());
  for (auto &[f, v] : b.vertical)
    for (int k = 0; k < v; ++k)
      tr.segment(End::on_plus(), f == P ? End::at_port(port()) : End::on_minus(f));
  for (auto &e : b.ghost) {
    End x = e.first == P ? End::at_port(port()) : End::on_minus(e.first);
    End y = e.second == P ? End::at_port(port()) : End::on_minus(e.second);
    tr.segment(x, y);
  }
  if (used != 2)
    throw Error("scar " + P + " in " + b.id + " does not meet T twice");
  ArcTracer::Result r = tr.trace();
  Body c = b;
  c.minus.erase(std::find(c.minus.begin(), c.minus.end(), P));
  c.bridge = r.bridge;
  c.vertical = r.vertical;
  c.ghost = r.ghost;
  c.loops = b.loops + r.loops;
  c.normalize();
  return c;
}

void recompute_tkind(Diagram &d) {
  d.meta.valences = d.vertex_valences();
  bool any_t = false;
  for (auto &[id, s] : d.surfaces)
    any_t |= s.punctures > 0;
  for (auto &[id, b] : d.bodies)
    any_t |= b.loops > 0 || b.pockets > 0;
  d.meta.tkind = !d.meta.valences.empty() ? TKind::graph : any_t ? TKind::link : TKind::empty;
}

bool clashes(const Diagram &a, const Diagram &b) {
  for (auto &[id, s] : b.surfaces)
    if (a.surfaces.count(id))
      return true;
  for (auto &[id, x] : b.bodies)
    if (a.bodies.count(id))
      return true;
  return false;
}

} // namespace

GlueResult glue(const Diagram &d1, const SumPoint &s1, const Diagram &d2in, const SumPoint &s2in,
                const std::string &prefix) {
  const std::string what = "glue";
  if (s1.kind != s2in.kind)
    throw Error("glue: sum kinds differ (" + std::to_string(s1.kind) + " vs " +
                std::to_string(s2in.kind) + ")");
  if (s1.kind != 2 && s1.kind != 3)
    throw Error("glue: sum kind must be 2 or 3");
  for (const Diagram *d : {&d1, &d2in}) {
    Report v = validate_diagram(*d);
    if (!v.ok())
      throw Error("glue: input diagram is invalid: " + v.issues.front());
  }
  Diagram d2 = d2in;
  SumPoint s2 = s2in;
  if (clashes(d1, d2)) {
    d2 = rename_all(d2in, prefix);
    s2.body = prefix + s2.body;
    if (!s2.arc.a.empty())
      s2.arc.a = prefix + s2.arc.a;
    if (!s2.arc.b.empty())
      s2.arc.b = prefix + s2.arc.b;
    if (!s2.vertex.empty())
      s2.vertex = prefix + s2.vertex;
    if (clashes(d1, d2))
      throw Error("glue: ids still clash after prefixing with '" + prefix + "'");
  }
  Body b1 = d1.body(s1.body), b2 = d2.body(s2.body);
  if (b1.pockets || b2.pockets)
    throw Error("glue: sum points must not sit in pocket balls");

  GlueResult out;
  Diagram &r = out.diagram;
  r = d1;
  std::string P;
  if (s1.kind == 2) {
    P = "P";
    while (r.surfaces.count(P) || d2.surfaces.count(P))
      P += "_";
    P = r.fresh_surface_id(P);
    open_arc(b1, s1.arc, P, what);
    open_arc(b2, s2.arc, P, what);
  } else {
    auto check = [](const Diagram &d, const SumPoint &s, const Body &b) {
      if (!d.is_drilled(s.vertex) || !b.has_minus(s.vertex))
        throw Error("glue: '" + s.vertex + "' is not a drilled vertex sphere of " + b.id);
      if (d.surface(s.vertex).punctures != 3)
        throw Error("glue: vertex '" + s.vertex + "' is not trivalent");
    };
    check(d1, s1, b1);
    check(d2, s2, b2);
    P = s1.vertex;
    // d2's vertex sphere is absorbed into d1's
    std::replace(b2.minus.begin(), b2.minus.end(), s2.vertex, P);
    b2.vertical[P] = b2.vert(s2.vertex);
    b2.vertical.erase(s2.vertex);
    for (auto &e : b2.ghost) {
      if (e.first == s2.vertex)
        e.first = P;
      if (e.second == s2.vertex)
        e.second = P;
    }
    b2.normalize();
  }

  // P is a thin minus of both hosts; its direction is fixed by b1, and d2
  // is turned upside down if its host disagrees
  bool b1_in = d1.orient.at(b1.plus).second == b1.id;
  bool b2_in = d2.orient.at(b2.plus).second == b2.id;
  // b1 sends flow across P iff flow enters b1 across its plus
  bool b2_needs_in = !b1_in;
  if (b2_in != b2_needs_in) {
    d2 = flip(d2);
    out.flipped = true;
  }
  for (auto &[id, s] : d2.surfaces)
    if (!(s1.kind == 3 && id == s2.vertex))
      r.surfaces[id] = s;
  for (auto &[id, b] : d2.bodies)
    r.bodies[id] = b;
  for (auto &[id, o] : d2.orient)
    r.orient[id] = o;
  r.bodies[b1.id] = b1;
  r.bodies[b2.id] = b2;
  for (auto &x : d2.meta.drilled)
    if (!(s1.kind == 3 && x == s2.vertex))
      r.meta.drilled.push_back(x);
  if (s1.kind == 3)
    r.meta.drilled.erase(std::find(r.meta.drilled.begin(), r.meta.drilled.end(), P));
  r.surfaces[P] = Surface{P, 0, s1.kind, Role::thin};
  r.orient[P] = b1_in ? Orient{b1.id, b2.id} : Orient{b2.id, b1.id};
  r.meta.irreducible = d1.meta.irreducible && d2.meta.irreducible;
  r.meta.spheres_separate = d1.meta.spheres_separate && d2.meta.spheres_separate;
  r.meta.surfaces_separate = d1.meta.surfaces_separate && d2.meta.surfaces_separate;
  if (d1.meta.gbound && d2.meta.gbound)
    r.meta.gbound = *d1.meta.gbound + *d2.meta.gbound;
  else
    r.meta.gbound.reset();
  recompute_tkind(r);
  r.normalize();
  Report v = validate_diagram(r);
  if (!v.ok())
    throw Error("glue: result is invalid: " + v.issues.front());
  out.sphere = P;
  return out;
}

bool is_unknot_factor(const Diagram &d) {
  if (d.meta.tkind != TKind::link || !d.vertex_valences().empty() || !boundary_ids(d).empty())
    return false;
  for (auto &[id, s] : d.surfaces)
    if (s.genus != 0)
      return false;
  return netext(d) == Q(0);
}

bool is_trivial_theta_factor(const Diagram &d) {
  return d.vertex_valences() == std::vector<int>{3, 3} && boundary_ids(d).empty() &&
         netext(d) == Q(1, 2);
}

Diagram cap_body(const std::string &sphere_id) {
  Diagram d;
  d.meta.tkind = TKind::graph;
  d.meta.valences = {3};
  d.surfaces[sphere_id] = Surface{sphere_id, 0, 3, Role::thick};
  d.bodies["cap"] = Body{"cap", sphere_id, {}, 0, {}, {}, 0, 1};
  return d;
}

FactorizationResult split_prime(const Diagram &d) {
  Report v = validate_diagram(d);
  if (!v.ok())
    throw Error("split_prime: invalid diagram: " + v.issues.front());
  if (!d.meta.irreducible)
    throw Error("split_prime: the irreducible flag is not set");
  Report lint = locally_thin_lint(d);
  if (!lint.ok())
    throw Error("split_prime: diagram is not locally thin: " + lint.issues.front());

  std::vector<std::string> bids;
  std::map<std::string, int> bix;
  for (auto &[id, b] : d.bodies) {
    bix[id] = int(bids.size());
    bids.push_back(id);
  }
  const int nb = int(bids.size());
  std::vector<std::string> cand;
  for (auto &[id, s] : d.surfaces)
    if (s.role == Role::thin && s.genus == 0 && (s.punctures == 2 || s.punctures == 3))
      cand.push_back(id);

  // keep absorbing candidates that do not separate until the rest form a tree
  std::set<std::string> summing(cand.begin(), cand.end());
  std::vector<int> comp;
  std::vector<std::string> tree;
  for (;;) {
    std::vector<int> par(nb);
    std::iota(par.begin(), par.end(), 0);
    std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
    for (auto &[id, s] : d.surfaces) {
      if (s.role == Role::boundary || summing.count(id))
        continue;
      auto o = d.orient.at(id);
      par[find(bix[o.first])] = find(bix[o.second]);
    }
    std::vector<int> tpar(nb);
    std::iota(tpar.begin(), tpar.end(), 0);
    std::function<int(int)> tfind = [&](int x) { return tpar[x] == x ? x : tpar[x] = tfind(tpar[x]); };
    std::string bad;
    tree.clear();
    for (auto &P : summing) {
      auto o = d.orient.at(P);
      int a = find(bix[o.first]), b = find(bix[o.second]);
      if (tfind(a) == tfind(b)) {
        bad = P;
        break;
      }
      tpar[tfind(a)] = tfind(b);
      tree.push_back(P);
    }
    if (bad.empty()) {
      comp.assign(nb, 0);
      for (int k = 0; k < nb; ++k)
        comp[k] = find(k);
      break;
    }
    summing.erase(bad);
  }

  // number the components
  std::map<int, int> label;
  for (int k = 0; k < nb; ++k)
    if (!label.count(comp[k])) {
      int next = int(label.size());
      label[comp[k]] = next;
    }
  const int nf = int(label.size());
  FactorizationResult res;
  res.factors.assign(nf, Diagram{});
  std::vector<int> factor_of(nb);
  for (int k = 0; k < nb; ++k)
    factor_of[k] = label[comp[k]];
  for (int f = 0; f < nf; ++f)
    res.factors[f].meta = d.meta;
  for (int k = 0; k < nb; ++k) {
    Diagram &fd = res.factors[factor_of[k]];
    const Body &b = d.body(bids[k]);
    fd.bodies[b.id] = b;
    fd.surfaces[b.plus] = d.surface(b.plus);
    for (auto &m : b.minus)
      fd.surfaces[m] = d.surface(m);
  }
  for (auto &[sid, o] : d.orient)
    if (!summing.count(sid))
      res.factors[factor_of[bix[o.first]]].orient[sid] = o;
  for (auto &P : tree) {
    auto o = d.orient.at(P);
    int kind = d.surface(P).punctures;
    int fa = factor_of[bix[o.first]], fb = factor_of[bix[o.second]];
    res.dual_tree.push_back({fa, fb, kind, P});
    for (auto &[f, bid] : {std::pair{fa, o.first}, std::pair{fb, o.second}}) {
      Diagram &fd = res.factors[f];
      if (kind == 2) {
        fd.bodies[bid] = cap_twice_punctured(fd.bodies[bid], P);
        fd.surfaces.erase(P);
      } else {
        fd.surfaces[P].role = Role::boundary;
        fd.meta.drilled.push_back(P);
      }
    }
  }
  for (auto &fd : res.factors) {
    std::vector<std::string> keep;
    for (auto &x : fd.meta.drilled)
      if (fd.surfaces.count(x))
        keep.push_back(x);
    fd.meta.drilled = keep;
    recompute_tkind(fd);
    fd.normalize();
    Report fv = validate_diagram(fd);
    if (!fv.ok())
      throw Error("split_prime: a factor is invalid: " + fv.issues.front());
  }

  // absorb trivial summands: an unknot across a twice-punctured sphere, a
  // trivial theta across a thrice-punctured one
  std::vector<bool> alive(nf, true);
  for (bool again = true; again;) {
    again = false;
    for (int f = 0; f < nf && !again; ++f) {
      if (!alive[f])
        continue;
      int kind = is_unknot_factor(res.factors[f]) ? 2 : is_trivial_theta_factor(res.factors[f]) ? 3 : 0;
      if (!kind)
        continue;
      for (size_t e = 0; e < res.dual_tree.size(); ++e) {
        DualEdge de = res.dual_tree[e];
        if (de.kind != kind || (de.a != f && de.b != f))
          continue;
        int other = de.a == f ? de.b : de.a;
        res.dual_tree.erase(res.dual_tree.begin() + long(e));
        for (auto &x : res.dual_tree) {
          if (x.a == f)
            x.a = other;
          if (x.b == f)
            x.b = other;
        }
        alive[f] = false;
        (kind == 2 ? res.pruned_unknots : res.pruned_thetas)++;
        again = true;
        break;
      }
    }
  }
  std::vector<int> newix(nf, -1);
  std::vector<Diagram> kept;
  for (int f = 0; f < nf; ++f)
    if (alive[f]) {
      newix[f] = int(kept.size());
      kept.push_back(std::move(res.factors[f]));
    }
  res.factors = std::move(kept);
  for (auto &x : res.dual_tree) {
    x.a = newix[x.a];
    x.b = newix[x.b];
  }
  for (auto &x : res.dual_tree)
    (x.kind == 2 ? res.p2 : res.p3)++;
  return res;
}

Report additivity_check(const std::vector<Diagram> &parts, const Diagram &whole, int p2, int p3) {
  Report r;
  Q ne = 0, w = 0;
  int nc = 0;
  for (auto &p : parts) {
    ne += netext(p);
    w += width(p);
    nc += netchi(p);
  }
  Q shift(p3, 2);
  if (netext(whole) != ne - shift)
    r.add("netext " + fmt_q(netext(whole)) + " != " + fmt_q(ne) + " - " + fmt_q(shift));
  if (width(whole) != w - shift)
    r.add("width " + fmt_q(width(whole)) + " != " + fmt_q(w) + " - " + fmt_q(shift));
  if (netchi(whole) != nc + 2 * (p2 + p3))
    r.add("netchi " + std::to_string(netchi(whole)) + " != " + std::to_string(nc) + " + " +
          std::to_string(2 * (p2 + p3)));
  return r;
}

} // namespace vpb
