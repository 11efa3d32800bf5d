#include "vpbridge/validate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace vpb {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    p[a] = b;
    return true;
  }
};

} // namespace

GhostGraph ghost_graph(const Body &b) {
  GhostGraph g;
  g.vertices = b.minus;
  g.edges = b.ghost;
  std::map<std::string, int> idx;
  for (size_t k = 0; k < b.minus.size(); ++k)
    idx[b.minus[k]] = int(k);
  Dsu dsu(int(b.minus.size()));
  std::vector<int> deg(b.minus.size(), 0);
  int comps = int(b.minus.size());
  for (auto &e : b.ghost) {
    auto ia = idx.find(e.first), ib = idx.find(e.second);
    if (ia == idx.end() || ib == idx.end())
      continue;
    deg[ia->second]++;
    deg[ib->second]++;
    if (dsu.unite(ia->second, ib->second))
      --comps;
  }
  g.components = comps;
  for (int x : deg) {
    g.isolated += x == 0;
    g.leaves += x == 1;
  }
  return g;
}

int genus_lower_bound(const Body &b, const Diagram &d) {
  int gsum = 0;
  for (auto &m : b.minus)
    gsum += d.surface(m).genus;
  GhostGraph gg = ghost_graph(b);
  return gsum + int(b.ghost.size()) - int(b.minus.size()) + gg.components + b.loops;
}

Report validate_body(const Body &b, const Diagram &d) {
  Report r;
  const std::string who = "body " + b.id + ": ";
  auto ps = d.surfaces.find(b.plus);
  if (ps == d.surfaces.end()) {
    r.add(who + "plus surface '" + b.plus + "' does not exist");
    return r;
  }
  const Surface &plus = ps->second;
  if (plus.role != Role::thick)
    r.add(who + "plus surface '" + b.plus + "' is not thick");
  std::set<std::string> seen;
  for (auto &m : b.minus) {
    if (!seen.insert(m).second)
      r.add(who + "minus surface '" + m + "' listed twice");
    auto it = d.surfaces.find(m);
    if (it == d.surfaces.end()) {
      r.add(who + "minus surface '" + m + "' does not exist");
      continue;
    }
    if (it->second.role == Role::thick)
      r.add(who + "minus surface '" + m + "' is thick");
  }
  if (!r.ok())
    return r;
  if (b.bridge < 0 || b.loops < 0 || b.pockets < 0)
    r.add(who + "negative arc count");
  for (auto &[f, v] : b.vertical) {
    if (!b.has_minus(f))
      r.add(who + "vertical arcs end on '" + f + "', which is not a minus surface");
    if (v < 0)
      r.add(who + "negative vertical count at '" + f + "'");
  }
  for (auto &e : b.ghost)
    if (!b.has_minus(e.first) || !b.has_minus(e.second))
      r.add(who + "ghost arc (" + e.first + "," + e.second + ") leaves the minus boundary");
  if (!r.ok())
    return r;

  if (b.pockets > 1)
    r.add(who + "at most one pocket tree per body");
  if (b.pockets == 1) {
    if (d.meta.tkind != TKind::graph)
      r.add(who + "pocket tree requires a graph");
    if (!b.minus.empty() || b.bridge || b.loops || !b.ghost.empty() || !b.vertical.empty())
      r.add(who + "pocket trees only live in otherwise empty balls");
    if (plus.genus != 0)
      r.add(who + "pocket ball must have a sphere as plus boundary");
    if (plus.punctures < 3)
      r.add(who + "pocket vertex has valence " + std::to_string(plus.punctures) + " < 3");
    return r;
  }

  int ends = 2 * b.bridge + b.vertical_total();
  if (ends != plus.punctures)
    r.add(who + "plus punctures " + std::to_string(plus.punctures) + " != 2*bridge + vertical = " +
          std::to_string(ends));
  for (auto &m : b.minus) {
    const Surface &f = d.surface(m);
    int got = b.vert(m) + b.ghost_ends_at(m);
    if (got != f.punctures)
      r.add(who + "minus '" + m + "' has " + std::to_string(f.punctures) +
            " punctures but vertical + ghost ends = " + std::to_string(got));
    if (f.genus == 0 && f.punctures == 1)
      r.add(who + "minus '" + m + "' is a once-punctured sphere");
  }
  int lb = genus_lower_bound(b, d);
  if (plus.genus < lb)
    r.add(who + "plus genus " + std::to_string(plus.genus) + " below the handle bound " +
          std::to_string(lb));
  return r;
}

Report validate_orientation(const Diagram &d) {
  Report r;
  for (auto &[sid, s] : d.surfaces) {
    bool needs = s.role != Role::boundary;
    auto it = d.orient.find(sid);
    if (needs && it == d.orient.end())
      r.add("surface " + sid + ": missing orientation");
    if (!needs && it != d.orient.end())
      r.add("surface " + sid + ": boundary surfaces carry no orientation");
  }
  for (auto &[sid, o] : d.orient) {
    if (!d.surfaces.count(sid)) {
      r.add("orientation for unknown surface '" + sid + "'");
      continue;
    }
    const Surface &s = d.surface(sid);
    std::vector<std::string> adj =
        s.role == Role::thick ? d.plus_bodies(sid) : d.minus_bodies(sid);
    std::sort(adj.begin(), adj.end());
    std::vector<std::string> got{o.first, o.second};
    std::sort(got.begin(), got.end());
    if (adj != got)
      r.add("surface " + sid + ": orientation pair (" + o.first + "," + o.second +
            ") does not match its adjacent bodies");
  }
  if (!r.ok())
    return r;

  for (auto &[bid, b] : d.bodies) {
    if (!d.orient.count(b.plus))
      continue;
    bool out_plus = d.orient.at(b.plus).first == bid;
    for (auto &m : b.minus) {
      if (d.surface(m).role != Role::thin)
        continue;
      bool out_m = d.orient.at(m).first == bid;
      if (out_m == out_plus)
        r.add("body " + bid + ": orientation across '" + m + "' agrees with '" + b.plus +
              "', so it is not a cobordism");
    }
  }

  // Kahn's algorithm on the body digraph
  std::map<std::string, int> indeg;
  std::map<std::string, std::vector<std::string>> out;
  for (auto &[bid, b] : d.bodies)
    indeg[bid] = 0;
  for (auto &[sid, o] : d.orient) {
    out[o.first].push_back(o.second);
    indeg[o.second]++;
  }
  std::vector<std::string> q;
  for (auto &[bid, k] : indeg)
    if (k == 0)
      q.push_back(bid);
  size_t done = 0;
  while (!q.empty()) {
    std::string x = q.back();
    q.pop_back();
    ++done;
    for (auto &y : out[x])
      if (--indeg[y] == 0)
        q.push_back(y);
  }
  if (done != indeg.size())
    r.add("orientation has a closed flow line (the body digraph has a cycle)");
  return r;
}

Report validate_diagram(const Diagram &d) {
  Report r;
  const Meta &m = d.meta;
  for (int v : m.valences)
    if (v < 3)
      r.add("meta: vertex valence " + std::to_string(v) + " < 3");
  if (m.gbound && *m.gbound < 0)
    r.add("meta: negative Heegaard genus bound");

  for (auto &[sid, s] : d.surfaces) {
    if (s.id != sid)
      r.add("surface key '" + sid + "' disagrees with id '" + s.id + "'");
    if (s.genus < 0 || s.punctures < 0)
      r.add("surface " + sid + ": negative genus or punctures");
    if (s.role == Role::boundary && s.genus == 0 && s.punctures <= 2 && !d.is_drilled(sid))
      r.add("surface " + sid + ": boundary sphere meeting T in " + std::to_string(s.punctures) +
            " points violates the running assumption");
  }
  for (auto &sid : m.drilled) {
    auto it = d.surfaces.find(sid);
    if (it == d.surfaces.end()) {
      r.add("meta: drilled surface '" + sid + "' does not exist");
      continue;
    }
    if (it->second.role != Role::boundary || it->second.genus != 0)
      r.add("meta: drilled surface '" + sid + "' must be a boundary sphere");
  }
  for (auto &[bid, b] : d.bodies)
    if (b.id != bid)
      r.add("body key '" + bid + "' disagrees with id '" + b.id + "'");
  if (!r.ok())
    return r;

  for (auto &[bid, b] : d.bodies)
    for (auto &s : validate_body(b, d).issues)
      r.add(s);
  if (!r.ok())
    return r;

  for (auto &[sid, s] : d.surfaces) {
    auto pb = d.plus_bodies(sid);
    auto mb = d.minus_bodies(sid);
    switch (s.role) {
    case Role::thick:
      if (pb.size() != 2 || !mb.empty())
        r.add("surface " + sid + ": a thick surface must be the plus boundary of exactly two bodies");
      else if (pb[0] == pb[1])
        r.add("surface " + sid + ": adjacent bodies must be distinct");
      break;
    case Role::thin:
      if (mb.size() != 2 || !pb.empty())
        r.add("surface " + sid + ": a thin surface must be a minus boundary of exactly two bodies");
      else if (mb[0] == mb[1])
        r.add("surface " + sid + ": adjacent bodies must be distinct");
      break;
    case Role::boundary:
      if (mb.size() != 1 || !pb.empty())
        r.add("surface " + sid + ": a boundary surface must be a minus boundary of exactly one body");
      break;
    }
  }
  if (!r.ok())
    return r;

  std::vector<int> vals = d.vertex_valences();
  std::vector<int> mv = m.valences;
  std::sort(mv.begin(), mv.end());
  if (vals != mv)
    r.add("meta: valences do not match the drilled spheres and pocket trees");
  bool any_t = false;
  for (auto &[sid, s] : d.surfaces)
    any_t |= s.punctures > 0;
  for (auto &[bid, b] : d.bodies)
    any_t |= b.loops > 0 || b.pockets > 0;
  switch (m.tkind) {
  case TKind::empty:
    if (any_t)
      r.add("meta: tkind=empty but T meets the diagram");
    break;
  case TKind::link:
    if (!vals.empty())
      r.add("meta: tkind=link but T has vertices");
    if (!any_t)
      r.add("meta: tkind=link but T is empty");
    break;
  case TKind::graph:
    if (vals.empty())
      r.add("meta: tkind=graph but T has no vertices");
    break;
  }

  for (auto &s : validate_orientation(d).issues)
    r.add(s);
  return r;
}

} // namespace vpb
