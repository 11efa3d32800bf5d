#include "vpbridge/invariants.hpp"

#include "vpbridge/validate.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace vpb {

const char *to_string(DeltaZeroClass c) {
  switch (c) {
  case DeltaZeroClass::ball_arc:
    return "ball_arc";
  case DeltaZeroClass::solid_torus_empty:
    return "solid_torus_empty";
  case DeltaZeroClass::solid_torus_core:
    return "solid_torus_core";
  case DeltaZeroClass::vertical_ghost_type4:
    return "vertical_ghost_type4";
  case DeltaZeroClass::not_delta_zero:
    return "not_delta_zero";
  }
  return "?";
}

Q ext(const Surface &s) { return s.ext(); }

Q ext(const Diagram &d, const std::vector<std::string> &ids) {
  Q s = 0;
  for (auto &id : ids)
    s += d.surface(id).ext();
  return s;
}

Q netext(const Diagram &d) {
  Q s = 0;
  for (auto &[id, f] : d.surfaces) {
    if (f.role == Role::thick)
      s += f.ext();
    if (f.role == Role::thin)
      s -= f.ext();
  }
  return s;
}

Q width(const Diagram &d) {
  Q s = 0;
  for (auto &[id, f] : d.surfaces) {
    if (f.role == Role::thick)
      s += f.ext() * f.ext();
    if (f.role == Role::thin)
      s -= f.ext() * f.ext();
  }
  return 2 * s;
}

int netchi(const Diagram &d) {
  int s = 0;
  for (auto &[id, f] : d.surfaces) {
    if (f.role == Role::thick)
      s -= f.chi();
    if (f.role == Role::thin)
      s += f.chi();
  }
  return s;
}

std::optional<Q> gabai_width(const Diagram &d) {
  long long s = 0;
  for (auto &[id, f] : d.surfaces) {
    if (f.role == Role::boundary)
      continue;
    if (f.genus != 0)
      return std::nullopt;
    long long p2 = (long long)f.punctures * f.punctures;
    s += f.role == Role::thick ? p2 : -p2;
  }
  return Q(s, 2);
}

namespace {

int pocket_valence(const Body &b, const Diagram &d) {
  return b.pockets ? d.surface(b.plus).punctures - 2 * b.bridge - b.vertical_total() : 0;
}

} // namespace

Q delta(const Body &b, const Diagram &d) {
  Q r = d.surface(b.plus).ext() - ext(d, b.minus);
  if (b.pockets)
    r -= Q(pocket_valence(b, d) - 2, 2);
  return r;
}

DeltaZeroClass classify_delta_zero(const Body &b, const Diagram &d) {
  Report rep = validate_body(b, d);
  if (!rep.ok())
    throw Error("classify_delta_zero: " + rep.issues.front());
  if (b.pockets)
    throw Error("classify_delta_zero: decorations must be a 1-manifold (drill the vertex first)");
  for (auto &m : b.minus) {
    const Surface &f = d.surface(m);
    if (f.genus == 0 && f.punctures == 1)
      throw Error("classify_delta_zero: minus component '" + m + "' is a once-punctured sphere");
  }
  Q dl = delta(b, d);
  if (dl != 0)
    throw Error("classify_delta_zero: delta is " + fmt_q(dl) + ", not 0");
  const Surface &p = d.surface(b.plus);
  if (b.minus.empty()) {
    if (p.genus == 0 && p.punctures == 2 && b.bridge == 1 && b.loops == 0)
      return DeltaZeroClass::ball_arc;
    if (p.genus == 1 && p.punctures == 0 && b.bridge == 0 && b.loops == 0)
      return DeltaZeroClass::solid_torus_empty;
    if (p.genus == 1 && p.punctures == 0 && b.bridge == 0 && b.loops == 1)
      return DeltaZeroClass::solid_torus_core;
    return DeltaZeroClass::not_delta_zero;
  }
  // a bridge arc or a loop would give a compressing or semi-compressing disc
  if (b.bridge || b.loops)
    return DeltaZeroClass::not_delta_zero;
  GhostGraph gg = ghost_graph(b);
  int gsum = 0;
  for (auto &m : b.minus)
    gsum += d.surface(m).genus;
  int n = int(b.ghost.size());
  if (gg.connected() && p.genus == gsum + n - (int(b.minus.size()) - 1))
    return DeltaZeroClass::vertical_ghost_type4;
  return DeltaZeroClass::not_delta_zero;
}

std::vector<std::string> boundary_ids(const Diagram &d) {
  std::vector<std::string> out;
  for (auto &[id, s] : d.surfaces)
    if (s.role == Role::boundary && !d.is_drilled(id))
      out.push_back(id);
  return out;
}

int chi_T(const Diagram &d) {
  // arcs and pocket trees are contractible, loops have chi 0; gluing along a
  // puncture of H identifies two endpoints, and each drilled sphere collapses
  // its n endpoints to one vertex
  long long c = 0;
  for (auto &[id, b] : d.bodies)
    c += b.bridge + b.vertical_total() + (long long)b.ghost.size() + b.pockets;
  for (auto &[id, s] : d.surfaces) {
    if (s.role != Role::boundary)
      c -= s.punctures;
    else if (d.is_drilled(id))
      c += 1 - s.punctures;
  }
  return int(c);
}

std::vector<IdentityCheck> check_identities(const Diagram &d) {
  std::vector<IdentityCheck> out;
  std::vector<int> vals = d.vertex_valences();
  Q ne = netext(d);
  std::vector<std::string> bdry = boundary_ids(d);
  Q ext_bdry = ext(d, bdry);
  Q vsum = 0, vsq = 0;
  for (int n : vals) {
    vsum += Q(n - 2, 2);
    vsq += Q((n - 2) * (n - 2), 4);
  }
  Q dsum = 0;
  for (auto &[id, b] : d.bodies)
    dsum += delta(b, d);
  {
    IdentityCheck c{"netext", true, 2 * ne - ext_bdry - vsum, dsum, ""};
    c.holds = c.lhs == c.rhs;
    out.push_back(c);
  }
  {
    Q bsq = 0;
    for (auto &id : bdry) {
      Q e = d.surface(id).ext();
      bsq += e * e;
    }
    Q rhs = 0;
    for (auto &[id, b] : d.bodies) {
      Q e = d.surface(b.plus).ext();
      rhs += e * e;
      for (auto &m : b.minus) {
        Q f = d.surface(m).ext();
        rhs -= f * f;
      }
      if (b.pockets) {
        Q f(pocket_valence(b, d) - 2, 2);
        rhs -= f * f;
      }
    }
    IdentityCheck c{"width", true, width(d) - bsq - vsq, rhs, ""};
    c.holds = c.lhs == c.rhs;
    out.push_back(c);
  }
  if (bdry.empty() && vals.empty()) {
    // chunks: components of M cut along the thin surfaces
    std::map<std::string, std::string> par;
    for (auto &[id, b] : d.bodies)
      par[id] = id;
    std::function<std::string(const std::string &)> find = [&](const std::string &x) {
      return par[x] == x ? x : par[x] = find(par[x]);
    };
    for (auto &[sid, s] : d.surfaces)
      if (s.role == Role::thick) {
        auto pb = d.plus_bodies(sid);
        if (pb.size() == 2)
          par[find(pb[0])] = find(pb[1]);
      }
    std::map<std::string, Q> chunk;
    std::map<std::string, std::vector<std::string>> thick_in;
    for (auto &[id, b] : d.bodies) {
      std::string w = find(id);
      chunk[w] -= ext(d, b.minus);
      thick_in[w].push_back(b.plus);
    }
    Q rhs = 0;
    for (auto &[w, v] : chunk) {
      auto &th = thick_in[w];
      std::sort(th.begin(), th.end());
      th.erase(std::unique(th.begin(), th.end()), th.end());
      rhs += v + 2 * ext(d, th);
    }
    IdentityCheck c{"chunk", true, 2 * ne, rhs, std::to_string(chunk.size()) + " chunks"};
    c.holds = c.lhs == c.rhs;
    out.push_back(c);
  }
  {
    int nc = netchi(d);
    int worst = -1000000;
    std::string at;
    for (auto &[id, s] : d.surfaces)
      if (s.role != Role::boundary && -s.chi() > worst) {
        worst = -s.chi();
        at = id;
      }
    IdentityCheck c{"component_bound", true, Q(worst), Q(nc), at.empty() ? "" : "worst " + at};
    c.holds = at.empty() || worst <= nc;
    out.push_back(c);
  }
  return out;
}

bool width_hypothesis(const Diagram &d) {
  if (!d.meta.irreducible || !d.meta.spheres_separate)
    return false;
  if (d.meta.surfaces_separate)
    return true;
  for (auto &[id, s] : d.surfaces)
    if (s.role == Role::thick && s.genus > 2)
      return false;
  return true;
}

NonnegativityResult nonnegativity_bound(const Diagram &d) {
  if (!d.meta.irreducible)
    throw Error("nonnegativity_bound: the irreducible flag is not set");
  for (auto &[id, b] : d.bodies)
    if (is_ball_empty(b, d))
      throw Error("nonnegativity_bound: body " + id + " is a ball with no arcs");
  auto bdry = boundary_ids(d);
  int tb = 0;
  for (auto &id : bdry)
    tb += d.surface(id).punctures;
  NonnegativityResult r;
  r.bound = (ext(d, bdry) - chi_T(d) + Q(tb, 2)) / 2;
  Q ne = netext(d);
  r.satisfied = ne >= r.bound;
  if (width_hypothesis(d)) {
    r.width_checked = true;
    r.width_ok = width(d) >= ne;
  }
  return r;
}

InvariantReport invariants(const Diagram &d, bool with_identities) {
  Report v = validate_diagram(d);
  if (!v.ok())
    throw Error("invalid diagram: " + v.issues.front());
  InvariantReport r;
  r.netext = netext(d);
  r.width = width(d);
  r.netchi = netchi(d);
  r.gabai_width = gabai_width(d);
  for (auto &[id, b] : d.bodies)
    r.delta_by_body[id] = delta(b, d);
  if (with_identities)
    r.identity_checks = check_identities(d);
  return r;
}

std::string format_report(const InvariantReport &r, const Diagram &d) {
  std::ostringstream os;
  auto kv = [&](const std::string &k, const std::string &v) {
    os << k << std::string(k.size() < 14 ? 14 - k.size() : 1, ' ') << v << '\n';
  };
  kv("netext", fmt_q(r.netext));
  kv("width", fmt_q(r.width));
  kv("netchi", std::to_string(r.netchi));
  kv("gabai_width", r.gabai_width ? fmt_q(*r.gabai_width) : "undefined");
  for (auto &[id, q] : r.delta_by_body)
    kv("delta " + id, fmt_q(q));
  (void)d;
  for (auto &c : r.identity_checks)
    kv("identity " + c.name, std::string(c.holds ? "holds" : "FAILS") + " lhs=" + fmt_q(c.lhs) +
                                 " rhs=" + fmt_q(c.rhs) + (c.note.empty() ? "" : " (" + c.note + ")"));
  return os.str();
}

} // namespace vpb
