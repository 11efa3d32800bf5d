#include "vpbridge/moves.hpp"

#include "vpbridge/handles.hpp"
#include "vpbridge/invariants.hpp"
#include "vpbridge/text_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace vpb {

// ---------------------------------------------------------------- names

const char *to_string(CurveShape s) {
  switch (s) {
  case CurveShape::NN1:
    return "NN1";
  case CurveShape::NN2:
    return "NN2";
  case CurveShape::SN:
    return "SN";
  case CurveShape::NS:
    return "NS";
  case CurveShape::SS:
    return "SS";
  }
  return "?";
}

CurveShape parse_shape(const std::string &s) {
  for (CurveShape c : {CurveShape::NN1, CurveShape::NN2, CurveShape::SN, CurveShape::NS, CurveShape::SS})
    if (s == to_string(c))
      return c;
  throw Error("unknown curve shape '" + s + "'");
}

const char *to_string(DestabKind k) {
  switch (k) {
  case DestabKind::plain:
    return "plain";
  case DestabKind::meridional:
    return "meridional";
  case DestabKind::boundary:
    return "boundary";
  case DestabKind::meridional_boundary:
    return "meridional_boundary";
  case DestabKind::ghost_boundary:
    return "ghost_boundary";
  case DestabKind::ghost_meridional_boundary:
    return "ghost_meridional_boundary";
  }
  return "?";
}

DestabKind parse_destab_kind(const std::string &s) {
  for (DestabKind k : {DestabKind::plain, DestabKind::meridional, DestabKind::boundary,
                       DestabKind::meridional_boundary, DestabKind::ghost_boundary,
                       DestabKind::ghost_meridional_boundary})
    if (s == to_string(k))
      return k;
  throw Error("unknown destabilization kind '" + s + "'");
}

ArcRef parse_arc_ref(const std::string &s) {
  auto parts = split_top(s, ':');
  ArcRef r;
  if (parts.size() == 1 && (s == "none" || s.empty()))
    return r;
  if (parts.size() == 1 && s == "bridge")
    r.kind = ArcRef::bridge;
  else if (parts.size() == 1 && s == "loop")
    r.kind = ArcRef::loop;
  else if (parts.size() == 2 && parts[0] == "vertical")
    r = ArcRef{ArcRef::vertical, parts[1], ""};
  else if (parts.size() == 3 && parts[0] == "ghost")
    r = ArcRef{ArcRef::ghost, parts[1], parts[2]};
  else
    throw Error("bad arc reference '" + s + "'");
  return r;
}

std::string print_arc_ref(const ArcRef &r) {
  switch (r.kind) {
  case ArcRef::none:
    return "none";
  case ArcRef::bridge:
    return "bridge";
  case ArcRef::loop:
    return "loop";
  case ArcRef::vertical:
    return "vertical:" + r.a;
  case ArcRef::ghost:
    return "ghost:" + r.a + ":" + r.b;
  }
  return "?";
}

// ---------------------------------------------------------------- helpers

namespace {

void require_valid(const Diagram &d, const std::string &what) {
  Report v = validate_diagram(d);
  if (!v.ok())
    throw Error(what + ": input diagram is invalid: " + v.issues.front());
}

bool bad_sphere(const Surface &s) {
  return s.role != Role::boundary && s.genus == 0 && s.punctures <= 1;
}

// Normalizes and validates a move result. Under the irreducible flag a move
// may not create a thick or thin sphere meeting T at most once.
void finish(Diagram &out, const Diagram &before, const std::string &what) {
  out.normalize();
  Report v = validate_diagram(out);
  if (!v.ok())
    throw Error(what + ": " + v.issues.front());
  if (out.meta.irreducible && out.meta.tkind != TKind::empty)
    for (auto &[id, s] : out.surfaces) {
      auto it = before.surfaces.find(id);
      bool fresh = it == before.surfaces.end() || it->second != s;
      if (fresh && bad_sphere(s))
        throw Error(what + ": creates sphere '" + id + "' meeting T in " +
                    std::to_string(s.punctures) + " points in an irreducible pair");
    }
}

void replace_in_orient(Diagram &d, const std::string &sid, const std::string &from,
                       const std::string &to) {
  auto it = d.orient.find(sid);
  if (it == d.orient.end())
    return;
  if (it->second.first == from)
    it->second.first = to;
  if (it->second.second == from)
    it->second.second = to;
}

void erase_one(std::vector<GhostEdge> &v, const GhostEdge &e, const std::string &what) {
  auto it = std::find(v.begin(), v.end(), e);
  if (it == v.end())
    throw Error(what + ": no ghost arc (" + e.first + "," + e.second + ")");
  v.erase(it);
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

struct CurveEdge {
  bool plus; // c+ or c-
  int r1, r2;
};

std::vector<CurveEdge> shape_edges(CurveShape s) {
  switch (s) {
  case CurveShape::NN1:
    return {{true, 0, 0}, {false, 0, 0}};
  case CurveShape::NN2:
    return {{true, 0, 1}, {false, 0, 1}};
  case CurveShape::SN:
    return {{true, 0, 1}, {false, 0, 0}};
  case CurveShape::NS:
    return {{false, 0, 1}, {true, 0, 0}};
  case CurveShape::SS:
    return {{true, 0, 1}, {false, 1, 2}};
  }
  return {};
}

int shape_regions(CurveShape s) {
  return s == CurveShape::NN1 ? 1 : s == CurveShape::SS ? 3 : 2;
}

// Components of the region graph keeping only the edges of one curve.
struct Components {
  std::vector<int> of;     // region -> component, numbered by least region
  int count = 0;
  std::vector<int> genus;  // glued genus per component
  std::vector<int> kept;   // kept edges per component
};

Components glue_along(const std::vector<Region> &regs, const std::vector<CurveEdge> &edges,
                      bool keep_plus) {
  int n = int(regs.size());
  Dsu dsu(n);
  for (auto &e : edges)
    if (e.plus == keep_plus)
      dsu.unite(e.r1, e.r2);
  Components c;
  c.of.assign(n, -1);
  std::map<int, int> label;
  for (int r = 0; r < n; ++r) {
    int root = dsu.find(r);
    if (!label.count(root))
      label[root] = c.count++;
    c.of[r] = label[root];
  }
  c.genus.assign(c.count, 1);
  c.kept.assign(c.count, 0);
  for (int r = 0; r < n; ++r)
    c.genus[c.of[r]] += regs[r].genus - 1;
  for (auto &e : edges)
    if (e.plus == keep_plus) {
      c.genus[c.of[e.r1]] += 1;
      c.kept[c.of[e.r1]] += 1;
    }
  return c;
}

// Cuts one old body along its disc. Returns one body per piece; the caller
// fills in ids and plus surfaces.
std::vector<Body> cut_body(const Body &b, const CutSide &s, int meets, int npieces, int ca,
                           int cb, const std::vector<int> &plus_punctures, const std::string &what) {
  std::vector<Body> pieces(npieces);
  if (b.pockets)
    throw Error(what + ": body " + b.id + " holds a pocket tree and has no disc");
  auto piece_of = [&](const std::string &m) {
    auto it = s.minus_piece.find(m);
    int k = it == s.minus_piece.end() ? 0 : it->second;
    if (k < 0 || k >= npieces)
      throw Error(what + ": piece " + std::to_string(k) + " for '" + m + "' out of range");
    return k;
  };
  for (auto &[m, k] : s.minus_piece)
    if (!b.has_minus(m))
      throw Error(what + ": '" + m + "' is not a minus surface of " + b.id);
  for (auto &m : b.minus) {
    int k = piece_of(m);
    pieces[k].minus.push_back(m);
    if (b.vert(m))
      pieces[k].vertical[m] = b.vert(m);
  }
  std::vector<GhostEdge> ghosts = b.ghost;
  int bridges = b.bridge, loops = b.loops;
  if (meets == 1) {
    const ArcRef &c = s.cut;
    switch (c.kind) {
    case ArcRef::none:
      throw Error(what + ": the disc in " + b.id + " meets T but no cut arc is given");
    case ArcRef::bridge:
      if (bridges < 1)
        throw Error(what + ": " + b.id + " has no bridge arc to cut");
      --bridges;
      pieces[ca].bridge++;
      pieces[cb].bridge++;
      break;
    case ArcRef::vertical: {
      if (b.vert(c.a) < 1)
        throw Error(what + ": " + b.id + " has no vertical arc to '" + c.a + "'");
      int k = piece_of(c.a);
      if (ca == cb)
        pieces[ca].bridge++;
      else if (k == ca)
        pieces[cb].bridge++;
      else if (k == cb)
        pieces[ca].bridge++;
      else
        throw Error(what + ": cut vertical arc to '" + c.a + "' misses both caps");
      break;
    }
    case ArcRef::ghost: {
      GhostEdge e = ghost_edge(c.a, c.b);
      erase_one(ghosts, e, what);
      int ka = piece_of(e.first), kb = piece_of(e.second);
      if (ca != cb && !((ka == ca && kb == cb) || (ka == cb && kb == ca)))
        throw Error(what + ": the cut ghost arc must run between the two pieces");
      pieces[ka].vertical[e.first]++;
      pieces[kb].vertical[e.second]++;
      break;
    }
    case ArcRef::loop:
      if (loops < 1)
        throw Error(what + ": " + b.id + " has no core loop to cut");
      if (ca != cb)
        throw Error(what + ": a core loop cannot meet a separating disc once");
      --loops;
      pieces[ca].bridge++;
      break;
    }
  } else if (s.cut.kind != ArcRef::none) {
    throw Error(what + ": the disc in " + b.id + " misses T but a cut arc is given");
  }
  for (auto &e : ghosts) {
    int ka = piece_of(e.first), kb = piece_of(e.second);
    if (ka != kb)
      throw Error(what + ": ghost arc (" + e.first + "," + e.second + ") crosses the disc");
    pieces[ka].ghost.push_back(e);
  }
  if (npieces == 1) {
    if (s.bridge0 && *s.bridge0 != bridges)
      throw Error(what + ": one piece must keep all " + std::to_string(bridges) + " bridge arcs");
    if (s.loops0 >= 0 && s.loops0 != loops)
      throw Error(what + ": one piece must keep all core loops");
    pieces[0].bridge += bridges;
    pieces[0].loops = loops;
  } else {
    int b0;
    if (s.bridge0) {
      b0 = *s.bridge0;
    } else {
      int need = plus_punctures[0] - 2 * pieces[0].bridge - pieces[0].vertical_total();
      if (need < 0 || need % 2)
        throw Error(what + ": punctures of the first piece of " + b.id + " cannot be matched");
      b0 = need / 2;
    }
    if (b0 < 0 || b0 > bridges)
      throw Error(what + ": bridge split of " + b.id + " out of range");
    pieces[0].bridge += b0;
    pieces[1].bridge += bridges - b0;
    int l0 = s.loops0 < 0 ? loops : s.loops0;
    if (l0 > loops)
      throw Error(what + ": loop split of " + b.id + " out of range");
    pieces[0].loops = l0;
    pieces[1].loops = loops - l0;
  }
  return pieces;
}

} // namespace

// ---------------------------------------------------------------- untelescope

Diagram untelescope(const Diagram &d, const UntelescopeSpec &u, const MoveOptions &o) {
  const std::string what = "untelescope " + u.thick;
  require_valid(d, what);
  const Surface H = d.surface(u.thick);
  if (H.role != Role::thick)
    throw Error(what + ": not a thick surface");
  if ((u.i != 0 && u.i != 1) || (u.j != 0 && u.j != 1))
    throw Error(what + ": i and j must be 0 or 1");
  const Body U = d.body(u.upper);
  if (U.plus != u.thick)
    throw Error(what + ": body " + u.upper + " is not adjacent to it");
  const std::string Lid = d.across(u.thick, u.upper);
  const Body L = d.body(Lid);
  if (Lid == U.id)
    throw Error(what + ": needs two distinct bodies");
  if (o.track_width) {
    if (!width_hypothesis(d))
      throw Error(what + ": width tracking needs the irr and ssep flags and csep or thick genus <= 2");
    if (u.shape == CurveShape::NN2)
      throw Error(what + ": width tracking needs a separating curve or jointly nonseparating curves");
  }
  auto edges = shape_edges(u.shape);
  const auto &regs = u.regions;
  if (int(regs.size()) != shape_regions(u.shape))
    throw Error(what + ": shape " + to_string(u.shape) + " needs " +
                std::to_string(shape_regions(u.shape)) + " regions");
  int gsum = 0, psum = 0;
  for (auto &r : regs) {
    if (r.genus < 0 || r.punctures < 0)
      throw Error(what + ": negative region data");
    gsum += r.genus;
    psum += r.punctures;
  }
  int nreg = int(regs.size());
  if (gsum + 2 - nreg + 1 != H.genus || psum != H.punctures)
    throw Error(what + ": regions do not glue back to genus " + std::to_string(H.genus) +
                " with " + std::to_string(H.punctures) + " punctures");
  std::vector<int> degp(nreg, 0), degm(nreg, 0);
  for (auto &e : edges) {
    auto &deg = e.plus ? degp : degm;
    deg[e.r1]++;
    deg[e.r2]++;
  }
  for (int r = 0; r < nreg; ++r)
    if (regs[r].genus == 0 && degp[r] + degm[r] == 1 && regs[r].punctures < 2)
      throw Error(what + ": region " + std::to_string(r) +
                  " is a disc meeting T at most once, so its curve is inessential");

  Components hp = glue_along(regs, edges, false); // H+: c+ compressed, c- kept
  Components hm = glue_along(regs, edges, true);  // H-: c- compressed, c+ kept
  std::vector<int> hp_punct(hp.count, 0), hm_punct(hm.count, 0);
  for (int r = 0; r < nreg; ++r) {
    hp_punct[hp.of[r]] += regs[r].punctures + u.i * degp[r];
    hm_punct[hm.of[r]] += regs[r].punctures + u.j * degm[r];
  }
  CurveEdge ep{}, em{};
  for (auto &e : edges)
    (e.plus ? ep : em) = e;

  std::vector<Body> upieces = cut_body(U, u.upper_side, u.i, hp.count, hp.of[ep.r1], hp.of[ep.r2],
                                       hp_punct, what + " (upper side)");
  std::vector<Body> lpieces = cut_body(L, u.lower_side, u.j, hm.count, hm.of[em.r1], hm.of[em.r2],
                                       hm_punct, what + " (lower side)");

  Diagram out = d;
  out.surfaces.erase(u.thick);
  out.orient.erase(u.thick);
  out.bodies.erase(U.id);
  out.bodies.erase(L.id);

  std::vector<std::string> hp_id(hp.count), hm_id(hm.count), f_id(nreg);
  for (int k = 0; k < hp.count; ++k) {
    hp_id[k] = out.fresh_surface_id(u.thick + "p");
    out.surfaces[hp_id[k]] = Surface{hp_id[k], hp.genus[k], hp_punct[k], Role::thick};
  }
  for (int k = 0; k < hm.count; ++k) {
    hm_id[k] = out.fresh_surface_id(u.thick + "m");
    out.surfaces[hm_id[k]] = Surface{hm_id[k], hm.genus[k], hm_punct[k], Role::thick};
  }
  for (int r = 0; r < nreg; ++r) {
    f_id[r] = out.fresh_surface_id(u.thick + "f");
    out.surfaces[f_id[r]] = Surface{f_id[r], regs[r].genus,
                                    regs[r].punctures + u.i * degp[r] + u.j * degm[r], Role::thin};
  }

  auto place = [&](std::vector<Body> &pieces, const Body &old, const std::vector<std::string> &plus) {
    std::vector<std::string> ids;
    for (size_t k = 0; k < pieces.size(); ++k) {
      Body &p = pieces[k];
      p.id = k == 0 ? old.id : out.fresh_body_id(old.id + "_" + std::to_string(k));
      p.plus = plus[k];
      p.normalize();
      if (is_ball_empty(p, out))
        throw Error(what + ": the disc in " + old.id + " cuts off a ball disjoint from T");
      out.bodies[p.id] = p;
      ids.push_back(p.id);
      for (auto &m : p.minus)
        replace_in_orient(out, m, old.id, p.id);
    }
    return ids;
  };
  std::vector<std::string> uid = place(upieces, U, hp_id);
  std::vector<std::string> lid = place(lpieces, L, hm_id);

  // the bodies between H+ and F, and between F and H-
  std::vector<std::string> mp_id(hp.count), mm_id(hm.count);
  for (int k = 0; k < hp.count; ++k) {
    Body m;
    m.id = mp_id[k] = out.fresh_body_id(u.thick + "_hi");
    m.plus = hp_id[k];
    for (int r = 0; r < nreg; ++r)
      if (hp.of[r] == k) {
        m.minus.push_back(f_id[r]);
        m.vertical[f_id[r]] = regs[r].punctures + u.i * degp[r];
      }
    if (u.j)
      for (auto &e : edges)
        if (!e.plus && hp.of[e.r1] == k)
          m.ghost.push_back(ghost_edge(f_id[e.r1], f_id[e.r2]));
    m.normalize();
    out.bodies[m.id] = m;
  }
  for (int k = 0; k < hm.count; ++k) {
    Body m;
    m.id = mm_id[k] = out.fresh_body_id(u.thick + "_lo");
    m.plus = hm_id[k];
    for (int r = 0; r < nreg; ++r)
      if (hm.of[r] == k) {
        m.minus.push_back(f_id[r]);
        m.vertical[f_id[r]] = regs[r].punctures + u.j * degm[r];
      }
    if (u.i)
      for (auto &e : edges)
        if (e.plus && hm.of[e.r1] == k)
          m.ghost.push_back(ghost_edge(f_id[e.r1], f_id[e.r2]));
    m.normalize();
    out.bodies[m.id] = m;
  }

  // flow goes L -> U or U -> L; the new layers follow it
  bool up = d.orient.at(u.thick).first == L.id;
  auto orient = [&](const std::string &s, const std::string &below, const std::string &above) {
    out.orient[s] = up ? Orient{below, above} : Orient{above, below};
  };
  for (int k = 0; k < hm.count; ++k)
    orient(hm_id[k], lid[k], mm_id[k]);
  for (int r = 0; r < nreg; ++r)
    orient(f_id[r], mm_id[hm.of[r]], mp_id[hp.of[r]]);
  for (int k = 0; k < hp.count; ++k)
    orient(hp_id[k], mp_id[k], uid[k]);

  finish(out, d, what);
  return out;
}

// ---------------------------------------------------------------- consolidate

Diagram consolidate(const Diagram &d, const ConsolidateSpec &c) {
  const std::string what = "consolidate " + c.thin + " " + c.thick;
  require_valid(d, what);
  const Surface &F = d.surface(c.thin);
  const Surface &S = d.surface(c.thick);
  if (F.role != Role::thin || S.role != Role::thick)
    throw Error(what + ": needs a thin and a thick surface");
  std::string pid;
  for (auto &bid : d.plus_bodies(c.thick)) {
    const Body &b = d.body(bid);
    if (b.minus.size() == 1 && b.minus[0] == c.thin && is_trivial_product(b, d))
      pid = bid;
  }
  if (pid.empty())
    throw Error(what + ": the surfaces do not cobound a trivial product");
  const std::string Lid = d.across(c.thin, pid), Uid = d.across(c.thick, pid);
  if (Lid == Uid)
    throw Error(what + ": both sides of the product are the same body");
  const Body &L = d.body(Lid), &U = d.body(Uid);
  if (U.pockets)
    throw Error(what + ": cannot merge a pocket ball");

  using End = ArcTracer::End;
  ArcTracer tr;
  for (int k = 0; k < L.bridge; ++k)
    tr.segment(End::on_plus(), End::on_plus());
  std::vector<int> lside, uside;
  for (auto &[m, v] : L.vertical)
    for (int k = 0; k < v; ++k) {
      if (m != c.thin) {
        tr.segment(End::on_plus(), End::on_minus(m));
        continue;
      }
      int p = tr.new_port();
      tr.segment(End::on_plus(), End::at_port(p));
      lside.push_back(p);
    }
  for (auto &e : L.ghost) {
    if (e.first != c.thin && e.second != c.thin) {
      tr.segment(End::on_minus(e.first), End::on_minus(e.second));
    } else if (e.first == c.thin && e.second == c.thin) {
      int p = tr.new_port(), q = tr.new_port();
      tr.segment(End::at_port(p), End::at_port(q));
      lside.push_back(p);
      lside.push_back(q);
    } else {
      int p = tr.new_port();
      tr.segment(End::at_port(p), End::on_minus(e.first == c.thin ? e.second : e.first));
      lside.push_back(p);
    }
  }
  for (auto &[m, v] : U.vertical)
    for (int k = 0; k < v; ++k) {
      int p = tr.new_port();
      tr.segment(End::at_port(p), End::on_minus(m));
      uside.push_back(p);
    }
  for (int k = 0; k < U.bridge; ++k) {
    int p = tr.new_port(), q = tr.new_port();
    tr.segment(End::at_port(p), End::at_port(q));
    uside.push_back(p);
    uside.push_back(q);
  }
  for (auto &e : U.ghost)
    tr.segment(End::on_minus(e.first), End::on_minus(e.second));
  if (lside.size() != uside.size() || int(lside.size()) != F.punctures)
    throw Error(what + ": endpoint counts at the product do not agree");
  std::vector<int> perm = c.match;
  if (perm.empty()) {
    perm.resize(lside.size());
    std::iota(perm.begin(), perm.end(), 0);
  }
  {
    std::vector<int> chk = perm;
    std::sort(chk.begin(), chk.end());
    for (size_t k = 0; k < chk.size(); ++k)
      if (chk[k] != int(k) || chk.size() != lside.size())
        throw Error(what + ": match is not a permutation of the " + std::to_string(lside.size()) +
                    " strands");
  }
  for (size_t k = 0; k < lside.size(); ++k)
    tr.segment(End::at_port(lside[k]), End::at_port(uside[perm[k]]));
  ArcTracer::Result r = tr.trace();

  Body m;
  m.id = Lid;
  m.plus = L.plus;
  for (auto &x : L.minus)
    if (x != c.thin)
      m.minus.push_back(x);
  for (auto &x : U.minus)
    m.minus.push_back(x);
  m.bridge = r.bridge;
  m.vertical = r.vertical;
  m.ghost = r.ghost;
  m.loops = r.loops + L.loops + U.loops;

  Diagram out = d;
  out.bodies.erase(pid);
  out.bodies.erase(Uid);
  out.surfaces.erase(c.thin);
  out.surfaces.erase(c.thick);
  out.orient.erase(c.thin);
  out.orient.erase(c.thick);
  for (auto &x : U.minus)
    replace_in_orient(out, x, Uid, Lid);
  m.normalize();
  out.bodies[Lid] = m;
  finish(out, d, what);
  return out;
}

std::vector<ConsolidateSpec> consolidation_candidates(const Diagram &d) {
  std::vector<ConsolidateSpec> out;
  for (auto &[pid, p] : d.bodies) {
    if (!is_trivial_product(p, d) || d.surface(p.minus[0]).role != Role::thin)
      continue;
    try {
      std::string L = d.across(p.minus[0], pid), U = d.across(p.plus, pid);
      if (L != U && !d.body(U).pockets)
        out.push_back({p.minus[0], p.plus, {}});
    } catch (const Error &) {
    }
  }
  std::sort(out.begin(), out.end(), [](auto &a, auto &b) {
    return std::tie(a.thin, a.thick) < std::tie(b.thin, b.thick);
  });
  return out;
}

// ---------------------------------------------------------------- destabilize

Diagram destabilize(const Diagram &d, const DestabilizeSpec &s) {
  const std::string what = std::string("destabilize ") + to_string(s.kind) + " " + s.thick;
  require_valid(d, what);
  if (d.surface(s.thick).role != Role::thick)
    throw Error(what + ": not a thick surface");
  Diagram out = d;
  Surface &H = out.surface(s.thick);
  Body cd = out.body(s.disc);
  if (cd.plus != s.thick)
    throw Error(what + ": body " + s.disc + " is not adjacent");
  Body co = out.body(out.across(s.thick, s.disc));
  if (cd.pockets || co.pockets)
    throw Error(what + ": pocket balls cannot destabilize");
  bool meridional = s.kind == DestabKind::meridional || s.kind == DestabKind::meridional_boundary ||
                    s.kind == DestabKind::ghost_meridional_boundary;
  bool boundary = s.kind != DestabKind::plain && s.kind != DestabKind::meridional;
  bool ghosty = s.kind == DestabKind::ghost_boundary || s.kind == DestabKind::ghost_meridional_boundary;

  if (!boundary) {
    if (!s.gset.empty() || !s.bb.empty() || !s.bh.empty() || !s.vf.empty() || s.hat.kind != ArcRef::none)
      throw Error(what + ": boundary data given to a non-boundary destabilization");
    if (H.genus < 1)
      throw Error(what + ": genus is already 0");
    H.genus -= 1;
    if (meridional) {
      H.punctures += 2;
      int ph = H.punctures;
      std::vector<Body> cut = cut_body(cd, CutSide{{}, std::nullopt, -1, s.cut}, 1, 1, 0, 0, {ph}, what);
      cut[0].id = cd.id;
      cut[0].plus = cd.plus;
      cd = cut[0];
      co.bridge += 1;
    } else if (s.cut.kind != ArcRef::none) {
      throw Error(what + ": a plain destabilization cuts no arc");
    }
  } else {
    if (s.cut.kind != ArcRef::none)
      throw Error(what + ": boundary variants use hat, not cut");
    if (s.gset.empty())
      throw Error(what + ": empty G set");
    std::set<std::string> G(s.gset.begin(), s.gset.end());
    if (G.size() != s.gset.size())
      throw Error(what + ": repeated surface in the G set");
    int gsum = 0, psum = 0;
    for (auto &g : G) {
      if (!cd.has_minus(g))
        throw Error(what + ": '" + g + "' is not a minus surface of " + cd.id);
      const Surface &gs = d.surface(g);
      if (gs.role != Role::boundary)
        throw Error(what + ": only boundary surfaces can move across (" + g + " is " +
                    to_string(gs.role) + ")");
      gsum += gs.genus;
      psum += gs.punctures;
    }
    // ghost arcs of the disc side that touch G
    std::vector<GhostEdge> internal, external;
    for (auto &e : cd.ghost) {
      bool a = G.count(e.first), b = G.count(e.second);
      if (a && b)
        internal.push_back(e);
      else if (a || b)
        external.push_back(e);
    }
    if (!ghosty && (G.size() != 1 || !internal.empty()))
      throw Error(what + ": the G set must be a single surface joined to H by vertical arcs only");
    {
      std::vector<std::string> gv(G.begin(), G.end());
      Dsu dsu(int(gv.size()));
      auto idx = [&](const std::string &x) {
        return int(std::lower_bound(gv.begin(), gv.end(), x) - gv.begin());
      };
      int comps = int(gv.size());
      for (auto &e : internal)
        if (dsu.find(idx(e.first)) != dsu.find(idx(e.second))) {
          dsu.unite(idx(e.first), idx(e.second));
          --comps;
        }
      if (comps != 1)
        throw Error(what + ": the G set is not connected by ghost arcs");
    }
    const ArcRef &hat = s.hat;
    if (meridional) {
      if (hat.kind == ArcRef::vertical) {
        if (!G.count(hat.a) || cd.vert(hat.a) < 1)
          throw Error(what + ": hat must be a vertical arc to a surface of G");
        if (!external.empty())
          throw Error(what + ": ghost arcs leave the G set");
      } else if (hat.kind == ArcRef::ghost) {
        GhostEdge e = ghost_edge(hat.a, hat.b);
        if (external.size() != 1 || external[0] != e || G.count(hat.a) == G.count(hat.b))
          throw Error(what + ": hat must be the one ghost arc leaving the G set");
      } else {
        throw Error(what + ": meridional variants need a hat arc");
      }
    } else {
      if (hat.kind != ArcRef::none)
        throw Error(what + ": hat given to a non-meridional variant");
      if (!external.empty())
        throw Error(what + ": ghost arcs leave the G set");
    }
    int nsub = int(internal.size()), k = int(G.size());
    int geff = gsum + nsub - k + 1;
    int peff = psum - 2 * nsub;
    if (H.genus < geff)
      throw Error(what + ": thick genus " + std::to_string(H.genus) + " is below " +
                  std::to_string(geff));
    H.genus -= geff;
    H.punctures = H.punctures - peff + (meridional ? 2 : 0);
    if (H.punctures < 0)
      throw Error(what + ": negative punctures");

    // disc side drops G
    Body nd = cd;
    nd.minus.clear();
    for (auto &m : cd.minus)
      if (!G.count(m))
        nd.minus.push_back(m);
    for (auto &g : G)
      nd.vertical.erase(g);
    nd.ghost.clear();
    for (auto &e : cd.ghost)
      if (!G.count(e.first) && !G.count(e.second))
        nd.ghost.push_back(e);
    std::string hat_g;
    if (meridional) {
      if (hat.kind == ArcRef::vertical) {
        nd.bridge += 1;
        hat_g = hat.a;
      } else {
        std::string f = G.count(hat.a) ? hat.b : hat.a;
        hat_g = G.count(hat.a) ? hat.a : hat.b;
        nd.vertical[f] += 1;
      }
    }
    cd = nd;

    // other side gains G, retyping the arcs that ran into the G region
    for (auto &g : G)
      co.minus.push_back(g);
    for (auto &e : internal)
      co.ghost.push_back(e);
    for (auto &e : s.bb) {
      if (!G.count(e.first) || !G.count(e.second))
        throw Error(what + ": bb arcs must end on G");
      co.bridge -= 1;
      co.ghost.push_back(e);
    }
    for (auto &[g, n] : s.bh) {
      if (!G.count(g) || n < 0)
        throw Error(what + ": bh arcs must end on G");
      co.bridge -= n;
      co.vertical[g] += n;
    }
    for (auto &e : s.vf) {
      // stored as (F, G)
      const std::string &f = e.first, &g = e.second;
      if (!G.count(g) || G.count(f) || !co.has_minus(f) || co.vert(f) < 1)
        throw Error(what + ": vf entry (" + f + "," + g + ") needs a vertical arc to " + f);
      co.vertical[f] -= 1;
      co.ghost.push_back(ghost_edge(f, g));
    }
    if (co.bridge < 0)
      throw Error(what + ": not enough bridge arcs on " + co.id + " to retype");
    if (meridional)
      co.vertical[hat_g] += 1;
  }
  cd.normalize();
  co.normalize();
  out.bodies[cd.id] = cd;
  out.bodies[co.id] = co;
  finish(out, d, what);
  return out;
}

// ---------------------------------------------------------------- unperturb, removable arcs

Diagram unperturb(const Diagram &d, const UnperturbSpec &s) {
  const std::string what = "unperturb " + s.thick;
  require_valid(d, what);
  Diagram out = d;
  Surface &H = out.surface(s.thick);
  if (H.role != Role::thick)
    throw Error(what + ": not a thick surface");
  Body &a = out.body(s.side);
  if (a.plus != s.thick)
    throw Error(what + ": body " + s.side + " is not adjacent");
  Body &b = out.body(out.across(s.thick, s.side));
  if (a.bridge < 1 || b.bridge < 1)
    throw Error(what + ": needs a bridge arc on each side");
  if (H.punctures < 2)
    throw Error(what + ": too few punctures");
  H.punctures -= 2;
  a.bridge -= 1;
  switch (s.e.kind) {
  case ArcRef::bridge:
    if (b.bridge < 2)
      throw Error(what + ": e must be a bridge arc other than a'");
    b.bridge -= 1;
    break;
  case ArcRef::vertical:
    if (b.vert(s.e.a) < 1)
      throw Error(what + ": no vertical arc to '" + s.e.a + "'");
    b.bridge -= 1;
    break;
  default:
    throw Error(what + ": e must be a bridge or vertical arc");
  }
  finish(out, d, what);
  return out;
}

Diagram remove_removable_arc(const Diagram &d, const RemoveArcSpec &s) {
  const std::string what = "remove_removable_arc " + s.thick;
  require_valid(d, what);
  Diagram out = d;
  Surface &H = out.surface(s.thick);
  if (H.role != Role::thick)
    throw Error(what + ": not a thick surface");
  Body &a = out.body(s.side);
  if (a.plus != s.thick)
    throw Error(what + ": body " + s.side + " is not adjacent");
  Body &b = out.body(out.across(s.thick, s.side));
  if (a.bridge < 1)
    throw Error(what + ": " + s.side + " has no bridge arc");
  if (H.punctures < 2)
    throw Error(what + ": too few punctures");
  H.punctures -= 2;
  a.bridge -= 1;
  auto kind = [](const ArcRef &r) { return r.kind; };
  if (s.e2.kind == ArcRef::none) {
    if (kind(s.e1) != ArcRef::bridge || b.bridge < 1)
      throw Error(what + ": closing into a loop needs one bridge arc");
    b.bridge -= 1;
    b.loops += 1;
  } else if (kind(s.e1) == ArcRef::bridge && kind(s.e2) == ArcRef::bridge) {
    if (b.bridge < 2)
      throw Error(what + ": needs two bridge arcs");
    b.bridge -= 1;
  } else if (kind(s.e1) == ArcRef::vertical && kind(s.e2) == ArcRef::vertical) {
    int need = s.e1.a == s.e2.a ? 2 : 1;
    if (b.vert(s.e1.a) < need || b.vert(s.e2.a) < need)
      throw Error(what + ": not enough vertical arcs");
    b.vertical[s.e1.a] -= 1;
    b.vertical[s.e2.a] -= 1;
    b.ghost.push_back(ghost_edge(s.e1.a, s.e2.a));
  } else if ((kind(s.e1) == ArcRef::bridge && kind(s.e2) == ArcRef::vertical) ||
             (kind(s.e1) == ArcRef::vertical && kind(s.e2) == ArcRef::bridge)) {
    const ArcRef &v = kind(s.e1) == ArcRef::vertical ? s.e1 : s.e2;
    if (b.bridge < 1 || b.vert(v.a) < 1)
      throw Error(what + ": needs a bridge arc and a vertical arc");
    b.bridge -= 1;
  } else {
    throw Error(what + ": e1 and e2 must be bridge or vertical arcs");
  }
  finish(out, d, what);
  return out;
}

// ---------------------------------------------------------------- composites

Diagram elementary_thinning(const Diagram &d, const UntelescopeSpec &u, const MoveOptions &o) {
  Diagram cur = untelescope(d, u, o);
  auto is_new = [&](const std::string &sid) { return !d.surfaces.count(sid); };
  for (int pass = 0; pass < 2; ++pass) {
    for (bool progress = true; progress;) {
      progress = false;
      for (auto &c : consolidation_candidates(cur)) {
        bool ok = pass == 0 ? is_new(c.thin) && is_new(c.thick) : is_new(c.thick) && !is_new(c.thin);
        if (!ok)
          continue;
        try {
          cur = consolidate(cur, c);
          progress = true;
          break;
        } catch (const Error &) {
        }
      }
    }
  }
  return cur;
}

Diagram apply_move(const Diagram &d, const MoveSpec &m, const MoveOptions &o) {
  return std::visit(
      [&](const auto &x) -> Diagram {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, UntelescopeSpec>)
          return untelescope(d, x, o);
        else if constexpr (std::is_same_v<T, ThinSpec>)
          return elementary_thinning(d, x.u, o);
        else if constexpr (std::is_same_v<T, ConsolidateSpec>)
          return consolidate(d, x);
        else if constexpr (std::is_same_v<T, DestabilizeSpec>)
          return destabilize(d, x);
        else if constexpr (std::is_same_v<T, UnperturbSpec>)
          return unperturb(d, x);
        else
          return remove_removable_arc(d, x);
      },
      m);
}

ThinningRun extended_thinning(const Diagram &d, const std::vector<MoveSpec> &script,
                              const MoveOptions &o, std::size_t budget) {
  if (script.empty())
    throw Error("extended thinning: empty script (it must start with an elementary thinning)");
  if (!std::holds_alternative<ThinSpec>(script.front()))
    throw Error("extended thinning: the script must start with an elementary thinning");
  if (script.size() > budget)
    throw Error("extended thinning: script exceeds the move budget of " + std::to_string(budget));
  require_valid(d, "extended thinning");
  ThinningRun run;
  run.result = d;
  Q ne = netext(d), w = width(d);
  int nc = netchi(d);
  for (size_t k = 0; k < script.size(); ++k) {
    Diagram next = apply_move(run.result, script[k], o);
    Q ne2 = netext(next), w2 = width(next);
    int nc2 = netchi(next);
    std::string at = "extended thinning step " + std::to_string(k + 1) + " (" + move_name(script[k]) + ")";
    if (nc2 > nc)
      throw Error(at + ": netchi rose from " + std::to_string(nc) + " to " + std::to_string(nc2));
    if (ne2 > ne)
      throw Error(at + ": netext rose from " + fmt_q(ne) + " to " + fmt_q(ne2));
    if (width_hypothesis(run.result) && w2 > w)
      throw Error(at + ": width rose from " + fmt_q(w) + " to " + fmt_q(w2));
    run.steps.push_back({script[k], ne2, w2, nc2});
    run.result = std::move(next);
    ne = ne2;
    w = w2;
    nc = nc2;
  }
  return run;
}

Report locally_thin_lint(const Diagram &d) {
  Report r;
  for (auto &[id, s] : d.surfaces)
    if (s.role != Role::boundary && s.genus == 0 && s.punctures == 0 && d.meta.tkind != TKind::empty)
      r.add("surface " + id + ": a " + to_string(s.role) + " sphere disjoint from T");
  for (auto &[id, b] : d.bodies)
    if (is_trivial_product(b, d) && d.surface(b.minus[0]).role == Role::thin)
      r.add("body " + id + ": trivial product between " + b.plus + " and thin surface " + b.minus[0] +
            " (consolidation applies)");
  return r;
}

// ---------------------------------------------------------------- text form

std::string move_name(const MoveSpec &m) {
  switch (m.index()) {
  case 0:
    return "untelescope";
  case 1:
    return "thin";
  case 2:
    return "consolidate";
  case 3:
    return "destabilize";
  case 4:
    return "unperturb";
  default:
    return "remove";
  }
}

namespace {

std::string join(const std::vector<std::string> &xs) {
  std::string s;
  for (size_t k = 0; k < xs.size(); ++k)
    s += (k ? "," : "") + xs[k];
  return s;
}

std::string print_pairs(const std::vector<GhostEdge> &v) {
  std::vector<std::string> xs;
  for (auto &e : v)
    xs.push_back("(" + e.first + "," + e.second + ")");
  return "[" + join(xs) + "]";
}

std::string print_side(const std::string &p, const CutSide &s) {
  std::string out;
  if (!s.minus_piece.empty()) {
    std::vector<std::string> xs;
    for (auto &[m, k] : s.minus_piece)
      xs.push_back(m + ":" + std::to_string(k));
    out += " " + p + "pieces={" + join(xs) + "}";
  }
  if (s.bridge0)
    out += " " + p + "bridge0=" + std::to_string(*s.bridge0);
  if (s.loops0 >= 0)
    out += " " + p + "loops0=" + std::to_string(s.loops0);
  if (s.cut.kind != ArcRef::none)
    out += " " + p + "cut=" + print_arc_ref(s.cut);
  return out;
}

std::string print_untelescope(const UntelescopeSpec &u) {
  std::vector<std::string> rs;
  for (auto &r : u.regions)
    rs.push_back("(" + std::to_string(r.genus) + "," + std::to_string(r.punctures) + ")");
  return "thick=" + u.thick + " upper=" + u.upper + " i=" + std::to_string(u.i) +
         " j=" + std::to_string(u.j) + " shape=" + to_string(u.shape) + " regions=[" + join(rs) +
         "]" + print_side("u", u.upper_side) + print_side("l", u.lower_side);
}

void check_keys(const Record &r, std::initializer_list<const char *> allowed) {
  for (auto &[k, v] : r.kv) {
    bool ok = false;
    for (auto *a : allowed)
      ok |= k == a;
    if (!ok)
      r.fail("unknown key '" + k + "' for " + r.kind);
  }
}

CutSide parse_side(const Record &r, const std::string &p) {
  CutSide s;
  if (r.has(p + "pieces"))
    for (auto &[m, k] : parse_map(r.get(p + "pieces"), r))
      s.minus_piece[m] = parse_int(k, r);
  if (r.has(p + "bridge0"))
    s.bridge0 = r.get_int(p + "bridge0");
  s.loops0 = r.get_int_or(p + "loops0", -1);
  if (r.has(p + "cut"))
    s.cut = parse_arc_ref(r.get(p + "cut"));
  return s;
}

UntelescopeSpec parse_untelescope(const Record &r) {
  check_keys(r, {"thick", "upper", "i", "j", "shape", "regions", "upieces", "ubridge0", "uloops0",
                 "ucut", "lpieces", "lbridge0", "lloops0", "lcut"});
  UntelescopeSpec u;
  u.thick = r.get("thick");
  u.upper = r.get("upper");
  u.i = r.get_int_or("i", 0);
  u.j = r.get_int_or("j", 0);
  u.shape = parse_shape(r.get("shape"));
  for (auto &t : parse_list(r.get("regions"), r)) {
    auto g = parse_tuple(t, r);
    if (g.size() != 2)
      r.fail("regions are (genus,punctures) pairs");
    u.regions.push_back({parse_int(g[0], r), parse_int(g[1], r)});
  }
  u.upper_side = parse_side(r, "u");
  u.lower_side = parse_side(r, "l");
  return u;
}

std::vector<GhostEdge> parse_pairs(const Record &r, const std::string &key, bool ordered) {
  std::vector<GhostEdge> out;
  if (!r.has(key))
    return out;
  for (auto &t : parse_list(r.get(key), r)) {
    auto g = parse_tuple(t, r);
    if (g.size() != 2)
      r.fail(key + " entries are pairs");
    out.push_back(ordered ? GhostEdge{g[0], g[1]} : ghost_edge(g[0], g[1]));
  }
  return out;
}

} // namespace

std::string print_move(const MoveSpec &m) {
  return std::visit(
      [&](const auto &x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, UntelescopeSpec>) {
          return "untelescope " + print_untelescope(x);
        } else if constexpr (std::is_same_v<T, ThinSpec>) {
          return "thin " + print_untelescope(x.u);
        } else if constexpr (std::is_same_v<T, ConsolidateSpec>) {
          std::string s = "consolidate thin=" + x.thin + " thick=" + x.thick;
          if (!x.match.empty()) {
            std::vector<std::string> xs;
            for (int k : x.match)
              xs.push_back(std::to_string(k));
            s += " match=[" + join(xs) + "]";
          }
          return s;
        } else if constexpr (std::is_same_v<T, DestabilizeSpec>) {
          std::string s = std::string("destabilize kind=") + to_string(x.kind) + " thick=" + x.thick +
                          " disc=" + x.disc;
          if (x.cut.kind != ArcRef::none)
            s += " cut=" + print_arc_ref(x.cut);
          if (!x.gset.empty())
            s += " gset=[" + join(x.gset) + "]";
          if (!x.bb.empty())
            s += " bb=" + print_pairs(x.bb);
          if (!x.bh.empty()) {
            std::vector<std::string> xs;
            for (auto &[g, n] : x.bh)
              xs.push_back(g + ":" + std::to_string(n));
            s += " bh={" + join(xs) + "}";
          }
          if (!x.vf.empty())
            s += " vf=" + print_pairs(x.vf);
          if (x.hat.kind != ArcRef::none)
            s += " hat=" + print_arc_ref(x.hat);
          return s;
        } else if constexpr (std::is_same_v<T, UnperturbSpec>) {
          return "unperturb thick=" + x.thick + " side=" + x.side + " e=" + print_arc_ref(x.e);
        } else {
          std::string s = "remove thick=" + x.thick + " side=" + x.side + " e1=" + print_arc_ref(x.e1);
          if (x.e2.kind != ArcRef::none)
            s += " e2=" + print_arc_ref(x.e2);
          return s;
        }
      },
      m);
}

MoveSpec parse_move(const std::string &line, int lineno) {
  Record r = parse_record(line, lineno);
  if (!r.args.empty())
    r.fail("moves take key=value arguments only");
  try {
    if (r.kind == "untelescope")
      return parse_untelescope(r);
    if (r.kind == "thin")
      return ThinSpec{parse_untelescope(r)};
    if (r.kind == "consolidate") {
      check_keys(r, {"thin", "thick", "match"});
      ConsolidateSpec c{r.get("thin"), r.get("thick"), {}};
      if (r.has("match"))
        for (auto &k : parse_list(r.get("match"), r))
          c.match.push_back(parse_int(k, r));
      return c;
    }
    if (r.kind == "destabilize") {
      check_keys(r, {"kind", "thick", "disc", "cut", "gset", "bb", "bh", "vf", "hat"});
      DestabilizeSpec s;
      s.kind = parse_destab_kind(r.get("kind"));
      s.thick = r.get("thick");
      s.disc = r.get("disc");
      if (r.has("cut"))
        s.cut = parse_arc_ref(r.get("cut"));
      if (r.has("gset"))
        s.gset = parse_list(r.get("gset"), r);
      s.bb = parse_pairs(r, "bb", false);
      if (r.has("bh"))
        for (auto &[g, n] : parse_map(r.get("bh"), r))
          s.bh[g] = parse_int(n, r);
      s.vf = parse_pairs(r, "vf", true);
      if (r.has("hat"))
        s.hat = parse_arc_ref(r.get("hat"));
      return s;
    }
    if (r.kind == "unperturb") {
      check_keys(r, {"thick", "side", "e"});
      return UnperturbSpec{r.get("thick"), r.get("side"), parse_arc_ref(r.get("e"))};
    }
    if (r.kind == "remove") {
      check_keys(r, {"thick", "side", "e1", "e2"});
      return RemoveArcSpec{r.get("thick"), r.get("side"), parse_arc_ref(r.get("e1")),
                           parse_arc_ref(r.get_or("e2", "none"))};
    }
  } catch (const Error &e) {
    std::string msg = e.what();
    if (msg.rfind("line ", 0) == 0)
      throw;
    r.fail(msg);
  }
  r.fail("unknown move '" + r.kind + "'");
}

std::vector<MoveSpec> parse_moves(std::istream &in) {
  std::vector<MoveSpec> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    out.push_back(parse_move(line, n));
  }
  return out;
}

std::vector<MoveSpec> load_moves(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot read '" + path + "'");
  return parse_moves(in);
}

WidthAlgebra thinning_width_algebra(const Q &x, int i, int j, const Q &xpp, const Q &xmm) {
  WidthAlgebra a;
  a.xp = x + Q(i - 1) - xpp;
  a.xm = x + Q(j - 1) - xmm;
  a.y = x + Q(i + j - 2) - xpp - xmm;
  a.lhs = a.xp * a.xp + a.xm * a.xm - a.y * a.y;
  a.rhs = x * x - Q(2) * (Q(j - 1) - xmm) * (Q(i - 1) - xpp);
  return a;
}

} // namespace vpb
