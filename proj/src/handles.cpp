#include "vpbridge/handles.hpp"

#include "vpbridge/validate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace vpb {

void ArcTracer::segment(End a, End b) { segs_.push_back({std::move(a), std::move(b)}); }

ArcTracer::Result ArcTracer::trace() const {
  // end k of segment s has index 2s+k
  const int n = int(segs_.size());
  auto end_of = [&](int e) -> const End & { return e % 2 ? segs_[e / 2].second : segs_[e / 2].first; };
  std::map<int, std::vector<int>> by_port;
  for (int e = 0; e < 2 * n; ++e)
    if (end_of(e).kind == End::port)
      by_port[end_of(e).port_id].push_back(e);
  std::vector<int> mate(2 * n, -1);
  for (auto &[p, es] : by_port) {
    if (es.size() != 2)
      throw Error("arc trace: port " + std::to_string(p) + " used " + std::to_string(es.size()) +
                  " times");
    mate[es[0]] = es[1];
    mate[es[1]] = es[0];
  }
  Result r;
  std::vector<char> used(n, 0);
  // walk from a terminal end until the next terminal end
  auto walk = [&](int start) {
    int e = start;
    for (;;) {
      used[e / 2] = 1;
      int other = e ^ 1;
      if (end_of(other).kind != End::port)
        return other;
      e = mate[other];
    }
  };
  for (int e = 0; e < 2 * n; ++e) {
    if (used[e / 2] || end_of(e).kind == End::port)
      continue;
    int f = walk(e);
    const End &a = end_of(e), &b = end_of(f);
    if (a.kind == End::plus && b.kind == End::plus)
      r.bridge++;
    else if (a.kind == End::plus)
      r.vertical[b.surface]++;
    else if (b.kind == End::plus)
      r.vertical[a.surface]++;
    else
      r.ghost.push_back(ghost_edge(a.surface, b.surface));
  }
  // what is left is closed up entirely through ports
  for (int s = 0; s < n; ++s) {
    if (used[s])
      continue;
    int e = 2 * s;
    for (;;) {
      used[e / 2] = 1;
      int nxt = mate[e ^ 1];
      if (nxt / 2 == s)
        break;
      e = nxt;
    }
    r.loops++;
  }
  std::sort(r.ghost.begin(), r.ghost.end());
  return r;
}

Diagram DerivedBody::context() const {
  Diagram d;
  d.surfaces["+"] = Surface{"+", plus_genus, plus_punctures, Role::thick};
  for (auto &s : minus)
    d.surfaces[s.id] = s;
  d.bodies[body.id] = body;
  return d;
}

DerivedBody derive_summary(const HandlePresentation &h) {
  const int nz = int(h.zero.size());
  if (nz == 0)
    throw Error("handle presentation has no zero-handles");
  std::map<std::string, int> seen_surface;
  for (int z = 0; z < nz; ++z) {
    const ZeroHandle &zh = h.zero[z];
    if (zh.kind == ZeroHandle::product) {
      if (zh.surface.empty() || zh.surface == "+")
        throw Error("product zero-handle needs a surface id");
      if (!seen_surface.emplace(zh.surface, z).second)
        throw Error("surface '" + zh.surface + "' carries two product zero-handles");
      if (zh.genus < 0 || zh.strands < 0)
        throw Error("product zero-handle with negative genus or strands");
    }
  }
  // each endpoint of a zero-handle top gets a port if a cored handle binds it
  std::map<std::pair<int, int>, int> bound;
  ArcTracer tr;
  int cored = 0;
  for (size_t k = 0; k < h.one.size(); ++k) {
    const OneHandle &o = h.one[k];
    if (o.a < 0 || o.a >= nz || o.b < 0 || o.b >= nz)
      throw Error("one-handle " + std::to_string(k) + " attaches to a missing zero-handle");
    if (!o.cored) {
      if (!o.bindings.empty())
        throw Error("one-handle " + std::to_string(k) + " has bindings but no core");
      continue;
    }
    ++cored;
    if (o.bindings.size() != 2)
      throw Error("dangling core: cored one-handle " + std::to_string(k) +
                  " must bind exactly two endpoints");
    if (o.bindings[0].zh != o.a || o.bindings[1].zh != o.b)
      throw Error("dangling core: cored one-handle " + std::to_string(k) +
                  " binds endpoints away from its feet");
    // the core itself is a segment joining the two bound endpoints
    int pa = tr.new_port(), pb = tr.new_port();
    tr.segment(ArcTracer::End::at_port(pa), ArcTracer::End::at_port(pb));
    for (int side = 0; side < 2; ++side) {
      const Binding &bd = o.bindings[side];
      if (bd.endpoint < 0 || bd.endpoint >= h.zero[bd.zh].endpoints())
        throw Error("dangling core: endpoint " + std::to_string(bd.endpoint) + " of zero-handle " +
                    std::to_string(bd.zh) + " does not exist");
      if (!bound.emplace(std::make_pair(bd.zh, bd.endpoint), side ? pb : pa).second)
        throw Error("endpoint " + std::to_string(bd.endpoint) + " of zero-handle " +
                    std::to_string(bd.zh) + " is bound twice");
    }
  }
  auto top = [&](int z, int e) {
    auto it = bound.find({z, e});
    return it == bound.end() ? ArcTracer::End::on_plus() : ArcTracer::End::at_port(it->second);
  };
  int endpoints = 0;
  long long chi = 0;
  DerivedBody out;
  out.body.id = "C";
  out.body.plus = "+";
  for (int z = 0; z < nz; ++z) {
    const ZeroHandle &zh = h.zero[z];
    endpoints += zh.endpoints();
    chi += zh.top_chi();
    if (zh.kind == ZeroHandle::ball_arc)
      tr.segment(top(z, 0), top(z, 1));
    if (zh.kind == ZeroHandle::product) {
      out.body.minus.push_back(zh.surface);
      out.minus.push_back(Surface{zh.surface, zh.genus, zh.strands, Role::thin});
      for (int k = 0; k < zh.strands; ++k)
        tr.segment(ArcTracer::End::on_minus(zh.surface), top(z, k));
    }
  }
  // connectivity of the handle graph
  std::vector<int> par(nz);
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
  int comps = nz;
  for (auto &o : h.one) {
    int a = find(o.a), b = find(o.b);
    if (a != b) {
      par[a] = b;
      --comps;
    }
  }
  if (comps != 1)
    throw Error("handle presentation is disconnected");
  chi -= 2 * (long long)h.one.size();
  if ((2 - chi) % 2 != 0 || 2 - chi < 0)
    throw Error("negative derived genus");
  out.plus_genus = int((2 - chi) / 2);
  out.plus_punctures = endpoints - 2 * cored;
  ArcTracer::Result r = tr.trace();
  out.body.bridge = r.bridge;
  out.body.vertical = r.vertical;
  out.body.ghost = r.ghost;
  out.body.loops = r.loops;
  out.body.normalize();
  return out;
}

std::optional<HandlePresentation> build_witness(const Body &b, const Diagram &d) {
  if (b.pockets)
    return std::nullopt;
  if (!validate_body(b, d).ok())
    return std::nullopt;
  HandlePresentation h;
  std::map<std::string, int> node;
  std::map<std::string, int> next_free;
  for (auto &m : b.minus) {
    const Surface &f = d.surface(m);
    node[m] = int(h.zero.size());
    h.zero.push_back(ZeroHandle{ZeroHandle::product, m, f.genus, f.punctures});
    next_free[m] = 0;
  }
  std::vector<int> par(b.minus.size());
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
  for (auto &e : b.ghost) {
    int za = node[e.first], zb = node[e.second];
    OneHandle o{true, za, zb, {}};
    o.bindings.push_back({za, next_free[e.first]++});
    o.bindings.push_back({zb, next_free[e.second]++});
    h.one.push_back(o);
    par[find(za)] = find(zb);
  }
  // tie the ghost components together with plain handles
  for (size_t k = 1; k < b.minus.size(); ++k)
    if (find(int(k)) != find(0)) {
      h.one.push_back(OneHandle{false, 0, int(k), {}});
      par[find(int(k))] = find(0);
    }
  auto attach = [&](int z) {
    if (z != 0)
      h.one.push_back(OneHandle{false, 0, z, {}});
  };
  for (int k = 0; k < b.bridge; ++k) {
    int z = int(h.zero.size());
    h.zero.push_back(ZeroHandle{ZeroHandle::ball_arc, "", 0, 0});
    attach(z);
  }
  for (int k = 0; k < b.loops; ++k) {
    int z = int(h.zero.size());
    h.zero.push_back(ZeroHandle{ZeroHandle::ball_arc, "", 0, 0});
    h.one.push_back(OneHandle{true, z, z, {{z, 0}, {z, 1}}});
    attach(z);
  }
  if (h.zero.empty())
    h.zero.push_back(ZeroHandle{ZeroHandle::ball_empty, "", 0, 0});
  int surplus = d.surface(b.plus).genus - genus_lower_bound(b, d);
  for (int k = 0; k < surplus; ++k)
    h.one.push_back(OneHandle{false, 0, 0, {}});
  return h;
}

std::string describe(const HandlePresentation &h) {
  std::ostringstream os;
  for (size_t z = 0; z < h.zero.size(); ++z) {
    const ZeroHandle &zh = h.zero[z];
    os << "zero " << z << ' ';
    switch (zh.kind) {
    case ZeroHandle::ball_empty:
      os << "ball_empty";
      break;
    case ZeroHandle::ball_arc:
      os << "ball_arc";
      break;
    case ZeroHandle::product:
      os << "product(" << zh.surface << ",genus=" << zh.genus << ",strands=" << zh.strands << ")";
      break;
    }
    os << '\n';
  }
  for (auto &o : h.one) {
    os << "one " << (o.cored ? "cored" : "plain") << ' ' << o.a << '-' << o.b;
    for (auto &bd : o.bindings)
      os << " bind(" << bd.zh << ':' << bd.endpoint << ')';
    os << '\n';
  }
  return os.str();
}

} // namespace vpb
