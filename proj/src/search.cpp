#include "vpbridge/search.hpp"

#include "vpbridge/validate.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace vpb {

// ---------------------------------------------------------------- bodies

BodyShape make_shape(const Body &b, const Diagram &d) {
  BodyShape s;
  Diagram &c = s.context;
  c.meta.tkind = b.pockets ? TKind::graph : TKind::link;
  const Surface &plus = d.surface(b.plus);
  c.surfaces["H"] = Surface{"H", plus.genus, plus.punctures, Role::thick};
  std::map<std::string, std::string> name;
  int k = 0;
  for (auto &m : b.minus) {
    name[m] = "F" + std::to_string(++k);
    const Surface &f = d.surface(m);
    c.surfaces[name[m]] = Surface{name[m], f.genus, f.punctures, Role::thin};
  }
  Body nb{"C", "H", {}, b.bridge, {}, {}, b.loops, b.pockets};
  for (auto &m : b.minus)
    nb.minus.push_back(name[m]);
  for (auto &[f, v] : b.vertical)
    nb.vertical[name[f]] = v;
  for (auto &e : b.ghost)
    nb.ghost.push_back(ghost_edge(name[e.first], name[e.second]));
  nb.normalize();
  c.bodies["C"] = nb;
  s.body_id = "C";
  return s;
}

std::string body_key(const Body &b, const Diagram &d) {
  const Surface &plus = d.surface(b.plus);
  std::ostringstream head;
  head << plus.genus << ',' << plus.punctures << '|' << b.bridge << ',' << b.loops << ','
       << b.pockets << '|';
  const int m = int(b.minus.size());
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::string, int> idx;
  for (int k = 0; k < m; ++k)
    idx[b.minus[k]] = k;
  std::string best;
  bool first = true;
  do {
    // perm[k] is the new position of minus k
    std::vector<int> at(m);
    for (int k = 0; k < m; ++k)
      at[perm[k]] = k;
    std::ostringstream os;
    for (int pos = 0; pos < m; ++pos) {
      const std::string &f = b.minus[at[pos]];
      const Surface &s = d.surface(f);
      os << '(' << s.genus << ',' << s.punctures << ',' << b.vert(f) << ')';
    }
    std::vector<std::pair<int, int>> gs;
    for (auto &e : b.ghost) {
      int x = perm[idx[e.first]], y = perm[idx[e.second]];
      gs.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(gs.begin(), gs.end());
    os << '|';
    for (auto &[x, y] : gs)
      os << x << '-' << y << ' ';
    std::string s = os.str();
    if (first || s < best)
      best = s;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return head.str() + best;
}

namespace {

void check_limits(const BodyLimits &lim) {
  if (lim.max_genus < 0 || lim.max_punctures < 0 || lim.max_minus < 0)
    throw Error("body limits must be non-negative");
  if (lim.max_genus > 3 || lim.max_punctures > 8 || lim.max_minus > 4)
    throw Error("body limits too large: genus <= 3, punctures <= 8, minus <= 4");
}

// Loop-allowing multigraphs on vertices 0..n-1 with the given degrees,
// edges listed in nondecreasing order.
void ghost_graphs(std::vector<int> &deg, std::vector<std::pair<int, int>> &edges,
                  const std::function<void()> &emit) {
  int i = 0;
  while (i < int(deg.size()) && deg[i] == 0)
    ++i;
  if (i == int(deg.size())) {
    emit();
    return;
  }
  int jmin = i;
  if (!edges.empty() && edges.back().first == i)
    jmin = edges.back().second;
  for (int j = jmin; j < int(deg.size()); ++j) {
    if (j == i ? deg[i] < 2 : deg[j] < 1)
      continue;
    deg[i]--;
    deg[j]--;
    edges.emplace_back(i, j);
    ghost_graphs(deg, edges, emit);
    edges.pop_back();
    deg[i]++;
    deg[j]++;
  }
}

std::vector<std::pair<int, int>> minus_types(const BodyLimits &lim) {
  std::vector<std::pair<int, int>> t;
  for (int g = 0; g <= lim.max_genus; ++g)
    for (int p = 0; p <= lim.max_punctures; ++p)
      if (!(g == 0 && p == 1))
        t.emplace_back(g, p);
  return t;
}

// Nondecreasing index sequences of length 0..maxlen into types.
void multisets(int ntypes, int maxlen, std::vector<int> &cur,
               const std::function<void(const std::vector<int> &)> &emit) {
  emit(cur);
  if (int(cur.size()) == maxlen)
    return;
  for (int t = cur.empty() ? 0 : cur.back(); t < ntypes; ++t) {
    cur.push_back(t);
    multisets(ntypes, maxlen, cur, emit);
    cur.pop_back();
  }
}

} // namespace

std::vector<EnumeratedBody> enumerate_bodies(const BodyLimits &lim) {
  check_limits(lim);
  const auto types = minus_types(lim);
  std::vector<EnumeratedBody> out;
  std::set<std::string> keys;
  auto consider = [&](const Body &b, const Diagram &ctx) {
    if (!validate_body(b, ctx).ok())
      return;
    std::string key = body_key(b, ctx);
    if (!keys.insert(key).second)
      return;
    EnumeratedBody e;
    e.shape = make_shape(b, ctx);
    e.key = key;
    e.witness = build_witness(e.shape.body(), e.shape.context);
    e.delta = delta(e.shape.body(), e.shape.context);
    out.push_back(std::move(e));
  };
  std::vector<int> cur;
  multisets(int(types.size()), lim.max_minus, cur, [&](const std::vector<int> &ms) {
    const int m = int(ms.size());
    int gsum = 0;
    for (int t : ms)
      gsum += types[t].first;
    if (gsum > lim.max_genus)
      return;
    Diagram ctx;
    ctx.meta.tkind = TKind::link;
    std::vector<std::string> ids;
    for (int k = 0; k < m; ++k) {
      ids.push_back("F" + std::to_string(k + 1));
      ctx.surfaces[ids.back()] = Surface{ids.back(), types[ms[k]].first, types[ms[k]].second, Role::thin};
    }
    std::vector<int> v(m, 0);
    // iterate vertical counts v_k in [0, p_k]
    std::function<void(int)> vert = [&](int k) {
      if (k < m) {
        for (v[k] = 0; v[k] <= types[ms[k]].second; ++v[k])
          vert(k + 1);
        return;
      }
      int vt = std::accumulate(v.begin(), v.end(), 0);
      std::vector<int> deg(m);
      for (int q = 0; q < m; ++q)
        deg[q] = types[ms[q]].second - v[q];
      std::vector<std::pair<int, int>> edges;
      ghost_graphs(deg, edges, [&] {
        Body b{"C", "H", ids, 0, {}, {}, 0, 0};
        for (int q = 0; q < m; ++q)
          if (v[q])
            b.vertical[ids[q]] = v[q];
        for (auto &[x, y] : edges)
          b.ghost.push_back(ghost_edge(ids[x], ids[y]));
        b.normalize();
        for (int g = gsum; g <= lim.max_genus; ++g)
          for (int p = vt; p <= lim.max_punctures; p += 2)
            for (int loops = 0; loops <= g; ++loops) {
              ctx.surfaces["H"] = Surface{"H", g, p, Role::thick};
              Body c = b;
              c.bridge = (p - vt) / 2;
              c.loops = loops;
              consider(c, ctx);
            }
      });
    };
    vert(0);
  });
  std::sort(out.begin(), out.end(),
            [](const EnumeratedBody &a, const EnumeratedBody &b) { return a.key < b.key; });
  return out;
}

std::map<std::string, std::vector<DeltaZeroClass>> delta_zero_templates(const BodyLimits &lim) {
  check_limits(lim);
  std::map<std::string, std::vector<DeltaZeroClass>> out;
  auto record = [&](const HandlePresentation &h, DeltaZeroClass c) {
    DerivedBody db = derive_summary(h);
    Diagram ctx = db.context();
    if (db.plus_genus > lim.max_genus || db.plus_punctures > lim.max_punctures)
      return;
    auto &v = out[body_key(db.body, ctx)];
    if (std::find(v.begin(), v.end(), c) == v.end())
      v.push_back(c);
  };
  {
    HandlePresentation h;
    h.zero.push_back(ZeroHandle{ZeroHandle::ball_arc, "", 0, 0});
    record(h, DeltaZeroClass::ball_arc);
  }
  if (lim.max_genus >= 1) {
    HandlePresentation h;
    h.zero.push_back(ZeroHandle{ZeroHandle::ball_empty, "", 0, 0});
    h.one.push_back(OneHandle{false, 0, 0, {}});
    record(h, DeltaZeroClass::solid_torus_empty);
    HandlePresentation c;
    c.zero.push_back(ZeroHandle{ZeroHandle::ball_arc, "", 0, 0});
    c.one.push_back(OneHandle{true, 0, 0, {{0, 0}, {0, 1}}});
    record(c, DeltaZeroClass::solid_torus_core);
  }
  // products joined by handles cored by ghost arcs, ghost graph connected
  const auto types = minus_types(lim);
  std::vector<int> cur;
  multisets(int(types.size()), lim.max_minus, cur, [&](const std::vector<int> &ms) {
    const int m = int(ms.size());
    if (m == 0)
      return;
    int gsum = 0, psum = 0;
    for (int t : ms) {
      gsum += types[t].first;
      psum += types[t].second;
    }
    const int kmax = lim.max_genus - gsum + m - 1;
    if (kmax < m - 1)
      return;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b)
        pairs.emplace_back(a, b);
    std::vector<int> deg(m, 0), count(pairs.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t pi, int k) {
      if (pi == pairs.size()) {
        if (psum - 2 * k > lim.max_punctures)
          return;
        std::vector<int> par(m);
        std::iota(par.begin(), par.end(), 0);
        std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
        int comps = m;
        for (size_t q = 0; q < pairs.size(); ++q)
          if (count[q] && find(pairs[q].first) != find(pairs[q].second)) {
            par[find(pairs[q].first)] = find(pairs[q].second);
            --comps;
          }
        if (comps != 1)
          return;
        HandlePresentation h;
        for (int z = 0; z < m; ++z)
          h.zero.push_back(ZeroHandle{ZeroHandle::product, "F" + std::to_string(z + 1),
                                      types[ms[z]].first, types[ms[z]].second});
        std::vector<int> next(m, 0);
        for (size_t q = 0; q < pairs.size(); ++q)
          for (int c = 0; c < count[q]; ++c) {
            auto [a, b] = pairs[q];
            OneHandle o{true, a, b, {}};
            o.bindings.push_back({a, next[a]++});
            o.bindings.push_back({b, next[b]++});
            h.one.push_back(o);
          }
        record(h, DeltaZeroClass::vertical_ghost_type4);
        return;
      }
      auto [a, b] = pairs[pi];
      for (int c = 0; k + c <= kmax; ++c) {
        deg[a] += c;
        deg[b] += c;
        if (deg[a] <= types[ms[a]].second && deg[b] <= types[ms[b]].second) {
          count[pi] = c;
          rec(pi + 1, k + c);
        }
        deg[a] -= c;
        deg[b] -= c;
        if (deg[a] + c > types[ms[a]].second || deg[b] + c > types[ms[b]].second)
          break;
      }
      count[pi] = 0;
    };
    rec(0, 0);
  });
  return out;
}

OracleReport delta_oracle(const BodyLimits &lim) {
  OracleReport r;
  auto bodies = enumerate_bodies(lim);
  auto templates = delta_zero_templates(lim);
  std::set<std::string> present;
  r.bodies = bodies.size();
  for (auto &e : bodies) {
    present.insert(e.key);
    const Body &b = e.shape.body();
    const Diagram &ctx = e.shape.context;
    if (!e.witness) {
      ++r.unrealizable;
    } else {
      DerivedBody db = derive_summary(*e.witness);
      if (body_key(db.body, db.context()) != e.key)
        r.issues.push_back("witness of " + e.key + " derives a different summary");
    }
    if (e.delta < Q(0)) {
      if (is_ball_empty(b, ctx) && e.delta == Q(-1))
        continue;
      ++r.negative;
      r.issues.push_back("negative delta " + fmt_q(e.delta) + " at " + e.key);
      continue;
    }
    if (e.delta != Q(0))
      continue;
    ++r.delta_zero;
    DeltaZeroClass c = classify_delta_zero(b, ctx);
    auto it = templates.find(e.key);
    if (it == templates.end()) {
      r.issues.push_back("delta zero body " + e.key + " matches no template, classifier says " +
                         to_string(c));
    } else if (it->second.size() != 1) {
      r.issues.push_back("delta zero body " + e.key + " matches several templates");
    } else if (it->second[0] != c) {
      r.issues.push_back("class mismatch at " + e.key + ": template " + to_string(it->second[0]) +
                         ", classifier " + to_string(c));
    } else {
      ++r.class_agree;
    }
  }
  for (auto &[key, cls] : templates)
    if (!present.count(key))
      r.issues.push_back("template body " + key + " missing from the enumeration");
  return r;
}

// ---------------------------------------------------------------- canonical form

namespace {

struct CanonGraph {
  const Diagram &d;
  std::vector<std::string> sids, bids;
  std::map<std::string, int> sidx, bidx;
  explicit CanonGraph(const Diagram &dd) : d(dd) {
    for (auto &[id, s] : d.surfaces) {
      sidx[id] = int(sids.size());
      sids.push_back(id);
    }
    for (auto &[id, b] : d.bodies) {
      bidx[id] = int(bids.size());
      bids.push_back(id);
    }
  }
  int ns() const { return int(sids.size()); }
  int n() const { return int(sids.size() + bids.size()); }

  std::vector<std::string> initial() const {
    std::vector<std::string> c(n());
    for (int k = 0; k < ns(); ++k) {
      const Surface &s = d.surface(sids[k]);
      std::ostringstream os;
      os << "S" << int(s.role) << ',' << s.genus << ',' << s.punctures << ','
         << d.is_drilled(s.id);
      c[k] = os.str();
    }
    for (size_t k = 0; k < bids.size(); ++k) {
      const Body &b = d.body(bids[k]);
      std::ostringstream os;
      os << "B" << b.bridge << ',' << b.loops << ',' << b.pockets << ',' << b.vertical_total()
         << ',' << b.minus.size() << ',' << b.ghost.size();
      c[ns() + k] = os.str();
    }
    return c;
  }

  // rank colours by sorted distinct signature
  static std::vector<int> rank(const std::vector<std::string> &sig) {
    std::vector<std::string> u = sig;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    std::vector<int> c(sig.size());
    for (size_t k = 0; k < sig.size(); ++k)
      c[k] = int(std::lower_bound(u.begin(), u.end(), sig[k]) - u.begin());
    return c;
  }

  std::vector<int> refine(std::vector<int> col) const {
    auto distinct = [](const std::vector<int> &c) {
      return std::set<int>(c.begin(), c.end()).size();
    };
    size_t classes = distinct(col);
    for (;;) {
      std::vector<std::string> sig(n());
      for (int k = 0; k < ns(); ++k) {
        const std::string &id = sids[k];
        std::ostringstream os;
        os << col[k] << '|';
        auto o = d.orient.find(id);
        if (o != d.orient.end())
          os << col[ns() + bidx.at(o->second.first)] << '>' << col[ns() + bidx.at(o->second.second)];
        std::vector<std::string> inc;
        for (auto &[bid, b] : d.bodies) {
          int bc = col[ns() + bidx.at(bid)];
          if (b.plus == id)
            inc.push_back("P" + std::to_string(bc));
          if (b.has_minus(id))
            inc.push_back("M" + std::to_string(bc) + "," + std::to_string(b.vert(id)) + "," +
                          std::to_string(b.ghost_ends_at(id)));
        }
        std::sort(inc.begin(), inc.end());
        for (auto &s : inc)
          os << ';' << s;
        sig[k] = os.str();
      }
      for (size_t k = 0; k < bids.size(); ++k) {
        const Body &b = d.body(bids[k]);
        std::ostringstream os;
        os << col[ns() + k] << '|' << col[sidx.at(b.plus)];
        auto side = [&](const std::string &sid) {
          auto o = d.orient.find(sid);
          if (o == d.orient.end())
            return 'n';
          return o->second.first == b.id ? 's' : 't';
        };
        os << side(b.plus);
        std::vector<std::string> ms, gs;
        for (auto &m : b.minus)
          ms.push_back(std::to_string(col[sidx.at(m)]) + side(m) + std::to_string(b.vert(m)));
        for (auto &e : b.ghost) {
          int x = col[sidx.at(e.first)], y = col[sidx.at(e.second)];
          gs.push_back(std::to_string(std::min(x, y)) + "-" + std::to_string(std::max(x, y)));
        }
        std::sort(ms.begin(), ms.end());
        std::sort(gs.begin(), gs.end());
        for (auto &s : ms)
          os << ';' << s;
        os << '|';
        for (auto &s : gs)
          os << ';' << s;
        sig[ns() + k] = os.str();
      }
      col = rank(sig);
      size_t now = distinct(col);
      if (now == classes)
        return col;
      classes = now;
    }
  }

  std::string serialize(const std::vector<int> &col) const {
    // discrete colouring: order surfaces and bodies by colour
    std::vector<int> so(ns()), bo(bids.size());
    std::iota(so.begin(), so.end(), 0);
    std::iota(bo.begin(), bo.end(), 0);
    std::sort(so.begin(), so.end(), [&](int a, int b) { return col[a] < col[b]; });
    std::sort(bo.begin(), bo.end(), [&](int a, int b) { return col[ns() + a] < col[ns() + b]; });
    std::map<std::string, int> sn, bn;
    for (int k = 0; k < ns(); ++k)
      sn[sids[so[k]]] = k;
    for (size_t k = 0; k < bo.size(); ++k)
      bn[bids[bo[k]]] = int(k);
    std::ostringstream os;
    for (int k = 0; k < ns(); ++k) {
      const Surface &s = d.surface(sids[so[k]]);
      os << 's' << int(s.role) << ',' << s.genus << ',' << s.punctures << ','
         << d.is_drilled(s.id);
      auto o = d.orient.find(s.id);
      if (o != d.orient.end())
        os << ':' << bn[o->second.first] << '>' << bn[o->second.second];
      os << '\n';
    }
    for (size_t k = 0; k < bo.size(); ++k) {
      const Body &b = d.body(bids[bo[k]]);
      os << 'b' << sn[b.plus] << '|' << b.bridge << ',' << b.loops << ',' << b.pockets << '|';
      std::vector<std::pair<int, int>> ms;
      for (auto &m : b.minus)
        ms.emplace_back(sn[m], b.vert(m));
      std::sort(ms.begin(), ms.end());
      for (auto &[x, v] : ms)
        os << x << ':' << v << ' ';
      std::vector<std::pair<int, int>> gs;
      for (auto &e : b.ghost)
        gs.emplace_back(std::min(sn[e.first], sn[e.second]), std::max(sn[e.first], sn[e.second]));
      std::sort(gs.begin(), gs.end());
      os << '|';
      for (auto &[x, y] : gs)
        os << x << '-' << y << ' ';
      os << '\n';
    }
    return os.str();
  }
};

std::string meta_key(const Meta &m) {
  std::ostringstream os;
  os << int(m.tkind) << '|';
  for (int v : m.valences)
    os << v << ',';
  os << '|' << m.irreducible << m.spheres_separate << m.surfaces_separate << '|'
     << (m.gbound ? *m.gbound : -1) << '\n';
  return os.str();
}

} // namespace

std::string canonical_form(const Diagram &d) {
  CanonGraph g(d);
  const std::size_t leaf_cap = 4096;
  std::size_t leaves = 0;
  std::string best;
  bool have = false;
  std::function<void(std::vector<int>)> go = [&](std::vector<int> col) {
    if (leaves >= leaf_cap)
      return;
    col = g.refine(std::move(col));
    // first non-singleton cell by colour value
    std::map<int, std::vector<int>> cells;
    for (int k = 0; k < g.n(); ++k)
      cells[col[k]].push_back(k);
    const std::vector<int> *cell = nullptr;
    for (auto &[c, members] : cells)
      if (members.size() > 1) {
        cell = &members;
        break;
      }
    if (!cell) {
      ++leaves;
      std::string s = g.serialize(col);
      if (!have || s < best) {
        best = std::move(s);
        have = true;
      }
      return;
    }
    for (int v : *cell) {
      std::vector<int> c2(col.size());
      for (size_t k = 0; k < col.size(); ++k)
        c2[k] = 2 * col[k] + 1;
      c2[v] = 2 * col[v];
      go(std::move(c2));
    }
  };
  go(CanonGraph::rank(g.initial()));
  return meta_key(d.meta) + best;
}

// ---------------------------------------------------------------- minimize

namespace {

// arcs of a body meeting its plus surface
std::vector<ArcRef> plus_arcs(const Body &b) {
  std::vector<ArcRef> r;
  if (b.bridge > 0)
    r.push_back({ArcRef::bridge, "", ""});
  for (auto &[f, v] : b.vertical)
    if (v > 0)
      r.push_back({ArcRef::vertical, f, ""});
  return r;
}

// arcs a disc in the body can meet once
std::vector<ArcRef> cut_arcs(const Body &b) {
  std::vector<ArcRef> r = plus_arcs(b);
  std::set<GhostEdge> gs(b.ghost.begin(), b.ghost.end());
  for (auto &e : gs)
    r.push_back({ArcRef::ghost, e.first, e.second});
  if (b.loops > 0)
    r.push_back({ArcRef::loop, "", ""});
  return r;
}

void compositions(int total, int parts, std::vector<int> &cur,
                  const std::function<void(const std::vector<int> &)> &emit) {
  if (int(cur.size()) == parts - 1) {
    cur.push_back(total);
    emit(cur);
    cur.pop_back();
    return;
  }
  for (int x = 0; x <= total; ++x) {
    cur.push_back(x);
    compositions(total - x, parts, cur, emit);
    cur.pop_back();
  }
}

// ends of curves on each region, counting a curve twice on a region it
// does not separate
std::vector<int> region_degrees(CurveShape s) {
  switch (s) {
  case CurveShape::NN1:
    return {4};
  case CurveShape::NN2:
    return {2, 2};
  case CurveShape::SN:
  case CurveShape::NS:
    return {3, 1};
  case CurveShape::SS:
    return {1, 2, 1};
  }
  return {};
}

std::vector<std::map<std::string, int>> piece_maps(const Body &b) {
  std::vector<std::map<std::string, int>> r;
  const int m = int(b.minus.size());
  if (m > 3)
    return {{}};
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::map<std::string, int> mp;
    for (int k = 0; k < m; ++k)
      if (mask >> k & 1)
        mp[b.minus[k]] = 1;
    r.push_back(mp);
  }
  return r;
}

void thin_certificates(const Diagram &d, const SearchBudget &budget, std::vector<MoveSpec> &out) {
  std::size_t made = 0;
  const CurveShape shapes[] = {CurveShape::SS, CurveShape::SN, CurveShape::NS, CurveShape::NN1,
                               CurveShape::NN2};
  for (auto &hid : d.ids_with_role(Role::thick)) {
    const Surface &H = d.surface(hid);
    auto sides = d.plus_bodies(hid);
    if (sides.size() != 2)
      continue;
    for (auto &up : sides) {
      const Body &U = d.body(up);
      const Body &L = d.body(d.across(hid, up));
      auto umaps = piece_maps(U), lmaps = piece_maps(L);
      for (CurveShape sh : shapes) {
        if (budget.width_tracking && sh == CurveShape::NN2)
          continue;
        auto deg = region_degrees(sh);
        const int nreg = int(deg.size());
        const int gsum = H.genus - 3 + nreg;
        if (gsum < 0)
          continue;
        std::vector<int> gc, pc;
        compositions(gsum, nreg, gc, [&](const std::vector<int> &gs) {
          compositions(H.punctures, nreg, pc, [&](const std::vector<int> &ps) {
            for (int r = 0; r < nreg; ++r)
              if (gs[r] == 0 && deg[r] == 1 && ps[r] < 2)
                return;
            UntelescopeSpec u;
            u.thick = hid;
            u.upper = up;
            u.shape = sh;
            for (int r = 0; r < nreg; ++r)
              u.regions.push_back({gs[r], ps[r]});
            for (int i = 0; i <= 1; ++i)
              for (int j = 0; j <= 1; ++j) {
                auto ucuts = i ? cut_arcs(U) : std::vector<ArcRef>{ArcRef{}};
                auto lcuts = j ? cut_arcs(L) : std::vector<ArcRef>{ArcRef{}};
                for (auto &uc : ucuts)
                  for (auto &lc : lcuts)
                    for (auto &um : umaps)
                      for (auto &lm : lmaps) {
                        if (made >= budget.max_certificates)
                          return;
                        UntelescopeSpec v = u;
                        v.i = i;
                        v.j = j;
                        v.upper_side.cut = uc;
                        v.lower_side.cut = lc;
                        v.upper_side.minus_piece = um;
                        v.lower_side.minus_piece = lm;
                        out.push_back(ThinSpec{v});
                        ++made;
                      }
              }
          });
        });
      }
    }
  }
}

struct Node {
  Diagram d;
  std::vector<MoveSpec> script;
  Q ne, w;
  int nc = 0;
  std::string key;
};

bool better(const Node &a, const Node &b, bool width_first) {
  if (width_first) {
    if (a.w != b.w)
      return a.w < b.w;
    if (a.ne != b.ne)
      return a.ne < b.ne;
  } else {
    if (a.ne != b.ne)
      return a.ne < b.ne;
    if (a.w != b.w)
      return a.w < b.w;
  }
  if (a.nc != b.nc)
    return a.nc < b.nc;
  if (a.script.size() != b.script.size())
    return a.script.size() < b.script.size();
  return a.key < b.key;
}

} // namespace

std::vector<MoveSpec> candidate_moves(const Diagram &d, const SearchBudget &budget) {
  std::vector<MoveSpec> out;
  for (auto &c : consolidation_candidates(d))
    out.push_back(c);
  for (auto &hid : d.ids_with_role(Role::thick)) {
    auto sides = d.plus_bodies(hid);
    if (sides.size() != 2)
      continue;
    for (auto &sid : sides) {
      const Body &S = d.body(sid);
      const Body &O = d.body(d.across(hid, sid));
      auto other = plus_arcs(O);
      if (S.bridge > 0) {
        for (auto &e : other)
          out.push_back(UnperturbSpec{hid, sid, e});
        for (size_t a = 0; a < other.size(); ++a) {
          out.push_back(RemoveArcSpec{hid, sid, other[a], ArcRef{}});
          for (size_t b = a; b < other.size(); ++b)
            out.push_back(RemoveArcSpec{hid, sid, other[a], other[b]});
        }
      }
      // destabilizations with the disc in S
      DestabilizeSpec p;
      p.thick = hid;
      p.disc = sid;
      out.push_back(p);
      std::vector<ArcRef> cuts = cut_arcs(S);
      for (auto &c : cut_arcs(O))
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end())
          cuts.push_back(c);
      for (auto &c : cuts) {
        DestabilizeSpec m = p;
        m.kind = DestabKind::meridional;
        m.cut = c;
        out.push_back(m);
      }
      std::vector<std::string> bnd;
      for (auto &f : S.minus)
        if (d.surface(f).role == Role::boundary)
          bnd.push_back(f);
      if (bnd.size() <= 3)
        for (int mask = 1; mask < (1 << bnd.size()); ++mask) {
          DestabilizeSpec g = p;
          for (size_t k = 0; k < bnd.size(); ++k)
            if (mask >> k & 1)
              g.gset.push_back(bnd[k]);
          for (DestabKind k : {DestabKind::boundary, DestabKind::ghost_boundary}) {
            g.kind = k;
            out.push_back(g);
          }
          for (DestabKind k : {DestabKind::meridional_boundary, DestabKind::ghost_meridional_boundary})
            for (auto &c : cuts) {
              DestabilizeSpec h = g;
              h.kind = k;
              h.cut = c;
              h.hat = c;
              out.push_back(h);
            }
        }
    }
  }
  thin_certificates(d, budget, out);
  return out;
}

SearchResult minimize(const Diagram &d0, const SearchBudget &budget) {
  if (budget.max_depth < 0 || budget.max_diagrams == 0 || budget.beam == 0)
    throw Error("search budget limits must be positive");
  Report v = validate_diagram(d0);
  if (!v.ok())
    throw Error("search: invalid diagram: " + v.issues.front());
  if (budget.netchi_cap && budget.heegaard_genus &&
      *budget.netchi_cap < 2 * *budget.heegaard_genus - 2)
    throw Error("search: netchi cap " + std::to_string(*budget.netchi_cap) +
                " is below 2g - 2 = " + std::to_string(2 * *budget.heegaard_genus - 2));
  if (budget.width_tracking && !width_hypothesis(d0))
    throw Error("search: width tracking needs the irr and ssep flags and csep or thick genus <= 2");
  const int nc0 = netchi(d0);
  if (budget.netchi_cap && nc0 > *budget.netchi_cap)
    throw Error("search: netchi " + std::to_string(nc0) + " exceeds the cap " +
                std::to_string(*budget.netchi_cap));
  const MoveOptions opts{budget.width_tracking};
  const bool width_first = budget.width_tracking;

  Node root{d0, {}, netext(d0), width(d0), nc0, canonical_form(d0)};
  std::set<std::string> seen{root.key};
  Node best = root;
  std::vector<Node> frontier{root};
  SearchResult res;
  for (int depth = 1; depth <= budget.max_depth && !frontier.empty() && !res.exhausted; ++depth) {
    std::vector<Node> next;
    for (auto &node : frontier) {
      for (auto &m : candidate_moves(node.d, budget)) {
        if (res.explored >= budget.max_diagrams) {
          res.exhausted = true;
          break;
        }
        Diagram e;
        try {
          e = apply_move(node.d, m, opts);
        } catch (const Error &) {
          continue;
        }
        ++res.explored;
        Node c{std::move(e), node.script, {}, {}, 0, {}};
        c.nc = netchi(c.d);
        c.ne = netext(c.d);
        c.w = width(c.d);
        if (budget.netchi_cap && c.nc > *budget.netchi_cap)
          continue;
        if (c.nc > node.nc || c.ne > node.ne || (budget.width_tracking && c.w > node.w))
          continue;
        c.key = canonical_form(c.d);
        if (!seen.insert(c.key).second)
          continue;
        c.script.push_back(m);
        next.push_back(std::move(c));
      }
      if (res.exhausted)
        break;
    }
    std::sort(next.begin(), next.end(),
              [&](const Node &a, const Node &b) { return better(a, b, width_first); });
    if (!next.empty() && better(next.front(), best, width_first))
      best = next.front();
    if (next.size() > budget.beam)
      next.resize(budget.beam);
    frontier = std::move(next);
  }
  res.best = best.d;
  res.script = best.script;
  res.upper_bounds = invariants(best.d);
  return res;
}

} // namespace vpb
