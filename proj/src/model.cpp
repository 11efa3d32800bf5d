#include "vpbridge/model.hpp"

#include <algorithm>
#include <sstream>

namespace vpb {

std::string fmt_q(const Q &q) {
  // denominators here are 1, 2 or 4; print an exact decimal
  long long n = q.numerator(), d = q.denominator();
  std::ostringstream os;
  if (d == 1) {
    os << n;
    return os.str();
  }
  if (d == 2 || d == 4) {
    bool neg = n < 0;
    long long a = neg ? -n : n;
    long long whole = a / d, rem = a % d;
    os << (neg ? "-" : "") << whole << '.' << (d == 2 ? "5" : (rem == 1 ? "25" : "75"));
    return os.str();
  }
  os << n << '/' << d;
  return os.str();
}

std::ostream &operator<<(std::ostream &os, const Q &q) { return os << fmt_q(q); }

const char *to_string(TKind k) {
  switch (k) {
  case TKind::empty:
    return "empty";
  case TKind::link:
    return "link";
  case TKind::graph:
    return "graph";
  }
  return "?";
}

const char *to_string(Role r) {
  switch (r) {
  case Role::thick:
    return "thick";
  case Role::thin:
    return "thin";
  case Role::boundary:
    return "boundary";
  }
  return "?";
}

GhostEdge ghost_edge(const std::string &a, const std::string &b) {
  return a <= b ? GhostEdge{a, b} : GhostEdge{b, a};
}

int Body::vert(const std::string &f) const {
  auto it = vertical.find(f);
  return it == vertical.end() ? 0 : it->second;
}

int Body::vertical_total() const {
  int s = 0;
  for (auto &[k, v] : vertical)
    s += v;
  return s;
}

int Body::ghost_ends_at(const std::string &f) const {
  int s = 0;
  for (auto &e : ghost)
    s += (e.first == f) + (e.second == f);
  return s;
}

bool Body::has_minus(const std::string &f) const {
  return std::find(minus.begin(), minus.end(), f) != minus.end();
}

void Body::normalize() {
  std::sort(minus.begin(), minus.end());
  for (auto it = vertical.begin(); it != vertical.end();)
    it = it->second == 0 ? vertical.erase(it) : std::next(it);
  for (auto &e : ghost)
    e = ghost_edge(e.first, e.second);
  std::sort(ghost.begin(), ghost.end());
}

const Surface &Diagram::surface(const std::string &id) const {
  auto it = surfaces.find(id);
  if (it == surfaces.end())
    throw Error("unknown surface '" + id + "'");
  return it->second;
}

Surface &Diagram::surface(const std::string &id) {
  auto it = surfaces.find(id);
  if (it == surfaces.end())
    throw Error("unknown surface '" + id + "'");
  return it->second;
}

const Body &Diagram::body(const std::string &id) const {
  auto it = bodies.find(id);
  if (it == bodies.end())
    throw Error("unknown body '" + id + "'");
  return it->second;
}

Body &Diagram::body(const std::string &id) {
  auto it = bodies.find(id);
  if (it == bodies.end())
    throw Error("unknown body '" + id + "'");
  return it->second;
}

bool Diagram::is_drilled(const std::string &sid) const {
  return std::find(meta.drilled.begin(), meta.drilled.end(), sid) != meta.drilled.end();
}

std::vector<std::string> Diagram::plus_bodies(const std::string &sid) const {
  std::vector<std::string> out;
  for (auto &[id, b] : bodies)
    if (b.plus == sid)
      out.push_back(id);
  return out;
}

std::vector<std::string> Diagram::minus_bodies(const std::string &sid) const {
  std::vector<std::string> out;
  for (auto &[id, b] : bodies)
    for (auto &m : b.minus)
      if (m == sid)
        out.push_back(id);
  return out;
}

std::string Diagram::across(const std::string &sid, const std::string &body) const {
  auto it = orient.find(sid);
  if (it == orient.end())
    throw Error("surface '" + sid + "' has no orientation");
  if (it->second.first == body)
    return it->second.second;
  if (it->second.second == body)
    return it->second.first;
  throw Error("body '" + body + "' is not adjacent to '" + sid + "'");
}

std::vector<std::string> Diagram::ids_with_role(Role r) const {
  std::vector<std::string> out;
  for (auto &[id, s] : surfaces)
    if (s.role == r)
      out.push_back(id);
  return out;
}

std::vector<int> Diagram::vertex_valences() const {
  std::vector<int> v;
  for (auto &sid : meta.drilled) {
    auto it = surfaces.find(sid);
    if (it != surfaces.end())
      v.push_back(it->second.punctures);
  }
  for (auto &[id, b] : bodies)
    if (b.pockets > 0) {
      auto it = surfaces.find(b.plus);
      if (it != surfaces.end())
        v.push_back(it->second.punctures - 2 * b.bridge - b.vertical_total());
    }
  std::sort(v.begin(), v.end());
  return v;
}

std::string Diagram::fresh_surface_id(const std::string &base) const {
  if (!surfaces.count(base))
    return base;
  for (int k = 1;; ++k) {
    std::string c = base + "_" + std::to_string(k);
    if (!surfaces.count(c))
      return c;
  }
}

std::string Diagram::fresh_body_id(const std::string &base) const {
  if (!bodies.count(base))
    return base;
  for (int k = 1;; ++k) {
    std::string c = base + "_" + std::to_string(k);
    if (!bodies.count(c))
      return c;
  }
}

void Diagram::normalize() {
  std::sort(meta.valences.begin(), meta.valences.end());
  std::sort(meta.drilled.begin(), meta.drilled.end());
  for (auto &[id, b] : bodies)
    b.normalize();
}

bool is_ball_empty(const Body &b, const Diagram &d) {
  const Surface &p = d.surface(b.plus);
  return b.minus.empty() && p.genus == 0 && p.punctures == 0 && b.bridge == 0 && b.loops == 0 &&
         b.pockets == 0;
}

bool is_ball_arc(const Body &b, const Diagram &d) {
  const Surface &p = d.surface(b.plus);
  return b.minus.empty() && p.genus == 0 && p.punctures == 2 && b.bridge == 1 && b.loops == 0 &&
         b.pockets == 0;
}

bool is_trivial_product(const Body &b, const Diagram &d) {
  if (b.minus.size() != 1 || b.bridge || !b.ghost.empty() || b.loops || b.pockets)
    return false;
  const Surface &p = d.surface(b.plus);
  const Surface &f = d.surface(b.minus[0]);
  return p.genus == f.genus && p.punctures == f.punctures && b.vert(f.id) == f.punctures;
}

} // namespace vpb
