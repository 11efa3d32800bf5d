#pragma once

#include <boost/rational.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vpb {

// Every quantity the engine reports is a half-integer or (for squares) a
// quarter-integer, so exact rationals are enough. The wrapper only compares
// Q with Q: mixed rational/int comparisons in Boost 1.74 recurse forever
// under C++20 rewritten operators.
class Q {
public:
  Q(long long n = 0, long long d = 1) : r_(n, d) {}
  long long numerator() const { return r_.numerator(); }
  long long denominator() const { return r_.denominator(); }

  Q &operator+=(const Q &o) { r_ += o.r_; return *this; }
  Q &operator-=(const Q &o) { r_ -= o.r_; return *this; }
  Q &operator*=(const Q &o) { r_ *= o.r_; return *this; }
  Q &operator/=(const Q &o) { r_ /= o.r_; return *this; }
  friend Q operator+(Q a, const Q &b) { return a += b; }
  friend Q operator-(Q a, const Q &b) { return a -= b; }
  friend Q operator*(Q a, const Q &b) { return a *= b; }
  friend Q operator/(Q a, const Q &b) { return a /= b; }
  friend Q operator-(const Q &a) { return Q(0) - a; }

  friend bool operator==(const Q &a, const Q &b) { return a.r_.operator==(b.r_); }
  friend bool operator!=(const Q &a, const Q &b) { return !(a == b); }
  friend bool operator<(const Q &a, const Q &b) { return a.r_.operator<(b.r_); }
  friend bool operator>(const Q &a, const Q &b) { return b < a; }
  friend bool operator<=(const Q &a, const Q &b) { return !(b < a); }
  friend bool operator>=(const Q &a, const Q &b) { return !(a < b); }

private:
  boost::rational<long long> r_;
};

std::string fmt_q(const Q &q);
std::ostream &operator<<(std::ostream &os, const Q &q);

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class TKind { empty, link, graph };
enum class Role { thick, thin, boundary };

const char *to_string(TKind k);
const char *to_string(Role r);

struct Meta {
  TKind tkind = TKind::link;
  std::vector<int> valences; // kept sorted
  bool irreducible = false;
  bool spheres_separate = false;
  bool surfaces_separate = false;
  std::optional<int> gbound;
  // boundary spheres that stand in for drilled-out interior vertices
  std::vector<std::string> drilled;

  bool operator==(const Meta &) const = default;
};

struct Surface {
  std::string id;
  int genus = 0;
  int punctures = 0;
  Role role = Role::thick;

  int chi() const { return 2 - 2 * genus; }
  Q ext() const { return Q(2 * genus - 2 + punctures, 2); }
  bool operator==(const Surface &) const = default;
};

// unordered pair of minus-surface ids, stored with first <= second
using GhostEdge = std::pair<std::string, std::string>;
GhostEdge ghost_edge(const std::string &a, const std::string &b);

struct Body {
  std::string id;
  std::string plus;
  std::vector<std::string> minus; // kept sorted
  int bridge = 0;
  std::map<std::string, int> vertical; // zero entries dropped
  std::vector<GhostEdge> ghost;        // kept sorted
  int loops = 0;
  int pockets = 0;

  int vert(const std::string &f) const;
  int vertical_total() const;
  int ghost_ends_at(const std::string &f) const;
  bool has_minus(const std::string &f) const;
  void normalize();
  bool operator==(const Body &) const = default;
};

// (source body, target body): the transverse orientation points from the
// source side to the target side.
using Orient = std::pair<std::string, std::string>;

struct Diagram {
  Meta meta;
  std::map<std::string, Surface> surfaces;
  std::map<std::string, Body> bodies;
  std::map<std::string, Orient> orient;

  const Surface &surface(const std::string &id) const;
  const Body &body(const std::string &id) const;
  Surface &surface(const std::string &id);
  Body &body(const std::string &id);

  bool is_drilled(const std::string &sid) const;
  // bodies whose plus is sid
  std::vector<std::string> plus_bodies(const std::string &sid) const;
  // bodies listing sid among their minus surfaces
  std::vector<std::string> minus_bodies(const std::string &sid) const;
  // the other body across a thick or thin surface
  std::string across(const std::string &sid, const std::string &body) const;

  std::vector<std::string> ids_with_role(Role r) const;
  // interior vertex valences: drilled spheres plus pocket trees
  std::vector<int> vertex_valences() const;
  std::string fresh_surface_id(const std::string &base) const;
  std::string fresh_body_id(const std::string &base) const;
  void normalize();

  bool operator==(const Diagram &) const = default;
};

// Body shapes that come up often enough to deserve names.
bool is_ball_empty(const Body &b, const Diagram &d);
bool is_ball_arc(const Body &b, const Diagram &d);
bool is_trivial_product(const Body &b, const Diagram &d);

} // namespace vpb
