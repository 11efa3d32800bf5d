#pragma once

#include "vpbridge/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vpb {

// Concatenates arc segments glued at ports and reports the resulting arc
// decorations of a body. Terminals are the plus surface or a minus surface.
class ArcTracer {
public:
  struct End {
    enum Kind { plus, minus, port } kind = plus;
    std::string surface; // minus terminals
    int port_id = -1;    // port terminals
    static End on_plus() { return {plus, "", -1}; }
    static End on_minus(const std::string &s) { return {minus, s, -1}; }
    static End at_port(int p) { return {port, "", p}; }
  };

  void segment(End a, End b);
  int new_port() { return next_port_++; }

  struct Result {
    int bridge = 0;
    std::map<std::string, int> vertical;
    std::vector<GhostEdge> ghost;
    int loops = 0;
  };
  // throws Error when a port is used other than exactly twice
  Result trace() const;

private:
  std::vector<std::pair<End, End>> segs_;
  int next_port_ = 0;
};

struct ZeroHandle {
  enum Kind { ball_empty, ball_arc, product } kind = ball_empty;
  std::string surface; // product only: the minus surface id
  int genus = 0;       // product only
  int strands = 0;     // product only: vertical strands, i.e. punctures of the surface

  int endpoints() const { return kind == ball_arc ? 2 : kind == product ? strands : 0; }
  int top_chi() const { return kind == product ? 2 - 2 * genus : 2; }
};

struct Binding {
  int zh = 0;
  int endpoint = 0;
  bool operator==(const Binding &) const = default;
};

struct OneHandle {
  bool cored = false;
  int a = 0, b = 0;              // zero-handle indices of the two feet
  std::vector<Binding> bindings; // cored: the two endpoints joined by the core
};

struct HandlePresentation {
  std::vector<ZeroHandle> zero;
  std::vector<OneHandle> one;
};

struct DerivedBody {
  int plus_genus = 0;
  int plus_punctures = 0;
  Body body;                     // plus id is "+", minus ids from the products
  std::vector<Surface> minus;    // role thin
  Diagram context() const;       // a one-body diagram holding body and surfaces
};

DerivedBody derive_summary(const HandlePresentation &h);

// Builds a presentation realizing the body, or nothing if the summary fails
// the bookkeeping or the genus bound.
std::optional<HandlePresentation> build_witness(const Body &b, const Diagram &d);

std::string describe(const HandlePresentation &h);

} // namespace vpb
