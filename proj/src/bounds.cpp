#include "vpbridge/bounds.hpp"

#include <numeric>

namespace vpb {

TunnelBounds tunnel_bounds(const SummandProfile &p) {
  if (p.n < 1)
    throw Error("tunnel bounds: need at least one summand");
  if (p.j < 0 || p.j > p.n)
    throw Error("tunnel bounds: j must lie in [0, n]");
  if (int(p.tunnel.size()) != p.n)
    throw Error("tunnel bounds: need one tunnel number per summand");
  for (int t : p.tunnel)
    if (t < 1)
      throw Error("tunnel bounds: a prime summand has tunnel number at least 1");
  TunnelBounds r;
  r.lower = (p.n - p.j) + std::accumulate(p.tunnel.begin(), p.tunnel.begin() + p.j, 0);
  r.upper = (p.n - 1) + std::accumulate(p.tunnel.begin(), p.tunnel.end(), 0);
  return r;
}

MorimotoBounds morimoto_bounds(int g, int b) {
  if (g < 0 || b < 0)
    throw Error("morimoto bounds: g and b must be non-negative");
  if (g == 0 && b == 0)
    throw Error("morimoto bounds: (g,b) = (0,0) is degenerate");
  MorimotoBounds r;
  r.max_summands = g + b - 1;
  // ceil(g/2 + b - 1), with g/2 + b - 1 = (g + 2b - 2)/2
  int num = g + 2 * b - 2;
  r.min_11 = num >= 0 ? (num + 1) / 2 : -((-num) / 2);
  r.min_2bridge = b - 1;
  // counts of summands cannot be negative
  r.min_11 = std::max(r.min_11, 0);
  r.min_2bridge = std::max(r.min_2bridge, 0);
  return r;
}

Report bridge_superadditivity_check(int g, int b_g, const std::vector<BridgePart> &parts) {
  Report r;
  int gs = 0, lhs = 0;
  for (auto &p : parts) {
    gs += p.genus;
    lhs += p.genus + p.bridge - 1;
  }
  if (gs > g)
    r.add("genera of the parts sum to " + std::to_string(gs) + " > " + std::to_string(g));
  int rhs = g + b_g - 1;
  if (lhs > rhs)
    r.add("superadditivity fails: " + std::to_string(lhs) + " > " + std::to_string(rhs));
  if (parts.size() == 2 && parts[0].tunnel_at_least_genus && parts[1].tunnel_at_least_genus &&
      b_g != parts[0].bridge + parts[1].bridge - 1)
    r.add("equality fails: b_g = " + std::to_string(b_g) + " but b_1 + b_2 - 1 = " +
          std::to_string(parts[0].bridge + parts[1].bridge - 1));
  return r;
}

int schubert_summand_bound(const Q &x) {
  if (x < Q(0))
    throw Error("net extent of a knot certificate cannot be negative");
  return int(x.numerator() / x.denominator());
}

} // namespace vpb
