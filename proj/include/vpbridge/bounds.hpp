#pragma once

#include "vpbridge/model.hpp"
#include "vpbridge/validate.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace vpb {

struct SummandProfile {
  int n = 1;
  int j = 0;                   // the first j summands are m-small
  std::vector<int> tunnel;     // t_i >= 1
  std::vector<int> genera;     // g_i, optional
  std::vector<int> bridge;     // b_{g_i}, optional
};

struct TunnelBounds {
  int lower = 0, upper = 0;
};
// lower = (n - j) + sum_{i <= j} t_i, upper = (n - 1) + sum t_i
TunnelBounds tunnel_bounds(const SummandProfile &p);

struct MorimotoBounds {
  int max_summands = 0;
  int min_11 = 0;       // summands with (1,1)-decompositions when the count is maximal
  int min_2bridge = 0;  // 2-bridge summands when the count is maximal
};
MorimotoBounds morimoto_bounds(int g, int b);

struct BridgePart {
  int genus = 0;
  int bridge = 0;
  bool tunnel_at_least_genus = false;
};
// sum (g_i + b_i - 1) <= g + b_g - 1, plus the equality for two parts with
// t(K_i) >= g_i
Report bridge_superadditivity_check(int g, int b_g, const std::vector<BridgePart> &parts);

// A knot with a certificate of net extent x has at most floor(x) prime
// summands; netext 1 (a 2-bridge certificate) means prime.
int schubert_summand_bound(const Q &netext);

} // namespace vpb
