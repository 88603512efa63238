#pragma once

#include <cstdint>
#include <vector>

#include "dimerbell/dimers.hpp"
#include "dimerbell/lattice.hpp"

namespace dimerbell {

// Each site holds one of four local deterministic strategies s in {0,1,2,3},
// the response functions phi_s(x) for binary input x:
//   phi_0 = 0, phi_1 = x, phi_2 = 1-x, phi_3 = 1.
// The corresponding +-1 observable for input x is A_x = (-1)^phi_s(x).
inline int strategy_observable(int strategy, int input) {
  static constexpr int table[4][2] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
  return table[strategy][input];
}

// CHSH combination A0B0 + A0B1 + A1B0 - A1B1 for deterministic strategies on
// the two ends of a link. Always +-2, and symmetric in its arguments.
inline int chsh_link_value(int sa, int sb) {
  const int a0 = strategy_observable(sa, 0);
  const int a1 = strategy_observable(sa, 1);
  const int b0 = strategy_observable(sb, 0);
  const int b1 = strategy_observable(sb, 1);
  return a0 * b0 + a0 * b1 + a1 * b0 - a1 * b1;
}

// Coupling of a link: dimer links are strengthened to 1+eps, the rest
// weakened to 1-eps. eps = 0 is the uniform lattice, eps = 1 keeps only the
// dimers.
inline double edge_weight(bool on_dimer, double eps) {
  return on_dimer ? 1.0 + eps : 1.0 - eps;
}

// Marks each lattice edge that carries a dimer of `covering`.
std::vector<bool> dimer_mask(const Lattice& lattice, const DimerCovering& covering);

// One strategy index per site.
using StrategyAssignment = std::vector<std::uint8_t>;

// Total Bell functional sum_links w_ij(eps) * chsh(s_i, s_j) for a
// deterministic strategy assignment. Throws std::invalid_argument on size or
// strategy-range mismatch.
double bell_value(const Lattice& lattice, const DimerCovering& covering,
                  const StrategyAssignment& assignment, double eps);

// Integer dimer/non-dimer CHSH subtotals (A, B): the Bell value is
// (1+eps)*A + (1-eps)*B, exposing its affine dependence on eps.
struct ChshSubtotals {
  std::int64_t dimer = 0;
  std::int64_t non_dimer = 0;

  double value(double eps) const {
    return (1.0 + eps) * static_cast<double>(dimer) +
           (1.0 - eps) * static_cast<double>(non_dimer);
  }
};

ChshSubtotals chsh_subtotals(const Lattice& lattice, const DimerCovering& covering,
                             const StrategyAssignment& assignment);

}  // namespace dimerbell
