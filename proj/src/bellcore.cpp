#include "dimerbell/bellcore.hpp"

#include <stdexcept>

namespace dimerbell {

std::vector<bool> dimer_mask(const Lattice& lattice, const DimerCovering& covering) {
  std::vector<bool> mask(lattice.edges().size(), false);
  for (int e : covering.edges) {
    if (e < 0 || e >= static_cast<int>(mask.size())) {
      throw std::invalid_argument("covering edge index out of range");
    }
    mask[e] = true;
  }
  return mask;
}

ChshSubtotals chsh_subtotals(const Lattice& lattice, const DimerCovering& covering,
                             const StrategyAssignment& assignment) {
  if (static_cast<int>(assignment.size()) != lattice.num_sites()) {
    throw std::invalid_argument("assignment size does not match lattice sites");
  }
  for (auto s : assignment) {
    if (s > 3) throw std::invalid_argument("strategy index out of range [0,3]");
  }
  const auto mask = dimer_mask(lattice, covering);
  ChshSubtotals totals;
  for (std::size_t e = 0; e < lattice.edges().size(); ++e) {
    const Edge& edge = lattice.edges()[e];
    const int v = chsh_link_value(assignment[edge.a], assignment[edge.b]);
    (mask[e] ? totals.dimer : totals.non_dimer) += v;
  }
  return totals;
}

double bell_value(const Lattice& lattice, const DimerCovering& covering,
                  const StrategyAssignment& assignment, double eps) {
  return chsh_subtotals(lattice, covering, assignment).value(eps);
}

}  // namespace dimerbell
