#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "dimerbell/bellcore.hpp"
#include "dimerbell/dimers.hpp"
#include "dimerbell/lattice.hpp"

namespace dimerbell {

// Additive identity of the min-plus semiring; absorbing for tropical product.
inline constexpr double kTropInf = std::numeric_limits<double>::infinity();

// Square matrix over (R u {+inf}, min, +).
class TropicalMatrix {
 public:
  explicit TropicalMatrix(int dim, double fill = kTropInf)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * dim, fill) {}

  // 0 on the diagonal, +inf elsewhere: the unit of tropical multiplication.
  static TropicalMatrix identity(int dim) {
    TropicalMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 0.0;
    return m;
  }

  int dim() const { return dim_; }
  double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * dim_ + j]; }
  double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * dim_ + j]; }

 private:
  int dim_;
  std::vector<double> data_;
};

// (A (.) B)_ij = min_l A_il + B_lj. Throws std::invalid_argument on dimension
// mismatch.
TropicalMatrix trop_matmul(const TropicalMatrix& a, const TropicalMatrix& b);

// Minimum diagonal entry: tropical trace, i.e. the cheapest closed path.
double trop_trace(const TropicalMatrix& a);

// Minimum of the Bell functional over local deterministic strategies, at one
// coupling. The assignment, when present, attains beta_c.
struct ClassicalBoundResult {
  double beta_c = 0.0;
  double epsilon = 0.0;
  std::optional<StrategyAssignment> assignment;
};

// Exact minimum by enumerating all 4^(n^2) strategy assignments. Returns the
// minimizer of lowest base-4 index (site 0 least significant) on ties.
// Throws std::invalid_argument above 10 sites.
ClassicalBoundResult classical_bound_bruteforce(const Lattice& lattice,
                                                const DimerCovering& covering, double epsilon);

// Same oracle evaluated at many couplings in a single enumeration pass: the
// per-assignment value is affine in epsilon, so the dimer / non-dimer CHSH
// subtotals are computed once per assignment.
std::vector<ClassicalBoundResult> classical_bound_bruteforce_grid(
    const Lattice& lattice, const DimerCovering& covering, const std::vector<double>& epsilons);

// Contraction direction for the transfer product. Rows is a torus-only
// re-implementation used for cross-checks (the Klein-bottle seam breaks
// row grouping).
enum class TransferAxis { Columns, Rows };

struct TransferOptions {
  TransferAxis axis = TransferAxis::Columns;
  // When set, Viterbi-style backtracking recovers one optimal assignment
  // (lowest column-state index on every tie).
  bool recover_assignment = false;
  // Transfer dimension is 4^n; larger lattices are rejected.
  int max_n = 7;
};

// Classical bound via tropical transfer contraction: per-column factors
// T_j[u,v] = C_j(u) + H_j(u,v) where u,v index the 4^n strategy tuples of
// adjacent columns (row 0 = least significant digit), C_j carries column j's
// vertical links and H_j the horizontal links j -> j+1. The Klein-bottle
// closure factor pairs chsh(u_i, v_{n-1-i}). beta_c is the tropical trace of
// the ordered product, so every lattice edge is weighted exactly once.
ClassicalBoundResult classical_bound_transfer(const Lattice& lattice,
                                              const DimerCovering& covering, double epsilon,
                                              const TransferOptions& options = {});

// Explicitly materialized column factor T_j; used by tests to cross-check the
// streamed contraction inside classical_bound_transfer.
TropicalMatrix column_transfer_matrix(const Lattice& lattice, const DimerCovering& covering,
                                      double epsilon, int j);

// Row-grouped factor R_i (torus only).
TropicalMatrix row_transfer_matrix(const Lattice& lattice, const DimerCovering& covering,
                                   double epsilon, int i);

}  // namespace dimerbell
