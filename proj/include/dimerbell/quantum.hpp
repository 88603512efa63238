#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dimerbell/dimers.hpp"
#include "dimerbell/lattice.hpp"

namespace dimerbell {

enum class PauliOp { X, Z };

// One two-site Pauli string c * P_a P_b with P in {X, Z}. X and Z generate
// only real matrix elements in the computational basis, so the assembled
// operator is real-symmetric.
struct PauliTermSpec {
  int site_a = 0;
  int site_b = 0;
  PauliOp op_a = PauliOp::X;
  PauliOp op_b = PauliOp::X;
  double coefficient = 0.0;
};

// Bell operator of a weighted covering: every lattice edge contributes the
// four terms w * (XX + XZ + ZX - ZZ) with w = edge_weight(on_dimer, epsilon).
// Zero-weight terms are kept so the term count is always 4 * |edges|.
std::vector<PauliTermSpec> build_hamiltonian(const Lattice& lattice,
                                             const DimerCovering& covering, double epsilon);

// y = H x without materializing H. Consecutive runs of four terms that form
// the per-edge pattern w * (XX + XZ + ZX - ZZ) on one site pair are applied as
// a fused 4-amplitude block update; stray terms fall back to the generic
// per-term path. x and y must hold 2^num_sites doubles; y is overwritten.
void apply_hamiltonian(const std::vector<PauliTermSpec>& terms, int num_sites, const double* x,
                       double* y);

// Dense 2^N x 2^N assembly, for small systems and as the test oracle.
Eigen::MatrixXd dense_matrix(const std::vector<PauliTermSpec>& terms, int num_sites);

enum class SolverMethod { Dense, Lanczos };

struct QuantumValueResult {
  double beta_q = 0.0;      // ground-state energy
  SolverMethod method = SolverMethod::Dense;
  double residual = 0.0;    // ||H v - beta_q v|| at the returned unit eigenvector
  int iterations = 0;       // matrix applications performed
  bool converged = false;
};

// Smallest eigenvalue by full diagonalization. Throws std::invalid_argument
// above 12 sites (the 2^N x 2^N assembly becomes unreasonable).
QuantumValueResult ground_energy_dense(const std::vector<PauliTermSpec>& terms, int num_sites);

struct LanczosOptions {
  double tol = 1e-8;        // residual-estimate convergence threshold
  int max_krylov = 200;     // Krylov dimension per restart cycle
  int max_restarts = 10;
  std::uint64_t seed = 12345;  // start-vector PRNG seed (determinism)
};

// Smallest eigenvalue by matrix-free Lanczos with full reorthogonalization.
// Breakdown (invariant subspace) restarts with a fresh random vector
// orthogonal to the exhausted subspace; hitting the Krylov cap restarts from
// the best Ritz vector. Non-convergence returns the best estimate with
// converged = false rather than throwing. Throws std::invalid_argument above
// 26 sites or for non-positive tolerances.
QuantumValueResult ground_energy_lanczos(const std::vector<PauliTermSpec>& terms, int num_sites,
                                         const LanczosOptions& options = {});

}  // namespace dimerbell
