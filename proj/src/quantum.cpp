#include "dimerbell/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "dimerbell/bellcore.hpp"

namespace dimerbell {

std::vector<PauliTermSpec> build_hamiltonian(const Lattice& lattice,
                                             const DimerCovering& covering, double epsilon) {
  const auto mask = dimer_mask(lattice, covering);
  std::vector<PauliTermSpec> terms;
  terms.reserve(4 * lattice.edges().size());
  for (std::size_t e = 0; e < lattice.edges().size(); ++e) {
    const Edge& edge = lattice.edges()[e];
    const double w = edge_weight(mask[e], epsilon);
    terms.push_back({edge.a, edge.b, PauliOp::X, PauliOp::X, w});
    terms.push_back({edge.a, edge.b, PauliOp::X, PauliOp::Z, w});
    terms.push_back({edge.a, edge.b, PauliOp::Z, PauliOp::X, w});
    terms.push_back({edge.a, edge.b, PauliOp::Z, PauliOp::Z, -w});
  }
  return terms;
}

namespace {

void check_terms(const std::vector<PauliTermSpec>& terms, int num_sites) {
  for (const auto& t : terms) {
    if (t.site_a < 0 || t.site_a >= num_sites || t.site_b < 0 || t.site_b >= num_sites ||
        t.site_a == t.site_b) {
      throw std::invalid_argument("Pauli term sites out of range or coincident");
    }
  }
}

// True when terms[i..i+3] form the per-edge pattern w*(XX + XZ + ZX - ZZ) on
// a single site pair.
bool is_edge_group(const std::vector<PauliTermSpec>& t, std::size_t i) {
  if (i + 4 > t.size()) return false;
  const int a = t[i].site_a;
  const int b = t[i].site_b;
  const double c = t[i].coefficient;
  auto match = [&](std::size_t k, PauliOp oa, PauliOp ob, double cc) {
    return t[k].site_a == a && t[k].site_b == b && t[k].op_a == oa && t[k].op_b == ob &&
           t[k].coefficient == cc;
  };
  return match(i, PauliOp::X, PauliOp::X, c) && match(i + 1, PauliOp::X, PauliOp::Z, c) &&
         match(i + 2, PauliOp::Z, PauliOp::X, c) && match(i + 3, PauliOp::Z, PauliOp::Z, -c);
}

// One edge's w*(XX + XZ + ZX - ZZ) as a 4-amplitude block update. In the
// two-site basis (00,01,10,11) the block is
//   w * [[-1,1,1,1],[1,1,1,-1],[1,1,1,-1],[1,-1,-1,-1]],
// symmetric under swapping the middle amplitudes, so which site maps to the
// lower bit is immaterial.
void apply_edge_fused(int pa, int pb, double w, int num_sites, const double* x, double* y) {
  if (w == 0.0) return;
  if (pa > pb) std::swap(pa, pb);
  const std::uint64_t sa = std::uint64_t{1} << pa;
  const std::uint64_t sb = std::uint64_t{1} << pb;
  const std::uint64_t count = std::uint64_t{1} << (num_sites - 2);
  const std::uint64_t low_mask = sa - 1;
  const std::uint64_t mid_mask = (std::uint64_t{1} << (pb - pa - 1)) - 1;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t base = (k & low_mask) | (((k >> pa) & mid_mask) << (pa + 1)) |
                               ((k >> (pb - 1)) << (pb + 1));
    const double x00 = x[base];
    const double x01 = x[base | sa];
    const double x10 = x[base | sb];
    const double x11 = x[base | sa | sb];
    const double sum_mid = x01 + x10;
    const double diff = x11 - x00;
    const double p = w * (sum_mid + diff);
    const double q = w * (sum_mid - diff);
    y[base] += p;
    y[base | sa] += q;
    y[base | sb] += q;
    y[base | sa | sb] -= p;
  }
}

void apply_single_term(const PauliTermSpec& t, std::uint64_t dim, const double* x, double* y) {
  if (t.coefficient == 0.0) return;
  const std::uint64_t ma = std::uint64_t{1} << t.site_a;
  const std::uint64_t mb = std::uint64_t{1} << t.site_b;
  const double c = t.coefficient;
  if (t.op_a == PauliOp::X && t.op_b == PauliOp::X) {
    for (std::uint64_t b = 0; b < dim; ++b) y[b ^ (ma | mb)] += c * x[b];
  } else if (t.op_a == PauliOp::X && t.op_b == PauliOp::Z) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      y[b ^ ma] += ((b & mb) ? -c : c) * x[b];
    }
  } else if (t.op_a == PauliOp::Z && t.op_b == PauliOp::X) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      y[b ^ mb] += ((b & ma) ? -c : c) * x[b];
    }
  } else {
    for (std::uint64_t b = 0; b < dim; ++b) {
      const bool neg = ((b & ma) != 0) != ((b & mb) != 0);
      y[b] += (neg ? -c : c) * x[b];
    }
  }
}

}  // namespace

void apply_hamiltonian(const std::vector<PauliTermSpec>& terms, int num_sites, const double* x,
                       double* y) {
  if (num_sites < 2 || num_sites > 30) {
    throw std::invalid_argument("apply_hamiltonian supports 2..30 sites");
  }
  check_terms(terms, num_sites);
  const std::uint64_t dim = std::uint64_t{1} << num_sites;
  std::fill(y, y + dim, 0.0);
  std::size_t i = 0;
  while (i < terms.size()) {
    if (is_edge_group(terms, i)) {
      apply_edge_fused(terms[i].site_a, terms[i].site_b, terms[i].coefficient, num_sites, x, y);
      i += 4;
    } else {
      apply_single_term(terms[i], dim, x, y);
      ++i;
    }
  }
}

Eigen::MatrixXd dense_matrix(const std::vector<PauliTermSpec>& terms, int num_sites) {
  if (num_sites < 2 || num_sites > 13) {
    throw std::invalid_argument("dense assembly supports 2..13 sites");
  }
  check_terms(terms, num_sites);
  const std::uint64_t dim = std::uint64_t{1} << num_sites;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& t : terms) {
    const std::uint64_t ma = std::uint64_t{1} << t.site_a;
    const std::uint64_t mb = std::uint64_t{1} << t.site_b;
    for (std::uint64_t b = 0; b < dim; ++b) {
      std::uint64_t target = b;
      double val = t.coefficient;
      if (t.op_a == PauliOp::X) {
        target ^= ma;
      } else if (b & ma) {
        val = -val;
      }
      if (t.op_b == PauliOp::X) {
        target ^= mb;
      } else if (b & mb) {
        val = -val;
      }
      m(target, b) += val;
    }
  }
  return m;
}

QuantumValueResult ground_energy_dense(const std::vector<PauliTermSpec>& terms, int num_sites) {
  if (num_sites > 12) {
    throw std::invalid_argument("dense ground energy capped at 12 sites (2^N x 2^N assembly)");
  }
  const Eigen::MatrixXd m = dense_matrix(terms, num_sites);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("dense symmetric eigensolver failed to converge");
  }
  QuantumValueResult r;
  r.beta_q = es.eigenvalues()(0);
  r.method = SolverMethod::Dense;
  const Eigen::VectorXd v = es.eigenvectors().col(0);
  r.residual = (m * v - r.beta_q * v).norm();
  r.iterations = 1;
  r.converged = true;
  return r;
}

QuantumValueResult ground_energy_lanczos(const std::vector<PauliTermSpec>& terms, int num_sites,
                                         const LanczosOptions& options) {
  if (num_sites < 2 || num_sites > 26) {
    throw std::invalid_argument("lanczos ground energy capped at 26 sites");
  }
  if (!(options.tol > 0.0)) throw std::invalid_argument("lanczos tolerance must be positive");
  if (options.max_krylov < 2) throw std::invalid_argument("krylov cap must be at least 2");
  const std::uint64_t dim = std::uint64_t{1} << num_sites;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto fill_random = [&](Eigen::VectorXd& v) {
    for (std::uint64_t i = 0; i < dim; ++i) v(i) = gauss(rng);
  };

  Eigen::VectorXd w(dim), v(dim), start(dim);
  fill_random(start);
  start.normalize();

  std::vector<Eigen::VectorXd> basis;
  double best_theta = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_vec;
  bool converged = false;
  int matvecs = 0;

  for (int cycle = 0; cycle <= options.max_restarts && !converged; ++cycle) {
    basis.clear();
    std::vector<double> diag, sub;
    v = start;
    for (int j = 0; j < options.max_krylov; ++j) {
      basis.push_back(v);
      apply_hamiltonian(terms, num_sites, v.data(), w.data());
      ++matvecs;
      diag.push_back(v.dot(w));
      // Full reorthogonalization, two modified Gram-Schmidt sweeps; this
      // subsumes the three-term recurrence subtractions.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) w -= q.dot(w) * q;
      }
      const double bnorm = w.norm();

      Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), diag.size());
      Eigen::VectorXd s = sub.empty()
                              ? Eigen::VectorXd()
                              : Eigen::Map<const Eigen::VectorXd>(sub.data(), sub.size());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(d, s, Eigen::ComputeEigenvectors);
      if (es.info() != Eigen::Success) {
        throw std::runtime_error("tridiagonal eigensolver failed inside lanczos");
      }
      const double theta = es.eigenvalues()(0);
      const Eigen::VectorXd coeff = es.eigenvectors().col(0);
      const double resid_est = bnorm * std::abs(coeff(coeff.size() - 1));

      double scale = 1.0;
      for (double a : diag) scale = std::max(scale, std::abs(a));
      for (double b : sub) scale = std::max(scale, std::abs(b));
      const bool breakdown = bnorm <= 1e-13 * scale;
      const bool cap_hit = j == options.max_krylov - 1;
      const bool space_full = basis.size() == dim;

      if (resid_est <= options.tol || breakdown || cap_hit || space_full) {
        Eigen::VectorXd ritz = Eigen::VectorXd::Zero(dim);
        for (std::size_t k = 0; k < basis.size(); ++k) ritz += coeff(k) * basis[k];
        ritz.normalize();
        if (theta < best_theta) {
          best_theta = theta;
          best_vec = ritz;
        }
        if (resid_est <= options.tol || space_full) {
          converged = true;
        } else if (breakdown) {
          // Invariant subspace exhausted: theta is exact there. Probe the
          // orthogonal complement with a fresh random direction in case the
          // start vector missed the ground state.
          fill_random(start);
          for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) start -= q.dot(start) * q;
          }
          const double nrm = start.norm();
          if (nrm < 1e-12) {
            converged = true;  // nothing left to explore
          } else {
            start /= nrm;
          }
        } else {
          start = best_vec;  // Krylov cap: restart from the best Ritz vector
        }
        break;
      }

      sub.push_back(bnorm);
      v = w / bnorm;
    }
  }

  QuantumValueResult r;
  r.beta_q = best_theta;
  r.method = SolverMethod::Lanczos;
  apply_hamiltonian(terms, num_sites, best_vec.data(), w.data());
  ++matvecs;
  r.residual = (w - best_theta * best_vec).norm();
  r.iterations = matvecs;
  r.converged = converged;
  return r;
}

}  // namespace dimerbell
