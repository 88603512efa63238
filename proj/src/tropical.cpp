#include "dimerbell/tropical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dimerbell {

TropicalMatrix trop_matmul(const TropicalMatrix& a, const TropicalMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("tropical matrix dimension mismatch");
  const int d = a.dim();
  TropicalMatrix c(d, kTropInf);
  for (int i = 0; i < d; ++i) {
    for (int l = 0; l < d; ++l) {
      const double ail = a.at(i, l);
      if (ail == kTropInf) continue;  // absorbing element contributes nothing to any min
      for (int j = 0; j < d; ++j) {
        const double cand = ail + b.at(l, j);
        if (cand < c.at(i, j)) c.at(i, j) = cand;
      }
    }
  }
  return c;
}

double trop_trace(const TropicalMatrix& a) {
  double t = kTropInf;
  for (int i = 0; i < a.dim(); ++i) t = std::min(t, a.at(i, i));
  return t;
}

namespace {

std::array<std::array<int, 4>, 4> make_chsh_table() {
  std::array<std::array<int, 4>, 4> t{};
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) t[p][q] = chsh_link_value(p, q);
  return t;
}

const std::array<std::array<int, 4>, 4> kChsh = make_chsh_table();

inline int digit(std::uint64_t state, int i) { return static_cast<int>((state >> (2 * i)) & 3); }

inline std::uint64_t set_digit(std::uint64_t state, int i, int value) {
  return (state & ~(std::uint64_t{3} << (2 * i))) | (std::uint64_t(value) << (2 * i));
}

// Base-4 digit reversal table for n digits; the Klein-bottle closure pairs
// row i of one column with row n-1-i of the next, which is exactly a digit
// reversal of the column state.
std::vector<std::uint32_t> reversal_table(int n) {
  const std::size_t dim = std::size_t{1} << (2 * n);
  std::vector<std::uint32_t> rev(dim);
  for (std::size_t u = 0; u < dim; ++u) {
    std::uint64_t r = 0;
    for (int i = 0; i < n; ++i) r = set_digit(r, n - 1 - i, digit(u, i));
    rev[u] = static_cast<std::uint32_t>(r);
  }
  return rev;
}

struct ColumnWeights {
  std::vector<double> vert;   // vert[i]: link (i,j)-((i+1) mod n, j)
  std::vector<double> horiz;  // horiz[i]: link from (i,j) to its Right neighbor
};

ColumnWeights column_weights(const Lattice& lat, const std::vector<bool>& mask, double eps,
                             int j) {
  const int n = lat.n();
  ColumnWeights w{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    const int s = lat.site(i, j);
    const int ev = lat.edge_index(s, lat.neighbor(s, Direction::Down));
    const int eh = lat.edge_index(s, lat.neighbor(s, Direction::Right));
    if (ev < 0 || eh < 0) throw std::logic_error("transfer construction: missing lattice edge");
    w.vert[i] = edge_weight(mask[ev], eps);
    w.horiz[i] = edge_weight(mask[eh], eps);
  }
  return w;
}

// Vertical-link cost of a single column state.
std::vector<double> column_cost(const ColumnWeights& w, int n) {
  const std::size_t dim = std::size_t{1} << (2 * n);
  std::vector<double> c(dim, 0.0);
  for (std::size_t u = 0; u < dim; ++u) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += w.vert[i] * kChsh[digit(u, i)][digit(u, (i + 1) % n)];
    c[u] = acc;
  }
  return c;
}

// In-place min-plus contraction of one row against the horizontal factor
// H[u,v] = sum_i tab_i(u_i, v_i), one base-4 digit at a time (H is a tropical
// Kronecker product, so per-digit contraction is exact). When `argmin` is
// non-null it records, per digit and output position, the minimizing source
// digit for Viterbi backtracking; ties go to the lowest digit value.
void apply_horizontal(double* row, int n, const std::array<std::array<double, 16>, 8>& tab,
                      std::uint8_t* argmin) {
  const std::size_t dim = std::size_t{1} << (2 * n);
  for (int i = 0; i < n; ++i) {
    const std::size_t stride = std::size_t{1} << (2 * i);
    const double* t = tab[i].data();
    std::uint8_t* am = argmin ? argmin + static_cast<std::size_t>(i) * dim : nullptr;
    for (std::size_t hi = 0; hi < dim; hi += 4 * stride) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        const std::size_t base = hi + lo;
        const double x0 = row[base];
        const double x1 = row[base + stride];
        const double x2 = row[base + 2 * stride];
        const double x3 = row[base + 3 * stride];
        for (int b = 0; b < 4; ++b) {
          double m = x0 + t[b];
          int a = 0;
          double cand = x1 + t[4 + b];
          if (cand < m) m = cand, a = 1;
          cand = x2 + t[8 + b];
          if (cand < m) m = cand, a = 2;
          cand = x3 + t[12 + b];
          if (cand < m) m = cand, a = 3;
          row[base + b * stride] = m;
          if (am) am[base + b * stride] = static_cast<std::uint8_t>(a);
        }
      }
    }
  }
}

std::array<std::array<double, 16>, 8> horizontal_tables(const ColumnWeights& w, int n) {
  std::array<std::array<double, 16>, 8> tab{};
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) tab[i][a * 4 + b] = w.horiz[i] * kChsh[a][b];
  return tab;
}

}  // namespace

std::vector<ClassicalBoundResult> classical_bound_bruteforce_grid(
    const Lattice& lattice, const DimerCovering& covering,
    const std::vector<double>& epsilons) {
  const int sites = lattice.num_sites();
  if (sites > 10) {
    throw std::invalid_argument("brute-force bound enumerates 4^sites assignments; capped at 10 sites, got " +
                                std::to_string(sites));
  }
  if (epsilons.empty()) throw std::invalid_argument("empty epsilon list");

  const auto mask = dimer_mask(lattice, covering);
  const auto& edges = lattice.edges();
  const std::size_t ne = edges.size();
  std::vector<int> ea(ne), eb(ne);
  std::vector<char> on_dimer(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    ea[e] = edges[e].a;
    eb[e] = edges[e].b;
    on_dimer[e] = mask[e] ? 1 : 0;
  }

  const std::uint64_t total = std::uint64_t{1} << (2 * sites);
  std::vector<double> best(epsilons.size(), kTropInf);
  std::vector<std::uint64_t> best_idx(epsilons.size(), 0);
  std::vector<int> s(sites);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    for (int p = 0; p < sites; ++p) s[p] = digit(idx, p);
    std::int64_t on = 0, off = 0;
    for (std::size_t e = 0; e < ne; ++e) {
      const int v = kChsh[s[ea[e]]][s[eb[e]]];
      if (on_dimer[e])
        on += v;
      else
        off += v;
    }
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
      const double val = (1.0 + epsilons[k]) * static_cast<double>(on) +
                         (1.0 - epsilons[k]) * static_cast<double>(off);
      if (val < best[k]) {
        best[k] = val;
        best_idx[k] = idx;
      }
    }
  }

  std::vector<ClassicalBoundResult> out(epsilons.size());
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    out[k].beta_c = best[k];
    out[k].epsilon = epsilons[k];
    StrategyAssignment a(sites);
    for (int p = 0; p < sites; ++p) a[p] = static_cast<std::uint8_t>(digit(best_idx[k], p));
    out[k].assignment = std::move(a);
  }
  return out;
}

ClassicalBoundResult classical_bound_bruteforce(const Lattice& lattice,
                                                const DimerCovering& covering, double epsilon) {
  return classical_bound_bruteforce_grid(lattice, covering, {epsilon}).front();
}

TropicalMatrix column_transfer_matrix(const Lattice& lattice, const DimerCovering& covering,
                                      double epsilon, int j) {
  const int n = lattice.n();
  if (j < 0 || j >= n) throw std::invalid_argument("column index out of range");
  const auto mask = dimer_mask(lattice, covering);
  const auto w = column_weights(lattice, mask, epsilon, j);
  const auto cost = column_cost(w, n);
  const bool flip = lattice.boundary() == Boundary::Klein && j == n - 1;
  const std::size_t dim = std::size_t{1} << (2 * n);
  TropicalMatrix t(static_cast<int>(dim));
  for (std::size_t u = 0; u < dim; ++u) {
    for (std::size_t v = 0; v < dim; ++v) {
      double h = 0.0;
      for (int i = 0; i < n; ++i) {
        const int vd = flip ? digit(v, n - 1 - i) : digit(v, i);
        h += w.horiz[i] * kChsh[digit(u, i)][vd];
      }
      t.at(static_cast<int>(u), static_cast<int>(v)) = cost[u] + h;
    }
  }
  return t;
}

TropicalMatrix row_transfer_matrix(const Lattice& lattice, const DimerCovering& covering,
                                   double epsilon, int i) {
  const int n = lattice.n();
  if (lattice.boundary() != Boundary::Torus) {
    throw std::invalid_argument("row-grouped transfer factors require the torus");
  }
  if (i < 0 || i >= n) throw std::invalid_argument("row index out of range");
  const auto mask = dimer_mask(lattice, covering);
  std::vector<double> horiz(n), vert(n);  // indexed by column j within row i
  for (int j = 0; j < n; ++j) {
    const int s = lattice.site(i, j);
    const int eh = lattice.edge_index(s, lattice.neighbor(s, Direction::Right));
    const int ev = lattice.edge_index(s, lattice.neighbor(s, Direction::Down));
    if (eh < 0 || ev < 0) throw std::logic_error("transfer construction: missing lattice edge");
    horiz[j] = edge_weight(mask[eh], epsilon);
    vert[j] = edge_weight(mask[ev], epsilon);
  }
  const std::size_t dim = std::size_t{1} << (2 * n);
  TropicalMatrix t(static_cast<int>(dim));
  for (std::size_t u = 0; u < dim; ++u) {
    double c = 0.0;
    for (int j = 0; j < n; ++j) c += horiz[j] * kChsh[digit(u, j)][digit(u, (j + 1) % n)];
    for (std::size_t v = 0; v < dim; ++v) {
      double h = 0.0;
      for (int j = 0; j < n; ++j) h += vert[j] * kChsh[digit(u, j)][digit(v, j)];
      t.at(static_cast<int>(u), static_cast<int>(v)) = c + h;
    }
  }
  return t;
}

ClassicalBoundResult classical_bound_transfer(const Lattice& lattice,
                                              const DimerCovering& covering, double epsilon,
                                              const TransferOptions& options) {
  const int n = lattice.n();
  if (n > options.max_n) {
    throw std::runtime_error("transfer dimension 4^" + std::to_string(n) +
                             " exceeds the memory cap (max_n = " + std::to_string(options.max_n) +
                             ")");
  }
  if (n > 8) throw std::runtime_error("transfer states exceed the 16-bit digit budget");

  ClassicalBoundResult result;
  result.epsilon = epsilon;

  if (options.axis == TransferAxis::Rows) {
    if (lattice.boundary() != Boundary::Torus) {
      throw std::invalid_argument(
          "row-grouped transfer requires the torus (the Klein seam breaks row grouping)");
    }
    if (options.recover_assignment) {
      throw std::invalid_argument("assignment recovery is implemented for the column axis only");
    }
    TropicalMatrix m = row_transfer_matrix(lattice, covering, epsilon, 0);
    for (int i = 1; i < n; ++i) {
      m = trop_matmul(m, row_transfer_matrix(lattice, covering, epsilon, i));
    }
    result.beta_c = trop_trace(m);
    return result;
  }

  const auto mask = dimer_mask(lattice, covering);
  const std::size_t dim = std::size_t{1} << (2 * n);
  const auto rev = reversal_table(n);

  // Streamed product: M starts as the tropical identity and absorbs one
  // column factor at a time. Each row of M is an independent min-plus vector,
  // so the horizontal factor is applied row-wise, digit by digit.
  std::vector<double> m(dim * dim, kTropInf);
  for (std::size_t x = 0; x < dim; ++x) m[x * dim + x] = 0.0;
  std::vector<double> tmp(dim);
  for (int j = 0; j < n; ++j) {
    const auto w = column_weights(lattice, mask, epsilon, j);
    const auto cost = column_cost(w, n);
    const auto tab = horizontal_tables(w, n);
    const bool flip = lattice.boundary() == Boundary::Klein && j == n - 1;
    for (std::size_t x = 0; x < dim; ++x) {
      double* row = &m[x * dim];
      for (std::size_t u = 0; u < dim; ++u) row[u] += cost[u];
      apply_horizontal(row, n, tab, nullptr);
      if (flip) {
        for (std::size_t v = 0; v < dim; ++v) tmp[v] = row[rev[v]];
        std::copy(tmp.begin(), tmp.end(), row);
      }
    }
  }

  double beta = kTropInf;
  std::size_t cstar = 0;
  for (std::size_t x = 0; x < dim; ++x) {
    if (m[x * dim + x] < beta) {
      beta = m[x * dim + x];
      cstar = x;
    }
  }
  result.beta_c = beta;

  if (options.recover_assignment) {
    // Second pass: Viterbi vector sweep from the best closure state, with
    // per-digit argmin tables, then backtrack through the factors.
    std::vector<double> v(dim, kTropInf);
    v[cstar] = 0.0;
    std::vector<std::uint8_t> amin(static_cast<std::size_t>(n) * n * dim);
    std::vector<bool> flipped(n, false);
    for (int j = 0; j < n; ++j) {
      const auto w = column_weights(lattice, mask, epsilon, j);
      const auto cost = column_cost(w, n);
      const auto tab = horizontal_tables(w, n);
      for (std::size_t u = 0; u < dim; ++u) v[u] += cost[u];
      apply_horizontal(v.data(), n, tab, &amin[static_cast<std::size_t>(j) * n * dim]);
      if (lattice.boundary() == Boundary::Klein && j == n - 1) {
        flipped[j] = true;
        for (std::size_t q = 0; q < dim; ++q) tmp[q] = v[rev[q]];
        std::copy(tmp.begin(), tmp.end(), v.begin());
      }
    }

    std::vector<std::uint64_t> states(n);
    std::uint64_t target = cstar;  // state of column n == column 0
    for (int j = n - 1; j >= 0; --j) {
      std::uint64_t w = flipped[j] ? rev[target] : target;
      for (int i = n - 1; i >= 0; --i) {
        const std::uint8_t a = amin[(static_cast<std::size_t>(j) * n + i) * dim + w];
        w = set_digit(w, i, a);
      }
      states[j] = w;
      target = w;
    }
    if (target != cstar) throw std::logic_error("transfer backtracking failed to close the cycle");

    StrategyAssignment assignment(lattice.num_sites());
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        assignment[lattice.site(i, j)] = static_cast<std::uint8_t>(digit(states[j], i));
    const double direct = bell_value(lattice, covering, assignment, epsilon);
    if (std::abs(direct - beta) > 1e-9 * std::max(1.0, std::abs(beta))) {
      throw std::logic_error("recovered assignment does not attain the transfer bound");
    }
    result.assignment = std::move(assignment);
  }

  return result;
}

}  // namespace dimerbell
