#include "dimerbell/critical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dimerbell {

bool EvalCache::lookup(std::uint64_t covering_hash, double epsilon, BoundsPoint* out) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto it = map_.find({covering_hash, std::bit_cast<std::uint64_t>(epsilon)});
  if (it == map_.end()) return false;
  *out = it->second;
  return true;
}

void EvalCache::store(std::uint64_t covering_hash, double epsilon, const BoundsPoint& point) {
  std::lock_guard<std::mutex> lock(mutex_);
  const Key key{covering_hash, std::bit_cast<std::uint64_t>(epsilon)};
  if (map_.emplace(key, point).second) order_.push_back(point);
}

std::vector<BoundsPoint> EvalCache::trace() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return order_;
}

BoundsPoint evaluate_bounds(const Lattice& lattice, const DimerCovering& covering,
                            double epsilon, const SolverConfig& solver, EvalCache* cache) {
  const std::uint64_t h = covering_hash(covering);
  BoundsPoint p;
  if (cache && cache->lookup(h, epsilon, &p)) return p;

  p.epsilon = epsilon;
  p.beta_c = classical_bound_transfer(lattice, covering, epsilon).beta_c;

  const auto terms = build_hamiltonian(lattice, covering, epsilon);
  const int sites = lattice.num_sites();
  const bool dense = solver.kind == SolverKind::Dense ||
                     (solver.kind == SolverKind::Auto && sites <= solver.dense_max_sites);
  QuantumValueResult q;
  if (dense) {
    q = ground_energy_dense(terms, sites);
  } else {
    LanczosOptions opts;
    opts.tol = solver.lanczos_tol;
    opts.seed = solver.seed;
    q = ground_energy_lanczos(terms, sites, opts);
  }
  if (!q.converged) {
    throw std::runtime_error("quantum solver did not converge at epsilon = " +
                             std::to_string(epsilon) + " (residual " +
                             std::to_string(q.residual) + ")");
  }
  p.beta_q = q.beta_q;

  if (cache) cache->store(h, epsilon, p);
  return p;
}

double ratio(const Lattice& lattice, const DimerCovering& covering, double epsilon,
             const SolverConfig& solver, EvalCache* cache) {
  const BoundsPoint p = evaluate_bounds(lattice, covering, epsilon, solver, cache);
  if (std::abs(p.beta_c) < 1e-9) {
    throw std::runtime_error("degenerate classical bound (|beta_c| ~ 0) at epsilon = " +
                             std::to_string(epsilon));
  }
  return p.beta_q / p.beta_c - 1.0;
}

double brent_dekker(const std::function<double(double)>& f, double a, double b, double fa,
                    double fb, double xtol, double ftol, int max_iter, bool* converged,
                    int* iterations) {
  if (!(xtol > 0.0) || !(ftol >= 0.0)) throw std::invalid_argument("bad tolerances");
  if (fa * fb > 0.0) throw std::invalid_argument("root is not bracketed");

  double c = a, fc = fa;
  double d = b - a, e = d;
  int iter = 0;
  bool ok = false;
  for (; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 =
        2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    // b is the best iterate and [b, c] brackets the root; stop only when the
    // remaining move is below xtol AND the function value satisfies ftol.
    if (fb == 0.0 || (std::abs(xm) <= tol1 && std::abs(fb) <= ftol)) {
      ok = true;
      break;
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;  // secant
        q = 1.0 - s;
      } else {
        q = fa / fc;  // inverse quadratic interpolation
        const double r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;  // interpolation accepted
        d = p / q;
      } else {
        d = xm;  // fall back to bisection
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (std::abs(d) > tol1) {
      b += d;
    } else {
      b += xm > 0.0 ? tol1 : -tol1;
    }
    fb = f(b);
  }
  if (converged) *converged = ok;
  if (iterations) *iterations = iter;
  return b;
}

RootResult find_critical(const Lattice& lattice, const DimerCovering& covering, Side side,
                         const SolverConfig& solver, const CriticalConfig& config,
                         EvalCache* cache) {
  EvalCache local;
  if (!cache) cache = &local;
  auto f = [&](double e) { return ratio(lattice, covering, e, solver, cache); };

  double a, b;
  if (side == Side::Low) {
    a = config.bracket_low_a;
    b = 1.0;
  } else {
    a = 1.0;
    b = config.bracket_high_b;
  }
  double fa = f(a), fb = f(b);

  // Expand outward toward the domain edge while both ends share a sign.
  const double margin = 1e-6;
  while (fa * fb > 0.0) {
    const double width = b - a;
    bool moved = false;
    if (side == Side::Low) {
      const double na = std::max(b - width * config.expand_factor, config.domain_min + margin);
      if (na < a - 1e-15) {
        a = na;
        fa = f(a);
        moved = true;
      }
    } else {
      const double nb = std::min(a + width * config.expand_factor, config.domain_max - margin);
      if (nb > b + 1e-15) {
        b = nb;
        fb = f(b);
        moved = true;
      }
    }
    if (!moved) {
      RootResult r;
      r.no_crossing = true;
      r.epsilon_star = std::numeric_limits<double>::quiet_NaN();
      r.bracket = {a, b};
      return r;
    }
  }

  RootResult r;
  r.bracket = {a, b};
  r.epsilon_star = brent_dekker(f, a, b, fa, fb, config.root_tol, config.ratio_tol,
                                config.max_iterations, &r.converged, &r.iterations);
  return r;
}

ViolationResult violation_interval(const Lattice& lattice, const DimerCovering& covering,
                                   int class_id, const SolverConfig& solver,
                                   const CriticalConfig& config) {
  EvalCache cache;
  ViolationResult v;
  v.class_id = class_id;
  const RootResult lo = find_critical(lattice, covering, Side::Low, solver, config, &cache);
  const RootResult hi = find_critical(lattice, covering, Side::High, solver, config, &cache);
  v.eps_low = lo.epsilon_star;
  v.eps_high = hi.epsilon_star;
  v.bracket_low = lo.bracket;
  v.bracket_high = hi.bracket;
  v.no_crossing_low = lo.no_crossing;
  v.no_crossing_high = hi.no_crossing;
  v.converged = lo.converged && hi.converged;
  v.trace = cache.trace();
  return v;
}

std::vector<BoundsPoint> sweep(const Lattice& lattice, const DimerCovering& covering,
                               std::vector<double> epsilons, const SolverConfig& solver) {
  if (epsilons.empty()) throw std::invalid_argument("sweep requires at least one epsilon");
  std::sort(epsilons.begin(), epsilons.end());
  std::vector<BoundsPoint> out;
  out.reserve(epsilons.size());
  for (double e : epsilons) out.push_back(evaluate_bounds(lattice, covering, e, solver));
  return out;
}

}  // namespace dimerbell
