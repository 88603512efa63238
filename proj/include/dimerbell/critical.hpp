#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dimerbell/dimers.hpp"
#include "dimerbell/lattice.hpp"
#include "dimerbell/quantum.hpp"
#include "dimerbell/tropical.hpp"

namespace dimerbell {

enum class SolverKind { Auto, Dense, Lanczos };

struct SolverConfig {
  SolverKind kind = SolverKind::Auto;
  // Auto switches to Lanczos above this many sites.
  int dense_max_sites = 12;
  double lanczos_tol = 1e-8;
  std::uint64_t seed = 12345;
};

// One joint evaluation of both bounds at a coupling.
struct BoundsPoint {
  double epsilon = 0.0;
  double beta_c = 0.0;
  double beta_q = 0.0;
};

// Memoizes (covering, epsilon) -> (beta_c, beta_q); both root searches of a
// class revisit couplings. Entries keep first-request order so evaluation
// traces are deterministic.
class EvalCache {
 public:
  bool lookup(std::uint64_t covering_hash, double epsilon, BoundsPoint* out) const;
  void store(std::uint64_t covering_hash, double epsilon, const BoundsPoint& point);
  std::vector<BoundsPoint> trace() const;  // insertion order

 private:
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ull ^ k.second);
    }
  };
  mutable std::mutex mutex_;
  std::unordered_map<Key, BoundsPoint, KeyHash> map_;
  std::vector<BoundsPoint> order_;
};

// Transfer-matrix classical bound plus the configured quantum solve at one
// coupling; memoized through `cache` when given.
BoundsPoint evaluate_bounds(const Lattice& lattice, const DimerCovering& covering,
                            double epsilon, const SolverConfig& solver,
                            EvalCache* cache = nullptr);

// The violation indicator beta_q / beta_c - 1: positive where quantum
// strategies beat every deterministic one. Throws std::runtime_error if the
// classical bound degenerates to ~0 (never happens on these models in (0,2)).
double ratio(const Lattice& lattice, const DimerCovering& covering, double epsilon,
             const SolverConfig& solver, EvalCache* cache = nullptr);

struct CriticalConfig {
  double root_tol = 1e-3;   // epsilon movement threshold
  double ratio_tol = 1e-3;  // |ratio| required at a reported root
  int max_iterations = 100;
  double domain_min = 0.0;  // admissible couplings are the open interval
  double domain_max = 2.0;
  double bracket_low_a = 0.05;   // initial bracket below epsilon = 1
  double bracket_high_b = 1.95;  // initial bracket above epsilon = 1
  double expand_factor = 1.5;    // bracket growth toward the domain edge
};

// Brent-Dekker hybrid root finder on a bracketing interval: inverse quadratic
// and secant steps guarded by bisection. Stops once the step size drops below
// xtol AND |f| <= ftol at the iterate; `converged` reports whether both held
// within max_iter. Requires f(a) and f(b) of opposite sign.
double brent_dekker(const std::function<double(double)>& f, double a, double b, double fa,
                    double fb, double xtol, double ftol, int max_iter, bool* converged,
                    int* iterations);

enum class Side { Low, High };

struct RootResult {
  double epsilon_star = 0.0;
  bool converged = false;
  bool no_crossing = false;  // ratio never changes sign in the admissible domain
  int iterations = 0;
  std::pair<double, double> bracket{0.0, 0.0};
};

// Locates the critical coupling on one side of epsilon = 1. The initial
// bracket expands geometrically toward the domain edge until the ratio
// changes sign; an unsigned ratio across the whole side reports no_crossing
// instead of failing.
RootResult find_critical(const Lattice& lattice, const DimerCovering& covering, Side side,
                         const SolverConfig& solver, const CriticalConfig& config,
                         EvalCache* cache = nullptr);

// Per-class critical-coupling record: both endpoints plus every bound
// evaluation made along the way (first-request order).
struct ViolationResult {
  int class_id = 0;
  double eps_low = 0.0;
  double eps_high = 0.0;
  std::pair<double, double> bracket_low{0.0, 0.0};
  std::pair<double, double> bracket_high{0.0, 0.0};
  bool converged = false;
  bool no_crossing_low = false;
  bool no_crossing_high = false;
  std::vector<BoundsPoint> trace;
};

ViolationResult violation_interval(const Lattice& lattice, const DimerCovering& covering,
                                   int class_id, const SolverConfig& solver,
                                   const CriticalConfig& config);

// Both bounds on a grid of couplings, ordered by epsilon.
std::vector<BoundsPoint> sweep(const Lattice& lattice, const DimerCovering& covering,
                               std::vector<double> epsilons, const SolverConfig& solver);

}  // namespace dimerbell
