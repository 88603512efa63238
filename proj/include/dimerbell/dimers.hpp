#pragma once

#include <cstdint>
#include <vector>

#include "dimerbell/lattice.hpp"

namespace dimerbell {

// A maximum dimer covering: floor(n^2/2) pairwise disjoint edges. For odd n
// exactly one site (the monomer) is left uncovered; for even n the covering is
// perfect. Edge indices refer to Lattice::edges() and are kept sorted.
struct DimerCovering {
  std::vector<int> edges;

  bool operator==(const DimerCovering& o) const { return edges == o.edges; }
  bool operator<(const DimerCovering& o) const { return edges < o.edges; }
};

// Enumerates every maximum dimer covering by backtracking on the lowest
// uncovered site. Result is sorted lexicographically and duplicate-free.
// Throws std::runtime_error if the count would exceed `max_count`.
std::vector<DimerCovering> enumerate_maximal(const Lattice& lattice,
                                             std::uint64_t max_count = 20'000'000);

// Number of dimers in a maximum covering of an n x n grid.
inline int max_dimer_count(int n) { return (n * n) / 2; }

// Lattice automorphisms used to group coverings into symmetry classes. The
// first five act on the torus, the last two on the Klein bottle (whose seam
// breaks plain horizontal translation and the 90-degree rotation).
enum class SymmetryOp {
  RightShift,        // torus: (r, c) -> (r, c-1 mod n) image convention below
  UpShift,           // torus: (r, c) -> (r+1 mod n, c)
  VerticalMirror,    // torus: (r, c) -> (r, n-1-c)
  HorizontalMirror,  // torus: (r, c) -> (n-1-r, c)
  Rotation90,        // torus: (r, c) -> (c, n-1-r)
  KBRightShift,      // klein: shift across the seam with a row flip
  KBVerticalMirror,  // klein: mirror compatible with the seam identification
};

// Generating set for the symmetry group of the given boundary.
std::vector<SymmetryOp> generators(Boundary boundary);

// Site permutation pi for `op` on an n x n grid: perm[s] is the image of s.
std::vector<int> site_permutation(SymmetryOp op, int n);

// Applies `op` to a covering: every dimer {a,b} maps to {pi(a), pi(b)}.
// Throws std::invalid_argument if the op does not act on lattice's boundary,
// std::logic_error if an image pair is not a lattice edge (the permutation
// would not be an automorphism).
DimerCovering apply_symmetry(const Lattice& lattice, const DimerCovering& covering,
                             SymmetryOp op);

// FNV-1a over the sorted edge indices; stable across runs.
std::uint64_t covering_hash(const DimerCovering& covering);

// Orbit of the symmetry group acting on coverings. `representative` is the
// lexicographically smallest member; `members` are indices into the full
// enumeration, sorted ascending.
struct CoveringClass {
  int id = 0;
  DimerCovering representative;
  std::vector<int> members;
};

// Partitions `coverings` (the full sorted enumeration) into symmetry classes
// by orbit DFS under generators(boundary). Throws std::logic_error if a
// symmetry image is missing from `coverings`, i.e. the enumeration and the
// group action disagree.
std::vector<CoveringClass> classify(const Lattice& lattice,
                                    const std::vector<DimerCovering>& coverings);

// Multiset of class sizes, ascending; convenient for summary output.
std::vector<int> class_stats(const std::vector<CoveringClass>& classes);

}  // namespace dimerbell
