#include "dimerbell/dimers.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dimerbell {

namespace {

void enumerate_rec(const Lattice& lattice, std::vector<bool>& covered, int monomer_budget,
                   std::vector<int>& chosen, std::vector<DimerCovering>& out,
                   std::uint64_t max_count) {
  const int sites = lattice.num_sites();
  int s = 0;
  while (s < sites && covered[s]) ++s;
  if (s == sites) {
    if (out.size() >= max_count) {
      throw std::runtime_error("covering enumeration exceeded cap of " +
                               std::to_string(max_count));
    }
    DimerCovering c{chosen};
    std::sort(c.edges.begin(), c.edges.end());
    out.push_back(std::move(c));
    return;
  }

  // Cover the lowest uncovered site with each incident edge whose other end
  // is still free...
  covered[s] = true;
  for (int e : lattice.incident_edges(s)) {
    const Edge& edge = lattice.edges()[e];
    const int other = edge.a == s ? edge.b : edge.a;
    if (covered[other]) continue;
    covered[other] = true;
    chosen.push_back(e);
    enumerate_rec(lattice, covered, monomer_budget, chosen, out, max_count);
    chosen.pop_back();
    covered[other] = false;
  }
  // ...or leave it as a monomer if the budget allows.
  if (monomer_budget > 0) {
    enumerate_rec(lattice, covered, monomer_budget - 1, chosen, out, max_count);
  }
  covered[s] = false;
}

}  // namespace

std::vector<DimerCovering> enumerate_maximal(const Lattice& lattice, std::uint64_t max_count) {
  const int sites = lattice.num_sites();
  const int monomers = sites - 2 * max_dimer_count(lattice.n());
  std::vector<bool> covered(sites, false);
  std::vector<int> chosen;
  chosen.reserve(max_dimer_count(lattice.n()));
  std::vector<DimerCovering> out;
  enumerate_rec(lattice, covered, monomers, chosen, out, max_count);
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::logic_error("duplicate covering produced by enumeration");
  }
  return out;
}

std::vector<SymmetryOp> generators(Boundary boundary) {
  if (boundary == Boundary::Torus) {
    return {SymmetryOp::RightShift, SymmetryOp::UpShift, SymmetryOp::VerticalMirror,
            SymmetryOp::HorizontalMirror, SymmetryOp::Rotation90};
  }
  return {SymmetryOp::KBRightShift, SymmetryOp::KBVerticalMirror};
}

std::vector<int> site_permutation(SymmetryOp op, int n) {
  std::vector<int> perm(n * n);
  auto site = [n](int r, int c) { return r * n + c; };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      int ir = r, ic = c;
      switch (op) {
        case SymmetryOp::RightShift:
          ic = (c - 1 + n) % n;
          break;
        case SymmetryOp::UpShift:
          ir = (r + 1) % n;
          break;
        case SymmetryOp::VerticalMirror:
          ic = n - 1 - c;
          break;
        case SymmetryOp::HorizontalMirror:
          ir = n - 1 - r;
          break;
        case SymmetryOp::Rotation90:
          ir = c;
          ic = n - 1 - r;
          break;
        case SymmetryOp::KBRightShift:
          // Shifting left by one column crosses the seam from column 0; the
          // seam identification flips the row there.
          if (c >= 1) {
            ic = c - 1;
          } else {
            ir = n - 1 - r;
            ic = n - 1;
          }
          break;
        case SymmetryOp::KBVerticalMirror:
          // Mirror about column 0; columns c and n-c swap for c >= 1, while
          // the fixed column 0 picks up the seam's row flip.
          if (c == 0) {
            ir = n - 1 - r;
            ic = 0;
          } else {
            ic = n - c;
          }
          break;
      }
      perm[site(r, c)] = site(ir, ic);
    }
  }
  return perm;
}

namespace {

bool torus_op(SymmetryOp op) {
  switch (op) {
    case SymmetryOp::KBRightShift:
    case SymmetryOp::KBVerticalMirror:
      return false;
    default:
      return true;
  }
}

}  // namespace

DimerCovering apply_symmetry(const Lattice& lattice, const DimerCovering& covering,
                             SymmetryOp op) {
  if (torus_op(op) != (lattice.boundary() == Boundary::Torus)) {
    throw std::invalid_argument("symmetry op does not act on this boundary");
  }
  const auto perm = site_permutation(op, lattice.n());
  DimerCovering image;
  image.edges.reserve(covering.edges.size());
  for (int e : covering.edges) {
    const Edge& edge = lattice.edges()[e];
    const int ie = lattice.edge_index(perm[edge.a], perm[edge.b]);
    if (ie < 0) {
      throw std::logic_error("symmetry image is not a lattice edge");
    }
    image.edges.push_back(ie);
  }
  std::sort(image.edges.begin(), image.edges.end());
  return image;
}

std::uint64_t covering_hash(const DimerCovering& covering) {
  std::uint64_t h = 14695981039346656037ull;
  for (int e : covering.edges) {
    for (int byte = 0; byte < 4; ++byte) {
      h ^= static_cast<std::uint64_t>((e >> (8 * byte)) & 0xff);
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::vector<CoveringClass> classify(const Lattice& lattice,
                                    const std::vector<DimerCovering>& coverings) {
  const auto gens = generators(lattice.boundary());
  auto find_index = [&coverings](const DimerCovering& c) -> int {
    auto it = std::lower_bound(coverings.begin(), coverings.end(), c);
    if (it == coverings.end() || !(*it == c)) return -1;
    return static_cast<int>(it - coverings.begin());
  };

  std::vector<CoveringClass> classes;
  std::vector<bool> seen(coverings.size(), false);
  for (std::size_t seed = 0; seed < coverings.size(); ++seed) {
    if (seen[seed]) continue;
    CoveringClass cls;
    cls.id = static_cast<int>(classes.size());
    std::vector<int> stack{static_cast<int>(seed)};
    seen[seed] = true;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      cls.members.push_back(cur);
      for (SymmetryOp op : gens) {
        const DimerCovering image = apply_symmetry(lattice, coverings[cur], op);
        const int idx = find_index(image);
        if (idx < 0) {
          throw std::logic_error(
              "symmetry image of an enumerated covering is not in the enumeration");
        }
        if (!seen[idx]) {
          seen[idx] = true;
          stack.push_back(idx);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    // Seeds scan ascending over a sorted list, so the seed is the lex-least
    // member of its orbit.
    cls.representative = coverings[cls.members.front()];
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<int> class_stats(const std::vector<CoveringClass>& classes) {
  std::vector<int> sizes;
  sizes.reserve(classes.size());
  for (const auto& c : classes) sizes.push_back(static_cast<int>(c.members.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace dimerbell
