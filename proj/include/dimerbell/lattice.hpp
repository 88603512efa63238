#pragma once

#include <string>
#include <vector>

namespace dimerbell {

// Boundary identification of the n x n square grid.
//   Torus: both directions wrap periodically.
//   Klein: vertical direction wraps periodically; the horizontal wrap glues
//          column n-1 to column 0 with the row order reversed, so the right
//          neighbor of (i, n-1) is (n-1-i, 0).
enum class Boundary { Torus, Klein };

enum class Direction { Up, Down, Left, Right };
enum class Orientation { Horizontal, Vertical };

Direction opposite(Direction d);
std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

struct Edge {
  int a = 0;  // endpoints with a < b in row-major site order
  int b = 0;
  Orientation orientation = Orientation::Horizontal;
  bool wrap = false;  // crosses the identified seam
};

// Immutable n x n lattice. Sites are indexed row-major (site = row*n + col,
// rows increase downward). Every site has degree 4 and there are 2n^2 edges;
// n >= 3 so that wrapped edges never duplicate bulk edges.
class Lattice {
 public:
  Lattice(int n, Boundary boundary);

  int n() const { return n_; }
  Boundary boundary() const { return boundary_; }
  int num_sites() const { return n_ * n_; }

  // Edges sorted lexicographically by (a, b).
  const std::vector<Edge>& edges() const { return edges_; }

  int site(int row, int col) const { return row * n_ + col; }
  int row(int s) const { return s / n_; }
  int col(int s) const { return s % n_; }

  int neighbor(int s, Direction d) const;

  // Index into edges() of the unordered pair {a, b}, or -1 if not adjacent.
  int edge_index(int a, int b) const;

  // The 4 incident edge indices of a site, ascending.
  const std::vector<int>& incident_edges(int s) const { return incident_[s]; }

 private:
  int n_;
  Boundary boundary_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

}  // namespace dimerbell
