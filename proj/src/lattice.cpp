#include "dimerbell/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace dimerbell {

Direction opposite(Direction d) {
  switch (d) {
    case Direction::Up:
      return Direction::Down;
    case Direction::Down:
      return Direction::Up;
    case Direction::Left:
      return Direction::Right;
    case Direction::Right:
      return Direction::Left;
  }
  throw std::logic_error("invalid direction");
}

std::string to_string(Boundary b) {
  return b == Boundary::Torus ? "torus" : "klein";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "torus") return Boundary::Torus;
  if (s == "klein") return Boundary::Klein;
  throw std::invalid_argument("unknown boundary '" + s + "' (expected torus or klein)");
}

Lattice::Lattice(int n, Boundary boundary) : n_(n), boundary_(boundary) {
  if (n < 3) {
    throw std::invalid_argument("lattice side must be >= 3, got " + std::to_string(n) +
                                " (smaller grids make wrapped edges duplicate bulk edges)");
  }

  edges_.reserve(2 * n * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int s = site(r, c);
      const int right = neighbor(s, Direction::Right);
      const int down = neighbor(s, Direction::Down);
      edges_.push_back({std::min(s, right), std::max(s, right), Orientation::Horizontal,
                        c == n - 1});
      edges_.push_back({std::min(s, down), std::max(s, down), Orientation::Vertical,
                        r == n - 1});
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });

  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].a == edges_[i].a && edges_[i - 1].b == edges_[i].b) {
      throw std::logic_error("duplicate edge in lattice construction");
    }
  }

  incident_.assign(num_sites(), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    incident_[edges_[e].a].push_back(static_cast<int>(e));
    incident_[edges_[e].b].push_back(static_cast<int>(e));
  }
  for (const auto& inc : incident_) {
    if (inc.size() != 4) throw std::logic_error("site degree != 4 in lattice construction");
  }
}

int Lattice::neighbor(int s, Direction d) const {
  const int r = row(s);
  const int c = col(s);
  switch (d) {
    case Direction::Up:
      return site((r - 1 + n_) % n_, c);
    case Direction::Down:
      return site((r + 1) % n_, c);
    case Direction::Left:
      if (boundary_ == Boundary::Klein && c == 0) return site(n_ - 1 - r, n_ - 1);
      return site(r, (c - 1 + n_) % n_);
    case Direction::Right:
      if (boundary_ == Boundary::Klein && c == n_ - 1) return site(n_ - 1 - r, 0);
      return site(r, (c + 1) % n_);
  }
  throw std::logic_error("invalid direction");
}

int Lattice::edge_index(int a, int b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                             [](const Edge& e, const std::pair<int, int>& key) {
                               return e.a != key.first ? e.a < key.first : e.b < key.second;
                             });
  if (it == edges_.end() || it->a != a || it->b != b) return -1;
  return static_cast<int>(it - edges_.begin());
}

}  // namespace dimerbell
