#include "dimerbell/lattice.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace db = dimerbell;

TEST(Lattice, RejectsTooSmall) {
  EXPECT_THROW(db::Lattice(2, db::Boundary::Torus), std::invalid_argument);
  EXPECT_THROW(db::Lattice(0, db::Boundary::Klein), std::invalid_argument);
  EXPECT_THROW(db::Lattice(-1, db::Boundary::Torus), std::invalid_argument);
}

TEST(Lattice, SiteAndEdgeCounts) {
  for (int n : {3, 4, 5}) {
    for (auto b : {db::Boundary::Torus, db::Boundary::Klein}) {
      db::Lattice lat(n, b);
      EXPECT_EQ(lat.num_sites(), n * n);
      EXPECT_EQ(static_cast<int>(lat.edges().size()), 2 * n * n);
    }
  }
}

TEST(Lattice, EverySiteHasDegreeFour) {
  for (int n : {3, 4}) {
    for (auto b : {db::Boundary::Torus, db::Boundary::Klein}) {
      db::Lattice lat(n, b);
      std::vector<int> degree(lat.num_sites(), 0);
      for (const auto& e : lat.edges()) {
        ++degree[e.a];
        ++degree[e.b];
      }
      for (int s = 0; s < lat.num_sites(); ++s) {
        EXPECT_EQ(degree[s], 4) << "n=" << n << " site=" << s;
      }
    }
  }
}

TEST(Lattice, EdgesSortedAndUnique) {
  for (auto b : {db::Boundary::Torus, db::Boundary::Klein}) {
    db::Lattice lat(4, b);
    const auto& edges = lat.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      EXPECT_LT(edges[i].a, edges[i].b);
      if (i > 0) {
        const bool less = edges[i - 1].a < edges[i].a ||
                          (edges[i - 1].a == edges[i].a && edges[i - 1].b < edges[i].b);
        EXPECT_TRUE(less) << "edge list out of order at " << i;
      }
    }
  }
}

TEST(Lattice, TorusNeighborWrap) {
  db::Lattice lat(3, db::Boundary::Torus);
  // Right from the last column wraps to column 0 of the same row.
  EXPECT_EQ(lat.neighbor(lat.site(0, 2), db::Direction::Right), lat.site(0, 0));
  EXPECT_EQ(lat.neighbor(lat.site(1, 2), db::Direction::Right), lat.site(1, 0));
  EXPECT_EQ(lat.neighbor(lat.site(2, 0), db::Direction::Left), lat.site(2, 2));
  // Vertical wrap.
  EXPECT_EQ(lat.neighbor(lat.site(2, 1), db::Direction::Down), lat.site(0, 1));
  EXPECT_EQ(lat.neighbor(lat.site(0, 1), db::Direction::Up), lat.site(2, 1));
}

TEST(Lattice, KleinNeighborSeamFlipsRow) {
  db::Lattice lat(3, db::Boundary::Klein);
  // Crossing the vertical seam mirrors the row index.
  EXPECT_EQ(lat.neighbor(lat.site(0, 2), db::Direction::Right), lat.site(2, 0));
  EXPECT_EQ(lat.neighbor(lat.site(1, 2), db::Direction::Right), lat.site(1, 0));
  EXPECT_EQ(lat.neighbor(lat.site(2, 2), db::Direction::Right), lat.site(0, 0));
  EXPECT_EQ(lat.neighbor(lat.site(0, 0), db::Direction::Left), lat.site(2, 2));
  // Vertical direction stays periodic.
  EXPECT_EQ(lat.neighbor(lat.site(2, 0), db::Direction::Down), lat.site(0, 0));
  EXPECT_EQ(lat.neighbor(lat.site(0, 0), db::Direction::Up), lat.site(2, 0));
  // Interior moves are unaffected.
  EXPECT_EQ(lat.neighbor(lat.site(1, 0), db::Direction::Right), lat.site(1, 1));
}

TEST(Lattice, NeighborInvolution) {
  for (int n : {3, 4, 5}) {
    for (auto b : {db::Boundary::Torus, db::Boundary::Klein}) {
      db::Lattice lat(n, b);
      for (int s = 0; s < lat.num_sites(); ++s) {
        for (auto d : {db::Direction::Up, db::Direction::Down, db::Direction::Left,
                       db::Direction::Right}) {
          const int t = lat.neighbor(s, d);
          EXPECT_EQ(lat.neighbor(t, db::opposite(d)), s)
              << "n=" << n << " s=" << s << " dir=" << static_cast<int>(d);
        }
      }
    }
  }
}

TEST(Lattice, EdgeListMatchesNeighborRelation) {
  for (auto b : {db::Boundary::Torus, db::Boundary::Klein}) {
    db::Lattice lat(4, b);
    std::set<std::pair<int, int>> from_neighbors;
    for (int s = 0; s < lat.num_sites(); ++s) {
      for (auto d : {db::Direction::Right, db::Direction::Down}) {
        int t = lat.neighbor(s, d);
        from_neighbors.insert({std::min(s, t), std::max(s, t)});
      }
    }
    std::set<std::pair<int, int>> from_edges;
    for (const auto& e : lat.edges()) from_edges.insert({e.a, e.b});
    EXPECT_EQ(from_neighbors, from_edges);
  }
}

TEST(Lattice, EdgeIndexRoundTrip) {
  for (auto b : {db::Boundary::Torus, db::Boundary::Klein}) {
    db::Lattice lat(3, b);
    const auto& edges = lat.edges();
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      EXPECT_EQ(lat.edge_index(edges[i].a, edges[i].b), i);
      EXPECT_EQ(lat.edge_index(edges[i].b, edges[i].a), i);
    }
    // Non-adjacent pair: (0,0) and (1,1) share no edge.
    EXPECT_EQ(lat.edge_index(lat.site(0, 0), lat.site(1, 1)), -1);
    EXPECT_EQ(lat.edge_index(0, 0), -1);
  }
}

TEST(Lattice, IncidentEdgesTouchSite) {
  db::Lattice lat(4, db::Boundary::Klein);
  for (int s = 0; s < lat.num_sites(); ++s) {
    auto inc = lat.incident_edges(s);
    EXPECT_EQ(inc.size(), 4u);
    EXPECT_TRUE(std::is_sorted(inc.begin(), inc.end()));
    for (int ei : inc) {
      const auto& e = lat.edges()[ei];
      EXPECT_TRUE(e.a == s || e.b == s);
    }
  }
}

TEST(Lattice, WrapFlagsMarkSeamEdges) {
  db::Lattice lat(3, db::Boundary::Torus);
  int wrap_count = 0;
  for (const auto& e : lat.edges()) wrap_count += e.wrap ? 1 : 0;
  // One wrapping horizontal edge per row plus one wrapping vertical edge per column.
  EXPECT_EQ(wrap_count, 6);
}

TEST(Lattice, BoundaryFromString) {
  EXPECT_EQ(db::boundary_from_string("torus"), db::Boundary::Torus);
  EXPECT_EQ(db::boundary_from_string("klein"), db::Boundary::Klein);
  EXPECT_THROW(db::boundary_from_string("mobius"), std::invalid_argument);
}

TEST(Lattice, ToStringRoundTrip) {
  EXPECT_EQ(db::to_string(db::Boundary::Torus), "torus");
  EXPECT_EQ(db::to_string(db::Boundary::Klein), "klein");
}
