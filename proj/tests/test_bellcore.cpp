#include "dimerbell/bellcore.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace db = dimerbell;

namespace {

db::StrategyAssignment random_assignment(int num_sites, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  db::StrategyAssignment s(num_sites);
  for (auto& v : s) v = static_cast<std::uint8_t>(pick(rng));
  return s;
}

}  // namespace

TEST(ChshLink, MatchesResponseFunctionDefinition) {
  // Independent re-derivation from the response functions themselves.
  const std::function<int(int)> phi[4] = {
      [](int) { return 0; },
      [](int x) { return x; },
      [](int x) { return 1 - x; },
      [](int) { return 1; },
  };
  auto obs = [&](int s, int x) { return phi[s](x) == 0 ? 1 : -1; };
  for (int sa = 0; sa < 4; ++sa) {
    for (int sb = 0; sb < 4; ++sb) {
      const int expected = obs(sa, 0) * obs(sb, 0) + obs(sa, 0) * obs(sb, 1) +
                           obs(sa, 1) * obs(sb, 0) - obs(sa, 1) * obs(sb, 1);
      EXPECT_EQ(db::chsh_link_value(sa, sb), expected) << sa << "," << sb;
      EXPECT_EQ(db::strategy_observable(sa, 0), obs(sa, 0));
      EXPECT_EQ(db::strategy_observable(sa, 1), obs(sa, 1));
    }
  }
}

TEST(ChshLink, AlwaysPlusMinusTwoAndSymmetric) {
  for (int sa = 0; sa < 4; ++sa) {
    for (int sb = 0; sb < 4; ++sb) {
      const int v = db::chsh_link_value(sa, sb);
      EXPECT_EQ(std::abs(v), 2);
      EXPECT_EQ(v, db::chsh_link_value(sb, sa));
    }
  }
}

TEST(ChshLink, SpotValues) {
  EXPECT_EQ(db::chsh_link_value(0, 0), 2);
  EXPECT_EQ(db::chsh_link_value(0, 3), -2);
  EXPECT_EQ(db::chsh_link_value(3, 3), 2);
}

TEST(EdgeWeight, DimerStrengthenedRestWeakened) {
  EXPECT_DOUBLE_EQ(db::edge_weight(true, 0.25), 1.25);
  EXPECT_DOUBLE_EQ(db::edge_weight(false, 0.25), 0.75);
  EXPECT_DOUBLE_EQ(db::edge_weight(true, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(db::edge_weight(false, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(db::edge_weight(true, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(db::edge_weight(false, 0.0), 1.0);
}

TEST(DimerMask, MarksExactlyCoveringEdges) {
  db::Lattice lat(3, db::Boundary::Torus);
  auto covs = db::enumerate_maximal(lat);
  auto mask = db::dimer_mask(lat, covs[0]);
  ASSERT_EQ(mask.size(), lat.edges().size());
  int marked = 0;
  for (bool m : mask) marked += m ? 1 : 0;
  EXPECT_EQ(marked, static_cast<int>(covs[0].edges.size()));
  for (int ei : covs[0].edges) EXPECT_TRUE(mask[ei]);
}

TEST(BellValue, UniformAssignmentAtEpsZero) {
  // All sites on strategy 0: every link contributes +2, weights are all 1.
  db::Lattice lat(3, db::Boundary::Torus);
  auto covs = db::enumerate_maximal(lat);
  db::StrategyAssignment all_zero(lat.num_sites(), 0);
  EXPECT_DOUBLE_EQ(db::bell_value(lat, covs[0], all_zero, 0.0), 2.0 * lat.edges().size());
}

TEST(BellValue, MatchesSubtotalsDecomposition) {
  std::mt19937_64 rng(2024);
  for (auto b : {db::Boundary::Torus, db::Boundary::Klein}) {
    db::Lattice lat(3, b);
    auto covs = db::enumerate_maximal(lat);
    for (int trial = 0; trial < 20; ++trial) {
      auto s = random_assignment(lat.num_sites(), rng);
      const auto& cov = covs[trial % covs.size()];
      auto sub = db::chsh_subtotals(lat, cov, s);
      // Subtotals are sums of +-2 terms, hence even integers.
      EXPECT_EQ(sub.dimer % 2, 0);
      EXPECT_EQ(sub.non_dimer % 2, 0);
      for (double eps : {0.0, 0.3, 0.5, 1.0, 1.7}) {
        EXPECT_NEAR(db::bell_value(lat, cov, s, eps), sub.value(eps), 1e-12);
      }
    }
  }
}

TEST(BellValue, AffineInEps) {
  // Three-point collinearity: v(0.5) must be the average of v(0) and v(1).
  std::mt19937_64 rng(7);
  db::Lattice lat(4, db::Boundary::Klein);
  auto covs = db::enumerate_maximal(lat);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_assignment(lat.num_sites(), rng);
    const auto& cov = covs[(trial * 17) % covs.size()];
    const double v0 = db::bell_value(lat, cov, s, 0.0);
    const double v1 = db::bell_value(lat, cov, s, 1.0);
    const double vh = db::bell_value(lat, cov, s, 0.5);
    EXPECT_NEAR(2.0 * vh, v0 + v1, 1e-12);
  }
}

TEST(BellValue, CovariantUnderSymmetry) {
  // Relabeling sites by a lattice symmetry and permuting the strategy
  // assignment the same way leaves the Bell value unchanged.
  std::mt19937_64 rng(99);
  for (auto b : {db::Boundary::Torus, db::Boundary::Klein}) {
    db::Lattice lat(3, b);
    auto covs = db::enumerate_maximal(lat);
    for (auto op : db::generators(b)) {
      auto perm = db::site_permutation(op, lat.n());
      for (int trial = 0; trial < 5; ++trial) {
        auto s = random_assignment(lat.num_sites(), rng);
        const auto& cov = covs[(trial * 31) % covs.size()];
        auto cov_img = db::apply_symmetry(lat, cov, op);
        db::StrategyAssignment s_img(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) s_img[perm[i]] = s[i];
        for (double eps : {0.0, 0.8, 1.25}) {
          EXPECT_NEAR(db::bell_value(lat, cov, s, eps),
                      db::bell_value(lat, cov_img, s_img, eps), 1e-12);
        }
      }
    }
  }
}

TEST(BellValue, RejectsMalformedInput) {
  db::Lattice lat(3, db::Boundary::Torus);
  auto covs = db::enumerate_maximal(lat);
  db::StrategyAssignment too_short(lat.num_sites() - 1, 0);
  EXPECT_THROW(db::bell_value(lat, covs[0], too_short, 0.5), std::invalid_argument);
  db::StrategyAssignment bad_range(lat.num_sites(), 0);
  bad_range[4] = 7;
  EXPECT_THROW(db::bell_value(lat, covs[0], bad_range, 0.5), std::invalid_argument);
}
