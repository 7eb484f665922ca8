#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mcpp/errors.hpp"
#include "mcpp/grid.hpp"
#include "oracles.hpp"

using namespace mcpp;

TEST(Grid, NodeSpacing) {
  EXPECT_EQ(node_spacing(20.0), 40.0);
  EXPECT_EQ(node_spacing(0.5), 1.0);
  EXPECT_EQ(node_spacing(13.7) / 2.0, 13.7);
  EXPECT_THROW(node_spacing(0.0), InputDomainError);
  EXPECT_THROW(node_spacing(-1.0), InputDomainError);
}

TEST(Grid, AugmentedBoxOfAlignedSquare) {
  const auto sq = Polygon::make(oracle::rect(0, 0, 100, 100));
  const auto aug = augmented_box(sq, 20.0);
  EXPECT_DOUBLE_EQ(aug.box.width(), 140.0);
  EXPECT_DOUBLE_EQ(aug.box.height(), 140.0);
  EXPECT_EQ(aug.nx, 7);
  EXPECT_EQ(aug.ny, 7);
}

TEST(Grid, AugmentedBoxContainsAndIsAligned) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 50; ++k) {
    const auto roi = oracle::random_roi(rng, 90.0, 1);
    const double d_n = 17.0;
    const auto aug = augmented_box(roi, d_n);
    EXPECT_TRUE(aug.box.contains(bounding_box(roi)));
    EXPECT_GE(aug.box.area(), polygon_area(roi));
    EXPECT_NEAR(aug.box.width(), aug.nx * d_n, 1e-9);
    EXPECT_NEAR(std::remainder(aug.box.x_min, d_n), 0.0, 1e-9);
    EXPECT_NEAR(std::remainder(aug.box.y_min, d_n), 0.0, 1e-9);
  }
}

TEST(Grid, SquareBetterCoverageHas25FreeNodes) {
  const auto sq = Polygon::make(oracle::rect(0, 0, 100, 100));
  const auto g = build_grid(sq, {}, 10.0, LabelMode::BetterCoverage);
  EXPECT_EQ(g.free_count(), 25);
  EXPECT_EQ(g.nominal_dims(), std::make_pair(5, 5));
  const auto s = build_grid(sq, {}, 10.0, LabelMode::StrictInPoly);
  EXPECT_EQ(s.free_count(), 25);
}

TEST(Grid, StrictModeDropsNodesWhoseSubcellsLeave) {
  const auto sq = Polygon::make(oracle::rect(0, 0, 94, 94));
  EXPECT_EQ(build_grid(sq, {}, 10.0, LabelMode::BetterCoverage).free_count(), 25);
  EXPECT_EQ(build_grid(sq, {}, 10.0, LabelMode::StrictInPoly).free_count(), 16);
}

TEST(Grid, LabelsMatchBruteForceRasterizer) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> sh(0, 20), th(0, 90);
  for (int k = 0; k < 25; ++k) {
    const auto roi = oracle::random_roi(rng, 120.0, 3);
    const Placement pl{sh(rng), sh(rng), th(rng)};
    for (auto mode : {LabelMode::StrictInPoly, LabelMode::BetterCoverage}) {
      const auto g = build_grid(roi, pl, 10.0, mode);
      const auto moved = transform_polygon(roi, pl, g.pivot);
      for (int n = 0; n < g.nx * g.ny; ++n) {
        std::vector<NedPoint> probes;
        if (mode == LabelMode::BetterCoverage) {
          probes.push_back(g.center(n));
        } else {
          for (int q = 0; q < 4; ++q) probes.push_back(g.subcell_center(n, q));
        }
        bool near_edge = false, inside = true;
        for (const auto& p : probes) {
          near_edge |= oracle::edge_distance(p, moved) < 1e-9;
          inside &= oracle::inside_polygon_upward(p, moved);
        }
        if (near_edge) continue;
        ASSERT_EQ(g.states[n] == NodeState::FreeSpace, inside) << k << " node " << n;
      }
    }
  }
}

TEST(Grid, StrictIsSubsetOfBetterAndDeterministic) {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 20; ++k) {
    const auto roi = oracle::random_roi(rng, 100.0, 2);
    const Placement pl{3.0, 7.0, 21.0};
    const auto s = build_grid(roi, pl, 8.0, LabelMode::StrictInPoly);
    const auto b = build_grid(roi, pl, 8.0, LabelMode::BetterCoverage);
    for (std::size_t n = 0; n < s.states.size(); ++n) {
      if (s.states[n] == NodeState::FreeSpace) EXPECT_EQ(b.states[n], NodeState::FreeSpace);
    }
    const auto moved = transform_polygon(roi, pl, s.pivot);
    const auto aug = augmented_box(moved, 16.0);
    EXPECT_EQ(label_nodes(moved, aug, 8.0, LabelMode::StrictInPoly, false),
              label_nodes(moved, aug, 8.0, LabelMode::StrictInPoly, true));
    EXPECT_EQ(s.states, build_grid(roi, pl, 8.0, LabelMode::StrictInPoly).states);
  }
}

TEST(Grid, UavSnapping) {
  const auto sq = Polygon::make(oracle::rect(0, 0, 100, 100));
  const std::vector<NedPoint> uavs{{12, 8}, {-50, 200}};
  const auto g = build_grid(sq, {}, 10.0, LabelMode::StrictInPoly, uavs);
  ASSERT_EQ(g.uav_cells.size(), 2u);
  const auto c0 = g.center(g.uav_cells[0].node);
  EXPECT_DOUBLE_EQ(c0.x, 10.0);
  EXPECT_DOUBLE_EQ(c0.y, 10.0);
  const auto c1 = g.center(g.uav_cells[1].node);
  EXPECT_DOUBLE_EQ(c1.x, 10.0);
  EXPECT_DOUBLE_EQ(c1.y, 90.0);
  EXPECT_EQ(g.states[g.uav_cells[0].node], NodeState::Uav);
  EXPECT_EQ(g.free_count(), 25);
  const std::vector<NedPoint> clash{{10, 10}, {11, 11}};
  EXPECT_THROW(build_grid(sq, {}, 10.0, LabelMode::StrictInPoly, clash), FleetConfigurationError);
}

TEST(Grid, SliverIsInfeasible) {
  const auto strip = Polygon::make(oracle::rect(0, 0, 400, 1));
  EXPECT_THROW(build_grid(strip, {}, 40.0, LabelMode::StrictInPoly), InfeasibleDiscretization);
  const auto sq = Polygon::make(oracle::rect(0, 0, 100, 100));
  EXPECT_THROW(build_grid(sq, {25, 0, 0}, 10.0, LabelMode::StrictInPoly), InputDomainError);
}

TEST(Grid, PgmDump) {
  const auto sq = Polygon::make(oracle::rect(0, 0, 100, 100));
  const std::vector<NedPoint> uavs{{50, 50}};
  const auto g = build_grid(sq, {}, 10.0, LabelMode::StrictInPoly, uavs);
  std::ostringstream out;
  write_grid_pgm(g, out);
  const auto s = out.str();
  EXPECT_EQ(s.rfind("P5\n7 7\n255\n", 0), 0u);
  EXPECT_EQ(s.size(), std::string("P5\n7 7\n255\n").size() + 49);
  EXPECT_EQ(std::count(s.begin(), s.end(), static_cast<char>(128)), 24);
  EXPECT_EQ(std::count(s.begin(), s.end(), static_cast<char>(255)), 1);
}
