#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mcpp/errors.hpp"
#include "mcpp/stc.hpp"
#include "oracles.hpp"

using namespace mcpp;

namespace {

Region full(int nx, int ny) {
  Region r{nx, ny, {}};
  for (int k = 0; k < nx * ny; ++k) r.nodes.push_back(k);
  return r;
}

std::set<std::pair<int, int>> edge_set(const SpanningTree& t) {
  return {t.edges.begin(), t.edges.end()};
}

int scheme_turns(const Region& r, TreeScheme s) {
  const int start = subcell_of(r.nx, r.nodes.front(), 0);
  return count_turns(circumnavigate(build_mst(r, s), start));
}

constexpr GeoPoint kRef{40.6, 22.9};

}  // namespace

TEST(SpanningTree, CombShapesOnThreeByThree) {
  const auto r = full(3, 3);
  const std::set<std::pair<int, int>> upper{{0, 3}, {3, 6}, {1, 4}, {4, 7}, {2, 5}, {5, 8}, {6, 7}, {7, 8}};
  EXPECT_EQ(edge_set(build_mst(r, TreeScheme::Upper)), upper);
  const std::set<std::pair<int, int>> lower{{0, 3}, {3, 6}, {1, 4}, {4, 7}, {2, 5}, {5, 8}, {0, 1}, {1, 2}};
  EXPECT_EQ(edge_set(build_mst(r, TreeScheme::Lower)), lower);
  const std::set<std::pair<int, int>> right{{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}, {2, 5}, {5, 8}};
  EXPECT_EQ(edge_set(build_mst(r, TreeScheme::Right)), right);
  const std::set<std::pair<int, int>> left{{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}, {0, 3}, {3, 6}};
  EXPECT_EQ(edge_set(build_mst(r, TreeScheme::Left)), left);
}

TEST(SpanningTree, SingleNodeAndErrors) {
  const Region one{4, 4, {5}};
  EXPECT_TRUE(build_mst(one, TreeScheme::Upper).edges.empty());
  EXPECT_THROW(build_mst(Region{4, 4, {}}, TreeScheme::Upper), ContractViolation);
  EXPECT_THROW(build_mst(Region{4, 4, {0, 2}}, TreeScheme::Left), ContractViolation);
}

TEST(SpanningTree, RandomRegionsAreSpanningTrees) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> side(1, 9);
  for (int k = 0; k < 200; ++k) {
    const auto r = oracle::random_region(rng, side(rng), side(rng), 0.3);
    for (auto s : kAllSchemes) {
      const auto t = build_mst(r, s);
      ASSERT_TRUE(oracle::is_spanning_tree(r, t.edges)) << k;
    }
  }
}

TEST(Circumnavigation, SmallestTours) {
  const Region one{1, 1, {0}};
  const auto t1 = circumnavigate(build_mst(one, TreeScheme::Upper), 0);
  EXPECT_EQ(t1.cells.size(), 4u);
  EXPECT_EQ(count_turns(t1), 4);
  EXPECT_TRUE(oracle::visits_each_subcell_once(one, t1));

  const Region two{2, 1, {0, 1}};
  const auto t2 = circumnavigate(build_mst(two, TreeScheme::Upper), 0);
  EXPECT_EQ(t2.cells.size(), 8u);
  EXPECT_EQ(count_turns(t2), 4);
  EXPECT_EQ(t2.cells.front(), 0);
  EXPECT_TRUE(oracle::visits_each_subcell_once(two, t2));
}

TEST(Circumnavigation, ClockwiseAndStartsWhereAsked) {
  const Region two{2, 1, {0, 1}};
  // sub-cell lattice is 4 wide; from the SW corner a clockwise loop heads north
  const auto t = circumnavigate(build_mst(two, TreeScheme::Upper), 0);
  EXPECT_EQ(t.cells[1], 4);
  const auto r = full(3, 2);
  for (int sc : {0, 5, 11, 18, 23}) {
    EXPECT_EQ(circumnavigate(build_mst(r, TreeScheme::Lower), sc).cells.front(), sc);
  }
}

TEST(Circumnavigation, RandomRegionsVisitEachSubcellOnce) {
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<int> side(1, 8);
  for (int k = 0; k < 300; ++k) {
    const auto r = oracle::random_region(rng, side(rng), side(rng), 0.35);
    std::uniform_int_distribution<std::size_t> pick(0, r.nodes.size() - 1);
    std::uniform_int_distribution<int> quad(0, 3);
    const int start = subcell_of(r.nx, r.nodes[pick(rng)], quad(rng));
    for (auto s : kAllSchemes) {
      const auto t = circumnavigate(build_mst(r, s), start);
      ASSERT_TRUE(oracle::visits_each_subcell_once(r, t)) << k;
      ASSERT_EQ(t.cells.front(), start);
      ASSERT_EQ(count_turns(t), oracle::turns_by_direction(t)) << k;
    }
  }
}

TEST(RegionPath, PicksFewestTurnsAndKeepsLength) {
  std::mt19937_64 rng(63);
  std::uniform_int_distribution<int> side(2, 10);
  for (int k = 0; k < 100; ++k) {
    const auto r = oracle::random_region(rng, side(rng), side(rng), 0.25);
    const auto g = oracle::bare_grid(r.nx, r.ny, 7.5);
    const int start = r.nodes[r.nodes.size() / 2];
    const auto p = plan_region_path(g, r.nodes, start, g.center(start), kRef, 2);
    int best = 1 << 30;
    for (auto s : kAllSchemes) {
      const auto t = circumnavigate(build_mst(r, s), p.subcells.front());
      best = std::min(best, count_turns(t));
    }
    EXPECT_EQ(p.turns, best);
    EXPECT_EQ(p.uav, 2);
    EXPECT_DOUBLE_EQ(p.length, 4.0 * r.nodes.size() * 7.5);
    EXPECT_EQ(p.subcells.size(), 4 * r.nodes.size());
    ASSERT_GE(p.waypoints_ned.size(), 5u);
    EXPECT_EQ(p.waypoints_ned.front(), p.waypoints_ned.back());
    EXPECT_EQ(p.waypoints_wgs84.size(), p.waypoints_ned.size());
    double len = 0.0;
    for (std::size_t w = 1; w < p.waypoints_ned.size(); ++w) {
      const auto a = p.waypoints_ned[w - 1], b = p.waypoints_ned[w];
      EXPECT_TRUE(a.x == b.x || a.y == b.y);
      len += std::abs(a.x - b.x) + std::abs(a.y - b.y);
    }
    EXPECT_NEAR(len, p.length, 1e-9);
  }
}

TEST(RegionPath, TwentyFiveNodesAndStartHint) {
  const auto r = full(5, 5);
  const auto g = oracle::bare_grid(5, 5, 4.0);
  const NedPoint hint{g.d_n * 2 + 7.9, g.d_n * 2 + 0.1};  // SE quadrant of the middle node
  const auto p = plan_region_path(g, r.nodes, 12, hint, kRef, 0);
  EXPECT_DOUBLE_EQ(p.length, 100.0 * 4.0);
  EXPECT_EQ(p.subcells.front(), subcell_of(5, 12, 1));
  EXPECT_THROW(plan_region_path(g, std::vector<int>{0, 1}, 12, hint, kRef, 0), ContractViolation);
}

TEST(RegionPath, SchemeChoiceMattersOnElongatedRegions) {
  // 7 x 6 rectangle: the four schemes differ only slightly
  const auto r76 = full(7, 6);
  std::vector<int> t76;
  for (auto s : kAllSchemes) t76.push_back(scheme_turns(r76, s));
  const auto [lo76, hi76] = std::minmax_element(t76.begin(), t76.end());
  EXPECT_EQ(*lo76, 24);
  EXPECT_EQ(*hi76, 28);
  // 12 x 4: teeth across the short side need far fewer turns
  const auto r124 = full(12, 4);
  std::vector<int> t124;
  for (auto s : kAllSchemes) t124.push_back(scheme_turns(r124, s));
  const auto [lo, hi] = std::minmax_element(t124.begin(), t124.end());
  EXPECT_GE(static_cast<double>(*hi) / *lo, 1.5);
}
