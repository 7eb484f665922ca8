#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mcpp/darp.hpp"
#include "mcpp/errors.hpp"
#include "oracles.hpp"

using namespace mcpp;

namespace {

NodeGrid grid_with(int nx, int ny, std::vector<int> starts, std::vector<int> obstacles = {}) {
  auto g = oracle::bare_grid(nx, ny, 5.0);
  for (int o : obstacles) g.states[o] = NodeState::Obstacle;
  assign_uav_nodes(g, starts);
  return g;
}

void expect_valid(const NodeGrid& g, const RegionAssignment& a) {
  int total = 0;
  for (std::size_t k = 0; k < g.states.size(); ++k) {
    if (g.states[k] == NodeState::Obstacle) {
      EXPECT_EQ(a.owner[k], -1);
    } else {
      EXPECT_GE(a.owner[k], 0);
      ++total;
    }
  }
  int sum = 0;
  for (std::size_t u = 0; u < a.counts.size(); ++u) {
    sum += a.counts[u];
    EXPECT_TRUE(region_connected(a, static_cast<int>(u))) << u;
    EXPECT_EQ(a.owner[a.start_nodes[u]], static_cast<int>(u));
    std::vector<int> nodes;
    for (std::size_t k = 0; k < a.owner.size(); ++k) {
      if (a.owner[k] == static_cast<int>(u)) nodes.push_back(static_cast<int>(k));
    }
    EXPECT_TRUE(oracle::four_connected(nodes, g.nx));
  }
  EXPECT_EQ(sum, total);
  EXPECT_EQ(a.total(), total);
}

}  // namespace

TEST(Darp, SingleUavTakesEverything) {
  const auto g = grid_with(9, 7, {10}, {3, 4, 30});
  const auto a = divide(g, ShareVector::equal(1), {}, 0);
  EXPECT_TRUE(a.converged);
  EXPECT_EQ(a.counts[0], 60);
  expect_valid(g, a);
}

TEST(Darp, EqualSharesOnOpenSquare) {
  const auto g = grid_with(20, 20, {0, 19, 380, 399});
  const auto a = divide(g, ShareVector::equal(4), {}, 0);
  EXPECT_TRUE(a.converged);
  for (int k : a.counts) EXPECT_NEAR(k, 100, 1);
  expect_valid(g, a);
}

TEST(Darp, ProportionalSharesWithObstacles) {
  std::mt19937_64 rng(51);
  std::bernoulli_distribution block(0.08);
  std::vector<int> obstacles;
  for (int k = 0; k < 900; ++k) {
    if (block(rng) && k != 31 && k != 465 && k != 868) obstacles.push_back(k);
  }
  auto g = oracle::bare_grid(30, 30, 5.0);
  for (int o : obstacles) g.states[o] = NodeState::Obstacle;
  const auto comps = free_components(g);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (comps[k] >= 0 && comps[k] != comps[31]) g.states[k] = NodeState::Obstacle;
  }
  ASSERT_EQ(comps[31], comps[465]);
  ASSERT_EQ(comps[31], comps[868]);
  const std::vector<int> starts{31, 465, 868};
  assign_uav_nodes(g, starts);
  const ShareVector sh{{0.15, 0.40, 0.45}};
  const auto a = divide(g, sh, {}, 3);
  const int L = a.total();
  EXPECT_TRUE(a.converged);
  for (int u = 0; u < 3; ++u) {
    EXPECT_LE(std::abs(a.counts[u] - sh.p[u] * L), std::max(1.0, 0.005 * L)) << u;
  }
  expect_valid(g, a);
}

TEST(Darp, ShareTargetsOnFullGrid) {
  const auto g = grid_with(30, 30, {0, 29, 899});
  const ShareVector sh{{0.15, 0.40, 0.45}};
  const auto a = divide(g, sh, {}, 0);
  EXPECT_TRUE(a.converged);
  EXPECT_NEAR(a.counts[0], 135, 4.5);
  EXPECT_NEAR(a.counts[1], 360, 4.5);
  EXPECT_NEAR(a.counts[2], 405, 4.5);
  expect_valid(g, a);
}

TEST(Darp, DeterministicPerSeed) {
  const auto g = grid_with(16, 12, {0, 50, 191}, {20, 21, 22, 40, 41, 42, 100, 101});
  const auto a = divide(g, ShareVector::equal(3), {}, 9);
  const auto b = divide(g, ShareVector::equal(3), {}, 9);
  EXPECT_EQ(a.owner, b.owner);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Darp, CostMatchesFairShareForm) {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<int> k(0, 200), n(1, 8);
  for (int t = 0; t < 100; ++t) {
    const int m = n(rng);
    std::vector<int> counts(m);
    for (auto& c : counts) c = k(rng);
    int L = 0;
    for (int c : counts) L += c;
    const double f = static_cast<double>(L) / m;
    double fair = 0.0;
    for (int c : counts) fair += 0.5 * (c - f) * (c - f);
    EXPECT_NEAR(share_cost(counts, ShareVector::equal(m).p), fair, 1e-9 * (1.0 + fair));
  }
}

TEST(Darp, ToleranceDefault) {
  EXPECT_EQ(default_tolerance(100), 1.0);
  EXPECT_EQ(default_tolerance(900), 4.5);
  EXPECT_EQ(default_tolerance(10000), 50.0);
}

TEST(Darp, ShareVectorValidation) {
  EXPECT_THROW((ShareVector{{0.5, 0.6}}).validate(), InputDomainError);
  EXPECT_THROW((ShareVector{{1.0, 0.0}}).validate(), InputDomainError);
  EXPECT_NO_THROW(ShareVector::equal(7).validate());
}

TEST(Darp, RegionConnectedCases) {
  RegionAssignment a;
  a.nx = 3;
  a.ny = 3;
  a.owner = {0, -1, -1, -1, 1, -1, -1, -1, 1};
  a.start_nodes = {0, 4};
  a.counts = {1, 2};
  EXPECT_TRUE(region_connected(a, 0));
  EXPECT_FALSE(region_connected(a, 1));
  EXPECT_THROW(region_connected(a, 2), InputDomainError);
  EXPECT_THROW(region_connected(a, -1), InputDomainError);
}

TEST(Darp, InfeasibleInputs) {
  // start 0 is walled off by obstacles at 1 and 5
  const auto isolated = grid_with(5, 5, {0, 24}, {1, 5});
  EXPECT_THROW(divide(isolated, ShareVector::equal(2), {}, 0), InfeasiblePartition);
  // a free pocket nobody can reach
  auto g = oracle::bare_grid(5, 5, 5.0);
  for (int o : {13, 17, 19, 23}) g.states[o] = NodeState::Obstacle;
  assign_uav_nodes(g, std::vector<int>{0});
  EXPECT_THROW(divide(g, ShareVector::equal(1), {}, 0), InfeasiblePartition);
}

TEST(Darp, DebugOutputs) {
  const auto g = grid_with(6, 4, {0, 23});
  DarpParams p;
  p.record_trace = true;
  const auto a = divide(g, ShareVector::equal(2), p, 0);
  EXPECT_FALSE(a.trace.empty());
  std::ostringstream csv, ppm;
  write_darp_trace_csv(a.trace, csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "cycle,cost,max_deviation,disconnected");
  write_owner_ppm(a, ppm);
  EXPECT_EQ(ppm.str().rfind("P6\n6 4\n255\n", 0), 0u);
  EXPECT_EQ(ppm.str().size(), std::string("P6\n6 4\n255\n").size() + 72);
}

TEST(Darp, OscillatingCaseStillMeetsShares) {
  // starts picked so that steering alone keeps splitting regions
  std::mt19937_64 rng(1031);
  std::bernoulli_distribution block(0.1);
  auto g = oracle::bare_grid(30, 30, 5.0);
  for (auto& s : g.states) {
    if (block(rng)) s = NodeState::Obstacle;
  }
  const auto comps = free_components(g);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (comps[k] != comps[612]) g.states[k] = NodeState::Obstacle;
  }
  const std::vector<int> starts{612, 476, 773};
  assign_uav_nodes(g, starts);
  const ShareVector sh{{0.15, 0.40, 0.45}};
  const auto a = divide(g, sh, {}, 31);
  const int L = a.total();
  EXPECT_EQ(L, g.free_count());
  EXPECT_TRUE(a.converged);
  for (int u = 0; u < 3; ++u) EXPECT_LE(std::abs(a.counts[u] - sh.p[u] * L), std::max(1.0, 0.005 * L)) << u;
  expect_valid(g, a);
}
