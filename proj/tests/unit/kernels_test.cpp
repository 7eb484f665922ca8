#include <gtest/gtest.h>

#include <random>

#include "mcpp/kernels.hpp"
#include "oracles.hpp"

using namespace mcpp;
using namespace mcpp::kernels;

namespace {

Lattice lattice_over(const Polygon& roi, double side) {
  const auto b = bounding_box(roi);
  return {b.x_min + 0.5 * side, b.y_min + 0.5 * side, side, side,
          static_cast<int>(std::ceil(b.width() / side)), static_cast<int>(std::ceil(b.height() / side))};
}

}  // namespace

TEST(Kernels, MaskParallelMatchesSerial) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 10; ++k) {
    const auto roi = oracle::random_roi(rng, 150.0, 3);
    const auto lat = lattice_over(roi, 1.0);
    EXPECT_EQ(polygon_mask_serial(roi, lat), polygon_mask_parallel(roi, lat));
  }
}

TEST(Kernels, MaskMatchesPointTest) {
  std::mt19937_64 rng(22);
  const auto roi = oracle::random_roi(rng, 60.0, 2);
  const auto lat = lattice_over(roi, 0.7);
  const auto mask = polygon_mask_parallel(roi, lat);
  for (int j = 0; j < lat.ny; ++j) {
    for (int i = 0; i < lat.nx; ++i) {
      ASSERT_EQ(mask[j * lat.nx + i] != 0, point_in_polygon(lat.at(i, j), roi));
    }
  }
}

TEST(Kernels, MaskOnGridAlignedBoundaries) {
  // Lattice points fall exactly on the edges of both rings.
  const auto roi = Polygon::make(oracle::rect(0, 0, 10, 10), {oracle::rect(4, 4, 6, 6)});
  const Lattice lat{0.0, 0.0, 1.0, 1.0, 11, 11};
  EXPECT_EQ(polygon_mask_serial(roi, lat), polygon_mask_parallel(roi, lat));
  const auto m = polygon_mask_parallel(roi, lat);
  EXPECT_EQ(m[0], 1);
  EXPECT_EQ(m[5 * 11 + 5], 0);
  EXPECT_EQ(m[4 * 11 + 4], 0);
}

TEST(Kernels, StampParallelMatchesSerial) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0, 200), hw(0.5, 25);
  const Lattice lat{0.5, 0.5, 1.0, 1.0, 200, 200};
  std::vector<Swath> sw;
  for (int k = 0; k < 60; ++k) sw.push_back({{u(rng), u(rng)}, {u(rng), u(rng)}, hw(rng)});
  sw.push_back({{50, 50}, {50, 50}, 7.5});
  std::vector<std::uint32_t> a(lat.size()), b(lat.size());
  stamp_swaths_serial(sw, lat, a);
  stamp_swaths_parallel(sw, lat, b);
  EXPECT_EQ(a, b);
  for (int j = 0; j < lat.ny; j += 7) {
    for (int i = 0; i < lat.nx; i += 7) {
      std::uint32_t n = 0;
      for (const auto& s : sw) n += swath_contains(s, lat.at(i, j));
      ASSERT_EQ(a[j * lat.nx + i], n);
    }
  }
}

TEST(Kernels, SwathShape) {
  const Swath s{{0, 0}, {10, 0}, 2.0};
  EXPECT_TRUE(swath_contains(s, {-2.0, 0.0}));
  EXPECT_TRUE(swath_contains(s, {12.0, 2.0}));
  EXPECT_FALSE(swath_contains(s, {12.1, 0.0}));
  EXPECT_FALSE(swath_contains(s, {5.0, 2.1}));
  const Swath dot{{0, 0}, {0, 0}, 1.0};
  EXPECT_TRUE(swath_contains(dot, {1.0, 1.0}));
  EXPECT_FALSE(swath_contains(dot, {1.01, 0.0}));
}
