#pragma once

// Data-parallel inner loops of the planner. Every kernel has an OpenMP version
// and a serial reference with identical results; the references are kept for
// tests and for the benchmark binary.

#include <cstdint>
#include <span>
#include <vector>

#include "mcpp/geo.hpp"

namespace mcpp::kernels {

/// Regular sample lattice: point (i, j) = (x0 + i*dx, y0 + j*dy).
/// Row-major storage, index = j*nx + i.
struct Lattice {
  double x0 = 0.0;
  double y0 = 0.0;
  double dx = 1.0;
  double dy = 1.0;
  int nx = 0;
  int ny = 0;

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  NedPoint at(int i, int j) const { return {x0 + i * dx, y0 + j * dy}; }
};

/// 1 where the lattice point satisfies point_in_polygon, 0 elsewhere.
std::vector<std::uint8_t> polygon_mask_serial(const Polygon& poly, const Lattice& lattice);
std::vector<std::uint8_t> polygon_mask_parallel(const Polygon& poly, const Lattice& lattice);

/// A path segment swept by a square footprint of side 2*half_width: the
/// rectangle of that width around the segment, extended by half_width past
/// both endpoints.
struct Swath {
  NedPoint a;
  NedPoint b;
  double half_width = 0.0;
};

bool swath_contains(const Swath& s, NedPoint p);

/// Adds one to counts[k] for every swath containing lattice point k.
void stamp_swaths_serial(std::span<const Swath> swaths, const Lattice& lattice,
                         std::span<std::uint32_t> counts);
void stamp_swaths_parallel(std::span<const Swath> swaths, const Lattice& lattice,
                           std::span<std::uint32_t> counts);

}  // namespace mcpp::kernels
