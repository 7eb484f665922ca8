#include "mcpp/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace mcpp::kernels {
namespace {

std::vector<Segment> edges_spanning(std::span<const Segment> edges, double y) {
  std::vector<Segment> out;
  for (const auto& e : edges) {
    if (std::min(e.a.y, e.b.y) <= y && y <= std::max(e.a.y, e.b.y)) out.push_back(e);
  }
  return out;
}

// Conservative axis-aligned box: every rectangle corner lies within
// half_width*sqrt(2) of an endpoint.
BoundingBox swath_box(const Swath& s) {
  const double r = s.half_width * 1.4142136 + 1e-9;
  return {std::min(s.a.x, s.b.x) - r, std::max(s.a.x, s.b.x) + r, std::min(s.a.y, s.b.y) - r,
          std::max(s.a.y, s.b.y) + r};
}

void stamp_row(std::span<const Swath> swaths, const Lattice& lat, int j,
               std::span<std::uint32_t> counts) {
  const double y = lat.y0 + j * lat.dy;
  for (const auto& s : swaths) {
    const BoundingBox b = swath_box(s);
    if (y < b.y_min || y > b.y_max) continue;
    const int i0 = std::max(0, static_cast<int>(std::floor((b.x_min - lat.x0) / lat.dx)));
    const int i1 = std::min(lat.nx - 1, static_cast<int>(std::ceil((b.x_max - lat.x0) / lat.dx)));
    for (int i = i0; i <= i1; ++i) {
      if (swath_contains(s, lat.at(i, j))) ++counts[static_cast<std::size_t>(j) * lat.nx + i];
    }
  }
}

void mask_row(const std::vector<Segment>& outer, const std::vector<std::vector<Segment>>& holes,
              const Lattice& lat, int j, std::uint8_t* row) {
  const double y = lat.y0 + j * lat.dy;
  const auto outer_row = edges_spanning(outer, y);
  if (outer_row.empty()) {
    std::fill(row, row + lat.nx, std::uint8_t{0});
    return;
  }
  std::vector<std::vector<Segment>> hole_rows;
  hole_rows.reserve(holes.size());
  for (const auto& h : holes) {
    auto r = edges_spanning(h, y);
    if (!r.empty()) hole_rows.push_back(std::move(r));
  }
  for (int i = 0; i < lat.nx; ++i) {
    const NedPoint p = lat.at(i, j);
    bool in = classify_point(p, outer_row) != RingSide::Outside;
    for (std::size_t h = 0; in && h < hole_rows.size(); ++h) {
      in = classify_point(p, hole_rows[h]) == RingSide::Outside;
    }
    row[i] = in ? 1 : 0;
  }
}

}  // namespace

std::vector<std::uint8_t> polygon_mask_serial(const Polygon& poly, const Lattice& lattice) {
  std::vector<std::uint8_t> mask(lattice.size(), 0);
  for (int j = 0; j < lattice.ny; ++j) {
    for (int i = 0; i < lattice.nx; ++i) {
      mask[static_cast<std::size_t>(j) * lattice.nx + i] =
          point_in_polygon(lattice.at(i, j), poly) ? 1 : 0;
    }
  }
  return mask;
}

std::vector<std::uint8_t> polygon_mask_parallel(const Polygon& poly, const Lattice& lattice) {
  std::vector<std::uint8_t> mask(lattice.size(), 0);
  const auto outer = ring_edges(poly.outer());
  std::vector<std::vector<Segment>> holes;
  for (const auto& h : poly.holes()) holes.push_back(ring_edges(h));
  const bool big = lattice.size() > 4096;
#pragma omp parallel for schedule(dynamic, 4) if (big)
  for (int j = 0; j < lattice.ny; ++j) {
    mask_row(outer, holes, lattice, j, mask.data() + static_cast<std::size_t>(j) * lattice.nx);
  }
  return mask;
}

bool swath_contains(const Swath& s, NedPoint p) {
  const double dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  const double len = std::hypot(dx, dy);
  const double px = p.x - s.a.x, py = p.y - s.a.y;
  const double hw = s.half_width;
  if (len == 0.0) return std::abs(px) <= hw && std::abs(py) <= hw;
  const double ux = dx / len, uy = dy / len;
  const double along = px * ux + py * uy;
  const double perp = ux * py - uy * px;
  return along >= -hw && along <= len + hw && std::abs(perp) <= hw;
}

void stamp_swaths_serial(std::span<const Swath> swaths, const Lattice& lattice,
                         std::span<std::uint32_t> counts) {
  for (const auto& s : swaths) {
    const BoundingBox b = swath_box(s);
    const int i0 = std::max(0, static_cast<int>(std::floor((b.x_min - lattice.x0) / lattice.dx)));
    const int i1 =
        std::min(lattice.nx - 1, static_cast<int>(std::ceil((b.x_max - lattice.x0) / lattice.dx)));
    const int j0 = std::max(0, static_cast<int>(std::floor((b.y_min - lattice.y0) / lattice.dy)));
    const int j1 =
        std::min(lattice.ny - 1, static_cast<int>(std::ceil((b.y_max - lattice.y0) / lattice.dy)));
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) {
        if (swath_contains(s, lattice.at(i, j))) {
          ++counts[static_cast<std::size_t>(j) * lattice.nx + i];
        }
      }
    }
  }
}

void stamp_swaths_parallel(std::span<const Swath> swaths, const Lattice& lattice,
                           std::span<std::uint32_t> counts) {
#pragma omp parallel for schedule(dynamic, 8)
  for (int j = 0; j < lattice.ny; ++j) stamp_row(swaths, lattice, j, counts);
}

}  // namespace mcpp::kernels
