#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "mcpp/geo.hpp"
#include "mcpp/grid.hpp"
#include "mcpp/placement.hpp"
#include "mcpp/stc.hpp"

namespace oracle {

using mcpp::NedPoint;
using mcpp::Ring;

// --- geometry ------------------------------------------------------------------

/// Crossing count with a ray cast straight up (+y) from p.
bool inside_ring_upward(NedPoint p, std::span<const NedPoint> ring);
/// Upward-ray test for a polygon with holes; undefined on edges.
bool inside_polygon_upward(NedPoint p, const mcpp::Polygon& poly);
/// Distance from p to the nearest edge of any ring.
double edge_distance(NedPoint p, const mcpp::Polygon& poly);
double shoelace(std::span<const NedPoint> ring);

/// Meridian arc length between two latitudes on WGS84, by Simpson quadrature.
double meridian_arc(double lat0_deg, double lat1_deg);
/// East offset of a point on the same parallel, seen from the tangent plane.
double parallel_offset(double lat_deg, double dlon_deg);

// --- generators ----------------------------------------------------------------

/// Concave star-shaped ring around the origin, counter-clockwise.
Ring star_ring(std::mt19937_64& rng, int vertices, double r_min, double r_max);
Ring rect(double x0, double y0, double x1, double y1);
/// Random concave ROI with `holes` square obstacles well inside the core radius.
mcpp::Polygon random_roi(std::mt19937_64& rng, double radius, int holes);

/// Random 4-connected node set on a w x h lattice with interior holes.
mcpp::Region random_region(std::mt19937_64& rng, int w, int h, double removal);

/// A bare grid for feeding regions to the path planner.
mcpp::NodeGrid bare_grid(int nx, int ny, double d_s);

// --- graph checks --------------------------------------------------------------

bool is_spanning_tree(const mcpp::Region& region, std::span<const std::pair<int, int>> edges);
bool four_connected(std::span<const int> nodes, int nx);
/// Each sub-cell of every region node appears exactly once, and consecutive
/// cells (cyclically) are 4-adjacent.
bool visits_each_subcell_once(const mcpp::Region& region, const mcpp::SubcellTour& tour);
/// Direction changes of a closed sub-cell tour, computed from coordinates.
int turns_by_direction(const mcpp::SubcellTour& tour);

// --- placement -----------------------------------------------------------------

struct GridSearchResult {
  mcpp::Placement placement;
  mcpp::IndexTerms terms;
};

/// Exhaustive search over sx, sy in [0, d_n] and theta in [0, 90].
GridSearchResult exhaustive_placement(const mcpp::Polygon& roi, double d_s, mcpp::LabelMode mode,
                                      const mcpp::IndexWeights& w, double shift_step,
                                      double angle_step);

}  // namespace oracle
