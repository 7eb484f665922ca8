#pragma once

#include <span>
#include <utility>
#include <vector>

namespace mcpp {

/// WGS84 geodetic coordinate in degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Local planar coordinate in meters: x points East, y points North.
/// The down axis is dropped; altitude is a mission parameter.
struct NedPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const NedPoint&, const NedPoint&) = default;
};

using Ring = std::vector<NedPoint>;

struct BoundingBox {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  bool contains(const BoundingBox& other) const {
    return x_min <= other.x_min && other.x_max <= x_max && y_min <= other.y_min &&
           other.y_max <= y_max;
  }
};

/// Rotation/shift of a polygon over the node lattice. Forward mapping rotates
/// by -theta about a pivot, then translates by (-sx, -sy).
struct Placement {
  double sx = 0.0;         // meters
  double sy = 0.0;         // meters
  double theta_deg = 0.0;  // degrees

  NedPoint apply(NedPoint p, NedPoint pivot) const;
  NedPoint invert(NedPoint p, NedPoint pivot) const;

  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Outer ring plus no-fly-zone holes. Construction through make() validates the
/// rings and normalizes orientation (outer counter-clockwise, holes clockwise).
class Polygon {
public:
  Polygon() = default;
  static Polygon make(Ring outer, std::vector<Ring> holes = {});

  const Ring& outer() const { return outer_; }
  const std::vector<Ring>& holes() const { return holes_; }

private:
  friend Polygon transform_polygon(const Polygon&, const Placement&, NedPoint);
  Polygon(Ring outer, std::vector<Ring> holes)
      : outer_(std::move(outer)), holes_(std::move(holes)) {}

  Ring outer_;
  std::vector<Ring> holes_;
};

// --- geodesy -----------------------------------------------------------------

NedPoint wgs84_to_ned(GeoPoint p, GeoPoint ref);
GeoPoint ned_to_wgs84(NedPoint p, GeoPoint ref);

/// Area centroid of a lat/lon ring treated as planar; falls back to the vertex
/// mean for degenerate rings. Used as the NED reference of a mission.
GeoPoint ring_centroid(std::span<const GeoPoint> ring);

// --- planar polygon primitives -----------------------------------------------

/// Points on an edge count as inside the outer ring and inside a hole.
bool point_in_polygon(NedPoint p, const Polygon& poly);

double ring_signed_area(std::span<const NedPoint> ring);
double polygon_area(const Polygon& poly);

/// Validates placement parameters: theta in [0, 90], shifts finite and >= 0.
Polygon transform_polygon(const Polygon& poly, const Placement& placement, NedPoint pivot);

BoundingBox bounding_box(std::span<const NedPoint> ring);
BoundingBox bounding_box(const Polygon& poly);

// --- ring classification shared with the labeling kernels ---------------------

enum class RingSide { Outside, Inside, Boundary };

struct Segment {
  NedPoint a;
  NedPoint b;
};

/// Parity test against a set of ring edges. Only edges whose y-span contains
/// p.y influence the result, so callers may pre-filter edges by row without
/// changing the answer.
RingSide classify_point(NedPoint p, std::span<const Segment> edges);

std::vector<Segment> ring_edges(std::span<const NedPoint> ring);

}  // namespace mcpp
