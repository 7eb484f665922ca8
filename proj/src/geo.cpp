#include "mcpp/geo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "mcpp/errors.hpp"

namespace mcpp {
namespace {

// WGS84 ellipsoid.
constexpr double kSemiMajor = 6378137.0;
constexpr double kFlattening = 1.0 / 298.257223563;
constexpr double kEccSq = kFlattening * (2.0 - kFlattening);
constexpr double kMaxOffset = 1.0e6;  // 1000 km

constexpr double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

using Vec3 = std::array<double, 3>;

void check_geo(GeoPoint p) {
  if (!std::isfinite(p.lat) || !std::isfinite(p.lon) || p.lat < -90.0 || p.lat > 90.0 ||
      p.lon < -180.0 || p.lon > 180.0) {
    throw InputDomainError("geodetic coordinate out of range: (" + std::to_string(p.lat) + ", " +
                           std::to_string(p.lon) + ")");
  }
}

Vec3 geodetic_to_ecef(double lat_rad, double lon_rad, double h) {
  const double s = std::sin(lat_rad);
  const double n = kSemiMajor / std::sqrt(1.0 - kEccSq * s * s);
  return {(n + h) * std::cos(lat_rad) * std::cos(lon_rad),
          (n + h) * std::cos(lat_rad) * std::sin(lon_rad), (n * (1.0 - kEccSq) + h) * s};
}

struct Geodetic {
  double lat;  // rad
  double lon;  // rad
  double h;    // m
};

Geodetic ecef_to_geodetic(const Vec3& x) {
  const double lon = std::atan2(x[1], x[0]);
  const double p = std::hypot(x[0], x[1]);
  double lat = std::atan2(x[2], p * (1.0 - kEccSq));
  double h = 0.0;
  for (int it = 0; it < 20; ++it) {
    const double s = std::sin(lat);
    const double n = kSemiMajor / std::sqrt(1.0 - kEccSq * s * s);
    h = p / std::cos(lat) - n;
    const double next = std::atan2(x[2], p * (1.0 - kEccSq * n / (n + h)));
    const bool done = std::abs(next - lat) < 1e-15;
    lat = next;
    if (done) break;
  }
  const double s = std::sin(lat);
  const double n = kSemiMajor / std::sqrt(1.0 - kEccSq * s * s);
  h = p / std::cos(lat) - n;
  return {lat, lon, h};
}

// Rows of the ECEF -> ENU rotation at the reference.
struct Frame {
  Vec3 origin;
  Vec3 east;
  Vec3 north;
  Vec3 up;
};

Frame local_frame(GeoPoint ref) {
  const double lat = deg2rad(ref.lat);
  const double lon = deg2rad(ref.lon);
  const double sl = std::sin(lat), cl = std::cos(lat);
  const double so = std::sin(lon), co = std::cos(lon);
  return {geodetic_to_ecef(lat, lon, 0.0),
          {-so, co, 0.0},
          {-sl * co, -sl * so, cl},
          {cl * co, cl * so, sl}};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double cross(NedPoint o, NedPoint a, NedPoint b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(NedPoint p, const Segment& s) {
  if (cross(s.a, s.b, p) != 0.0) return false;
  return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
         std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool segments_intersect(const Segment& s, const Segment& t) {
  const int d1 = sign(cross(t.a, t.b, s.a));
  const int d2 = sign(cross(t.a, t.b, s.b));
  const int d3 = sign(cross(s.a, s.b, t.a));
  const int d4 = sign(cross(s.a, s.b, t.b));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  return (d1 == 0 && on_segment(s.a, t)) || (d2 == 0 && on_segment(s.b, t)) ||
         (d3 == 0 && on_segment(t.a, s)) || (d4 == 0 && on_segment(t.b, s));
}

Ring clean_ring(Ring ring, const char* what) {
  for (const auto& p : ring) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InputDomainError(std::string(what) + ": non-finite vertex");
    }
  }
  ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
  if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
  if (ring.size() < 3) {
    throw InputDomainError(std::string(what) + ": a ring needs at least 3 distinct vertices");
  }
  if (ring_signed_area(ring) == 0.0) {
    throw InputDomainError(std::string(what) + ": ring has zero area");
  }
  const auto edges = ring_edges(ring);
  const std::size_t n = edges.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(edges[i], edges[j])) {
        throw InputDomainError(std::string(what) + ": ring self-intersects");
      }
    }
  }
  return ring;
}

}  // namespace

// --- Placement ------------------------------------------------------------------

NedPoint Placement::apply(NedPoint p, NedPoint pivot) const {
  const double t = deg2rad(theta_deg);
  const double c = std::cos(t), s = std::sin(t);
  const double dx = p.x - pivot.x, dy = p.y - pivot.y;
  return {c * dx + s * dy + pivot.x - sx, -s * dx + c * dy + pivot.y - sy};
}

NedPoint Placement::invert(NedPoint p, NedPoint pivot) const {
  const double t = deg2rad(theta_deg);
  const double c = std::cos(t), s = std::sin(t);
  const double dx = p.x + sx - pivot.x, dy = p.y + sy - pivot.y;
  return {c * dx - s * dy + pivot.x, s * dx + c * dy + pivot.y};
}

// --- Polygon --------------------------------------------------------------------

Polygon Polygon::make(Ring outer, std::vector<Ring> holes) {
  outer = clean_ring(std::move(outer), "outer ring");
  if (ring_signed_area(outer) < 0.0) std::reverse(outer.begin(), outer.end());
  const auto outer_edges = ring_edges(outer);

  for (auto& hole : holes) {
    hole = clean_ring(std::move(hole), "hole");
    if (ring_signed_area(hole) > 0.0) std::reverse(hole.begin(), hole.end());
    for (const auto& v : hole) {
      if (classify_point(v, outer_edges) != RingSide::Inside) {
        throw InputDomainError("hole: vertex not strictly inside the outer ring");
      }
    }
    for (const auto& he : ring_edges(hole)) {
      for (const auto& oe : outer_edges) {
        if (segments_intersect(he, oe)) {
          throw InputDomainError("hole: crosses the outer ring");
        }
      }
    }
  }
  return Polygon(std::move(outer), std::move(holes));
}

// --- geodesy --------------------------------------------------------------------

NedPoint wgs84_to_ned(GeoPoint p, GeoPoint ref) {
  check_geo(p);
  check_geo(ref);
  const Frame f = local_frame(ref);
  const Vec3 x = geodetic_to_ecef(deg2rad(p.lat), deg2rad(p.lon), 0.0);
  const Vec3 d{x[0] - f.origin[0], x[1] - f.origin[1], x[2] - f.origin[2]};
  const NedPoint out{dot(d, f.east), dot(d, f.north)};
  if (std::hypot(out.x, out.y) > kMaxOffset || dot(d, f.up) < -kMaxOffset) {
    throw InputDomainError("point is farther than 1000 km from the reference");
  }
  return out;
}

GeoPoint ned_to_wgs84(NedPoint p, GeoPoint ref) {
  check_geo(ref);
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || std::abs(p.x) >= kMaxOffset ||
      std::abs(p.y) >= kMaxOffset) {
    throw InputDomainError("planar offset out of range");
  }
  const Frame f = local_frame(ref);
  // Find the up-offset that puts the tangent-plane point on the ellipsoid, so
  // this is the exact inverse of the orthographic projection in wgs84_to_ned.
  double up = 0.0;
  Geodetic g{};
  for (int it = 0; it < 50; ++it) {
    Vec3 x;
    for (int k = 0; k < 3; ++k) x[k] = f.origin[k] + p.x * f.east[k] + p.y * f.north[k] + up * f.up[k];
    g = ecef_to_geodetic(x);
    if (std::abs(g.h) < 1e-9) break;
    up -= g.h;
  }
  return {rad2deg(g.lat), rad2deg(g.lon)};
}

GeoPoint ring_centroid(std::span<const GeoPoint> ring) {
  if (ring.empty()) throw InputDomainError("empty ring");
  double a2 = 0.0, cx = 0.0, cy = 0.0;
  const std::size_t n = ring.size();
  // Work relative to the first vertex for conditioning.
  const double ox = ring[0].lon, oy = ring[0].lat;
  for (std::size_t i = 0; i < n; ++i) {
    const double x0 = ring[i].lon - ox, y0 = ring[i].lat - oy;
    const double x1 = ring[(i + 1) % n].lon - ox, y1 = ring[(i + 1) % n].lat - oy;
    const double c = x0 * y1 - x1 * y0;
    a2 += c;
    cx += (x0 + x1) * c;
    cy += (y0 + y1) * c;
  }
  if (std::abs(a2) < 1e-18) {
    double mx = 0.0, my = 0.0;
    for (const auto& g : ring) {
      mx += g.lon;
      my += g.lat;
    }
    return {my / static_cast<double>(n), mx / static_cast<double>(n)};
  }
  return {oy + cy / (3.0 * a2), ox + cx / (3.0 * a2)};
}

// --- planar primitives ----------------------------------------------------------

std::vector<Segment> ring_edges(std::span<const NedPoint> ring) {
  std::vector<Segment> edges;
  edges.reserve(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) {
    edges.push_back({ring[i], ring[(i + 1) % ring.size()]});
  }
  return edges;
}

RingSide classify_point(NedPoint p, std::span<const Segment> edges) {
  bool inside = false;
  for (const auto& e : edges) {
    if (on_segment(p, e)) return RingSide::Boundary;
    if ((e.a.y > p.y) != (e.b.y > p.y)) {
      const double xi = e.a.x + (p.y - e.a.y) * (e.b.x - e.a.x) / (e.b.y - e.a.y);
      if (p.x < xi) inside = !inside;
    }
  }
  return inside ? RingSide::Inside : RingSide::Outside;
}

bool point_in_polygon(NedPoint p, const Polygon& poly) {
  if (classify_point(p, ring_edges(poly.outer())) == RingSide::Outside) return false;
  for (const auto& hole : poly.holes()) {
    if (classify_point(p, ring_edges(hole)) != RingSide::Outside) return false;
  }
  return true;
}

double ring_signed_area(std::span<const NedPoint> ring) {
  double a2 = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = ring[i];
    const auto& q = ring[(i + 1) % n];
    a2 += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a2;
}

double polygon_area(const Polygon& poly) {
  double a = std::abs(ring_signed_area(poly.outer()));
  for (const auto& h : poly.holes()) a -= std::abs(ring_signed_area(h));
  return a;
}

Polygon transform_polygon(const Polygon& poly, const Placement& placement, NedPoint pivot) {
  if (!std::isfinite(placement.sx) || !std::isfinite(placement.sy) ||
      !std::isfinite(placement.theta_deg) || placement.sx < 0.0 || placement.sy < 0.0 ||
      placement.theta_deg < 0.0 || placement.theta_deg > 90.0) {
    throw InputDomainError("placement parameters out of range");
  }
  auto map_ring = [&](const Ring& r) {
    Ring out;
    out.reserve(r.size());
    for (const auto& p : r) out.push_back(placement.apply(p, pivot));
    return out;
  };
  std::vector<Ring> holes;
  holes.reserve(poly.holes().size());
  for (const auto& h : poly.holes()) holes.push_back(map_ring(h));
  // Rigid motion: orientation and validity are preserved.
  return Polygon(map_ring(poly.outer()), std::move(holes));
}

BoundingBox bounding_box(std::span<const NedPoint> ring) {
  BoundingBox b{ring[0].x, ring[0].x, ring[0].y, ring[0].y};
  for (const auto& p : ring) {
    b.x_min = std::min(b.x_min, p.x);
    b.x_max = std::max(b.x_max, p.x);
    b.y_min = std::min(b.y_min, p.y);
    b.y_max = std::max(b.y_max, p.y);
  }
  return b;
}

BoundingBox bounding_box(const Polygon& poly) { return bounding_box(poly.outer()); }

}  // namespace mcpp
