#include "mcpp/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "mcpp/errors.hpp"

namespace mcpp {
namespace {

constexpr double kMergeTolerance = 0.05;  // m
constexpr double kSamePoint = 1e-6;       // m
constexpr double kMaxCells = 4.0e6;

double half_tan(double hfov_deg) { return std::tan(hfov_deg * std::numbers::pi / 360.0); }

void check_optics(double altitude, double hfov_deg) {
  if (!(altitude > 0.0) || !(hfov_deg > 0.0 && hfov_deg < 180.0)) {
    throw InputDomainError("sensor needs altitude > 0 and 0 < HFOV < 180");
  }
}

double dist(NedPoint a, NedPoint b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool is_closed(std::span<const NedPoint> w) {
  return w.size() > 2 && dist(w.front(), w.back()) < kSamePoint;
}

// True if m lies on the straight continuation from a to b.
bool collinear(NedPoint a, NedPoint m, NedPoint b) {
  const double ux = m.x - a.x, uy = m.y - a.y;
  const double vx = b.x - m.x, vy = b.y - m.y;
  if (ux * vx + uy * vy <= 0.0) return false;
  const double len = dist(a, b);
  if (len == 0.0) return false;
  const double off = std::abs((b.x - a.x) * (m.y - a.y) - (b.y - a.y) * (m.x - a.x)) / len;
  return off <= kMergeTolerance;
}

}  // namespace

void SensorModel::validate() const {
  check_optics(altitude, hfov_deg);
  if (!(h_res_px > 0.0)) throw InputDomainError("horizontal resolution must be positive");
  if (!(overlap >= 0.0 && overlap < 2.0)) throw InputDomainError("overlap must be in [0, 2)");
}

double SensorModel::footprint() const { return footprint_width(altitude, hfov_deg); }

double SensorModel::scanning_density() const {
  return mcpp::scanning_density(altitude, hfov_deg, overlap);
}

double footprint_width(double altitude, double hfov_deg) {
  check_optics(altitude, hfov_deg);
  return 2.0 * altitude * half_tan(hfov_deg);
}

double scanning_density(double altitude, double hfov_deg, double overlap) {
  check_optics(altitude, hfov_deg);
  if (!(overlap >= 0.0 && overlap < 2.0)) throw InputDomainError("overlap must be in [0, 2)");
  return (2.0 - overlap) * altitude * half_tan(hfov_deg);
}

double altitude_for_scanning_density(double d_s, double hfov_deg, double overlap) {
  if (!(d_s > 0.0)) throw InputDomainError("scanning density must be positive");
  check_optics(1.0, hfov_deg);
  if (!(overlap >= 0.0 && overlap < 2.0)) throw InputDomainError("overlap must be in [0, 2)");
  return d_s / ((2.0 - overlap) * half_tan(hfov_deg));
}

double ground_sampling_distance(double altitude, double hfov_deg, double h_res_px) {
  if (!(h_res_px > 0.0)) throw InputDomainError("horizontal resolution must be positive");
  return footprint_width(altitude, hfov_deg) / h_res_px;
}

PathMetrics path_metrics(int turns, double length_m, double roi_area) {
  if (!(roi_area > 0.0)) throw InputDomainError("ROI area must be positive");
  const double per = roi_area / 1000.0;
  return {turns, turns / per, length_m / 1000.0, length_m / per};
}

PathMetrics path_metrics(const CoveragePath& path, double roi_area) {
  return path_metrics(path.turns, path.length, roi_area);
}

double coverage_cell_side(const BoundingBox& box, double requested) {
  double side = std::clamp(requested, 0.5, 2.0);
  const double needed = std::sqrt(box.area() / kMaxCells);
  if (needed > side) side = std::min(2.0, needed);
  return side;
}

std::vector<NedPoint> merge_collinear(std::span<const NedPoint> waypoints) {
  std::vector<NedPoint> pts;
  for (const auto& p : waypoints) {
    if (pts.empty() || dist(pts.back(), p) >= kSamePoint) pts.push_back(p);
  }
  const bool closed = pts.size() > 2 && dist(pts.front(), pts.back()) < kSamePoint;
  if (closed) pts.pop_back();

  // Interior vertices first, then (for closed rings) the seam vertex.
  std::vector<NedPoint> out;
  for (const auto& p : pts) {
    while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.pop_back();
    out.push_back(p);
  }
  if (closed) {
    bool changed = true;
    while (changed && out.size() > 3) {
      changed = false;
      if (collinear(out[out.size() - 2], out.back(), out.front())) {
        out.pop_back();
        changed = true;
      } else if (collinear(out.back(), out.front(), out[1])) {
        out.erase(out.begin());
        changed = true;
      }
    }
    out.push_back(out.front());
  }
  return out;
}

int polyline_turns(std::span<const NedPoint> waypoints) {
  const auto m = merge_collinear(waypoints);
  if (m.size() < 2) return 0;
  return is_closed(m) ? static_cast<int>(m.size()) - 1 : static_cast<int>(m.size()) - 2;
}

double polyline_length(std::span<const NedPoint> waypoints) {
  double len = 0.0;
  for (std::size_t k = 1; k < waypoints.size(); ++k) len += dist(waypoints[k - 1], waypoints[k]);
  return len;
}

std::vector<kernels::Swath> path_swaths(std::span<const NedPoint> waypoints, double footprint) {
  const auto m = merge_collinear(waypoints);
  std::vector<kernels::Swath> out;
  if (m.size() == 1) out.push_back({m[0], m[0], 0.5 * footprint});
  for (std::size_t k = 1; k < m.size(); ++k) out.push_back({m[k - 1], m[k], 0.5 * footprint});
  return out;
}

CoverageReport simulate_coverage(std::span<const CoveragePath> paths, const Polygon& roi,
                                 const SensorModel& sensor, double cell_side, bool parallel) {
  sensor.validate();
  const BoundingBox box = bounding_box(roi);
  const double side = coverage_cell_side(box, cell_side);

  CoverageReport rep;
  auto& r = rep.raster;
  r.cell_side = side;
  r.lattice = {box.x_min + 0.5 * side,
               box.y_min + 0.5 * side,
               side,
               side,
               std::max(1, static_cast<int>(std::ceil(box.width() / side))),
               std::max(1, static_cast<int>(std::ceil(box.height() / side)))};
  r.mask = parallel ? kernels::polygon_mask_parallel(roi, r.lattice)
                    : kernels::polygon_mask_serial(roi, r.lattice);
  r.counts.assign(r.lattice.size(), 0);

  const double d = sensor.footprint();
  std::vector<kernels::Swath> swaths;
  int turns = 0;
  double length = 0.0;
  for (const auto& p : paths) {
    const auto s = path_swaths(p.waypoints_ned, d);
    swaths.insert(swaths.end(), s.begin(), s.end());
    turns += p.turns;
    length += p.length;
  }
  if (parallel) {
    kernels::stamp_swaths_parallel(swaths, r.lattice, r.counts);
  } else {
    kernels::stamp_swaths_serial(swaths, r.lattice, r.counts);
  }

  std::vector<std::size_t> freq;
  for (std::size_t k = 0; k < r.counts.size(); ++k) {
    if (!r.mask[k]) continue;
    const auto c = r.counts[k];
    if (c >= freq.size()) freq.resize(c + 1, 0);
    ++freq[c];
    ++rep.roi_cells;
  }
  if (rep.roi_cells == 0) throw InputDomainError("ROI mask is empty at this cell size");

  const double n = static_cast<double>(rep.roi_cells);
  rep.max_scans = static_cast<int>(freq.size()) - 1;
  rep.histogram.reserve(freq.size());
  for (auto f : freq) rep.histogram.push_back(static_cast<double>(f) / n);
  std::size_t once = 0, twice = 0;
  for (std::size_t c = 1; c < freq.size(); ++c) {
    once += freq[c];
    if (c >= 2) twice += freq[c];
  }
  rep.poc = 100.0 * static_cast<double>(once) / n;
  rep.pooc = 100.0 * static_cast<double>(twice) / n;
  rep.metrics = path_metrics(turns, length, polygon_area(roi));
  return rep;
}

void write_heatmap_pgm(const CoverageReport& report, std::ostream& out) {
  const auto& r = report.raster;
  out << "P5\n" << r.lattice.nx << ' ' << r.lattice.ny << "\n255\n";
  for (int j = r.lattice.ny - 1; j >= 0; --j) {
    for (int i = 0; i < r.lattice.nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * r.lattice.nx + i;
      const unsigned v = r.mask[k] ? std::min<unsigned>(255u, r.counts[k] + 1u) : 0u;
      out.put(static_cast<char>(v));
    }
  }
}

void write_histogram_csv(const CoverageReport& report, std::ostream& out) {
  out << "scans,frequency\n";
  out.precision(12);
  for (std::size_t c = 0; c < report.histogram.size(); ++c) {
    out << c << ',' << report.histogram[c] << '\n';
  }
}

}  // namespace mcpp
