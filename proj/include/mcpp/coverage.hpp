#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mcpp/geo.hpp"
#include "mcpp/kernels.hpp"
#include "mcpp/stc.hpp"

namespace mcpp {

struct SensorModel {
  double altitude = 40.0;   // m
  double hfov_deg = 73.4;   // degrees
  double h_res_px = 5472;   // pixels
  double overlap = 0.5;     // p_o, two-sided fraction in [0, 2)

  void validate() const;
  double footprint() const;
  double scanning_density() const;
};

/// d = 2 h tan(HFOV / 2)
double footprint_width(double altitude, double hfov_deg);
/// d_s = (2 - p_o) h tan(HFOV / 2)
double scanning_density(double altitude, double hfov_deg, double overlap);
/// Altitude that yields the given scanning density.
double altitude_for_scanning_density(double d_s, double hfov_deg, double overlap);
/// Meters of ground per image pixel across track.
double ground_sampling_distance(double altitude, double hfov_deg, double h_res_px);

struct PathMetrics {
  int turns = 0;
  double n_turns = 0.0;    // turns per 1000 m^2
  double length_km = 0.0;
  double n_length = 0.0;   // meters per 1000 m^2
};

PathMetrics path_metrics(int turns, double length_m, double roi_area);
PathMetrics path_metrics(const CoveragePath& path, double roi_area);

/// Scan counts over square coverage cells; counts are meaningful where mask=1.
struct CoverageRaster {
  kernels::Lattice lattice;  // cell centers
  double cell_side = 1.0;
  std::vector<std::uint32_t> counts;
  std::vector<std::uint8_t> mask;
};

struct CoverageReport {
  double poc = 0.0;   // percent of ROI cells scanned >= 1 time
  double pooc = 0.0;  // percent scanned >= 2 times
  PathMetrics metrics;
  std::vector<double> histogram;  // normalized frequency per scan count
  int max_scans = 0;
  std::size_t roi_cells = 0;
  CoverageRaster raster;
};

/// Cell side clamped to an area in [0.25, 4] m^2, coarsened so the box holds
/// at most 4e6 cells where that is possible within the clamp.
double coverage_cell_side(const BoundingBox& box, double requested);

/// Drops duplicate and collinear interior waypoints (cyclically when the
/// polyline is closed). Collinear means within 5 cm of the chord.
std::vector<NedPoint> merge_collinear(std::span<const NedPoint> waypoints);

/// Heading changes of the merged polyline (cyclic when closed).
int polyline_turns(std::span<const NedPoint> waypoints);
double polyline_length(std::span<const NedPoint> waypoints);

std::vector<kernels::Swath> path_swaths(std::span<const NedPoint> waypoints, double footprint);

/// One scan per merged segment whose swath contains the cell center. Turns and
/// length are taken from the paths as given.
CoverageReport simulate_coverage(std::span<const CoveragePath> paths, const Polygon& roi,
                                 const SensorModel& sensor, double cell_side,
                                 bool parallel = true);

/// P5, north up; 0 outside the ROI, scans + 1 inside (saturating at 255).
void write_heatmap_pgm(const CoverageReport& report, std::ostream& out);
/// CSV: scans,frequency
void write_histogram_csv(const CoverageReport& report, std::ostream& out);

}  // namespace mcpp
