#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcpp/cost.hpp"
#include "mcpp/coverage.hpp"
#include "mcpp/darp.hpp"
#include "mcpp/geo.hpp"
#include "mcpp/grid.hpp"
#include "mcpp/placement.hpp"
#include "mcpp/stc.hpp"

namespace mcpp {

inline constexpr const char* kVersion = "mcpp 1.0.0";

/// Camera description of a mission. The altitude may be omitted when the
/// scanning density is given directly; it is then derived from the overlap.
struct MissionSensor {
  std::optional<double> altitude;
  double hfov_deg = 73.4;
  double h_res_px = 5472;
  double overlap = 0.5;
};

struct MissionSpec {
  std::vector<GeoPoint> roi;
  std::vector<std::vector<GeoPoint>> obstacles;
  int uavs = 1;
  std::optional<std::vector<GeoPoint>> initial_positions;  // nullopt: auto
  std::optional<ShareVector> shares;                       // nullopt: equal
  MissionSensor sensor;
  std::optional<double> scanning_density;
  LabelMode mode = LabelMode::StrictInPoly;
  double speed = 3.0;               // passthrough, also used by the cost model
  double gimbal_pitch_deg = -90.0;  // passthrough
  PlacementParams placement;
  Ablation ablation = Ablation::Full;
  DarpParams darp;
  CostParams cost;
  double coverage_cell = 1.0;
  std::uint64_t seed = 0;
};

/// Everything derived from a spec before planning.
struct MissionContext {
  GeoPoint reference;  // centroid of the ROI outer ring
  Polygon roi;         // NED
  double roi_area = 0.0;
  double d_s = 0.0;
  SensorModel sensor;  // altitude resolved
};

struct MissionPlan {
  MissionContext context;
  PlacementSolution placement;
  NodeGrid grid;  // with UAV nodes, unreachable free nodes pruned
  int pruned_nodes = 0;
  RegionAssignment assignment;
  std::vector<CoveragePath> paths;  // one per UAV, WGS84 rounded to 1e-7 deg
  CoverageReport coverage;
  MissionCostReport cost;
  double speed = 0.0;
  double gimbal_pitch_deg = 0.0;
  std::uint64_t seed = 0;
  std::string version = kVersion;
};

MissionContext resolve_mission(const MissionSpec& spec);

/// transform -> optimized grid -> division -> spanning-tree tours ->
/// back-transform -> WGS84, then coverage and cost reports.
MissionPlan plan_mission(const MissionSpec& spec);

/// Recomputes the coverage report of a plan from its WGS84 waypoints.
CoverageReport evaluate_plan(const MissionPlan& plan, const MissionSpec& spec);

/// Coverage of paths given in WGS84. Each path's waypoints_wgs84 is converted
/// to the mission frame; turns and length are used as given unless negative,
/// in which case they are measured from the converted polyline.
CoverageReport evaluate_wgs84_paths(std::vector<CoveragePath> paths, const MissionContext& ctx,
                                    double cell_side);

double round_coordinate(double degrees);

}  // namespace mcpp
