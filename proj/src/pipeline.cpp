#include "mcpp/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

#include "mcpp/errors.hpp"

namespace mcpp {
namespace {

constexpr double kDensityTolerance = 1e-6;
constexpr std::uint64_t kPositionStream = 0x9e3779b97f4a7c15ull;

Ring to_ned_ring(std::span<const GeoPoint> ring, GeoPoint ref) {
  Ring out;
  out.reserve(ring.size());
  for (const auto& p : ring) out.push_back(wgs84_to_ned(p, ref));
  return out;
}

SensorModel resolve_sensor(const MissionSpec& spec, double& d_s) {
  SensorModel s;
  s.hfov_deg = spec.sensor.hfov_deg;
  s.h_res_px = spec.sensor.h_res_px;
  s.overlap = spec.sensor.overlap;
  if (spec.scanning_density) {
    d_s = *spec.scanning_density;
    if (!(d_s > 0.0) || !std::isfinite(d_s)) throw InputDomainError("scanning density must be positive");
    if (spec.sensor.altitude) {
      s.altitude = *spec.sensor.altitude;
      const double implied = scanning_density(s.altitude, s.hfov_deg, s.overlap);
      if (std::abs(implied - d_s) > kDensityTolerance * std::max(1.0, d_s)) {
        throw InputDomainError("scanning density does not match the sensor altitude and overlap");
      }
    } else {
      s.altitude = altitude_for_scanning_density(d_s, s.hfov_deg, s.overlap);
    }
  } else {
    if (spec.sensor.altitude) s.altitude = *spec.sensor.altitude;
    d_s = s.scanning_density();
  }
  s.validate();
  return s;
}

// Draws `count` distinct free nodes, preferring the largest component.
std::vector<int> auto_start_nodes(const NodeGrid& grid, int count, std::uint64_t seed) {
  const auto comp = free_components(grid);
  std::vector<int> sizes;
  for (int c : comp) {
    if (c < 0) continue;
    if (c >= static_cast<int>(sizes.size())) sizes.resize(c + 1, 0);
    ++sizes[c];
  }
  const int largest =
      static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<int> pool;
  for (int k = 0; k < static_cast<int>(comp.size()); ++k) {
    if (comp[k] == largest) pool.push_back(k);
  }
  if (static_cast<int>(pool.size()) < count) {
    pool.clear();
    for (int k = 0; k < static_cast<int>(comp.size()); ++k) {
      if (comp[k] >= 0) pool.push_back(k);
    }
  }
  if (static_cast<int>(pool.size()) < count) {
    throw FleetConfigurationError("more UAVs than free nodes");
  }
  std::mt19937_64 rng(seed ^ kPositionStream);
  for (int u = 0; u < count; ++u) {
    std::uniform_int_distribution<std::size_t> pick(u, pool.size() - 1);
    std::swap(pool[u], pool[pick(rng)]);
  }
  pool.resize(count);
  return pool;
}

// Free nodes in components without a UAV become obstacles.
int prune_unreachable(NodeGrid& grid) {
  const auto comp = free_components(grid);
  std::vector<char> keep;
  for (const auto& c : grid.uav_cells) {
    const int id = comp[c.node];
    if (id >= static_cast<int>(keep.size())) keep.resize(id + 1, 0);
    keep[id] = 1;
  }
  int pruned = 0;
  for (std::size_t k = 0; k < comp.size(); ++k) {
    const int id = comp[k];
    if (id < 0) continue;
    if (id >= static_cast<int>(keep.size()) || !keep[id]) {
      grid.states[k] = NodeState::Obstacle;
      ++pruned;
    }
  }
  return pruned;
}

}  // namespace

double round_coordinate(double degrees) { return std::round(degrees * 1e7) / 1e7; }

MissionContext resolve_mission(const MissionSpec& spec) {
  if (spec.roi.size() < 3) throw InputDomainError("ROI needs at least 3 vertices");
  MissionContext ctx;
  ctx.reference = ring_centroid(spec.roi);
  std::vector<Ring> holes;
  for (const auto& o : spec.obstacles) holes.push_back(to_ned_ring(o, ctx.reference));
  ctx.roi = Polygon::make(to_ned_ring(spec.roi, ctx.reference), std::move(holes));
  ctx.roi_area = polygon_area(ctx.roi);
  ctx.sensor = resolve_sensor(spec, ctx.d_s);
  return ctx;
}

CoverageReport evaluate_wgs84_paths(std::vector<CoveragePath> paths, const MissionContext& ctx,
                                    double cell_side) {
  BoundingBox near = bounding_box(ctx.roi);
  const double margin = std::max(ctx.sensor.footprint(), 2.0 * ctx.d_s);
  near = {near.x_min - margin, near.x_max + margin, near.y_min - margin, near.y_max + margin};
  for (auto& p : paths) {
    p.waypoints_ned.clear();
    for (const auto& g : p.waypoints_wgs84) {
      const NedPoint q = wgs84_to_ned(g, ctx.reference);
      if (!near.contains({q.x, q.x, q.y, q.y})) {
        throw InputDomainError("path waypoint lies far outside the mission ROI");
      }
      p.waypoints_ned.push_back(q);
    }
    if (p.turns < 0) p.turns = polyline_turns(p.waypoints_ned);
    if (p.length < 0.0) p.length = polyline_length(p.waypoints_ned);
  }
  return simulate_coverage(paths, ctx.roi, ctx.sensor, cell_side);
}

MissionPlan plan_mission(const MissionSpec& spec) {
  if (spec.uavs < 1) throw InputDomainError("at least one UAV is required");
  if (spec.initial_positions && static_cast<int>(spec.initial_positions->size()) != spec.uavs) {
    throw FleetConfigurationError("number of initial positions differs from the UAV count");
  }
  const ShareVector shares = spec.shares ? *spec.shares : ShareVector::equal(spec.uavs);
  if (static_cast<int>(shares.p.size()) != spec.uavs) {
    throw FleetConfigurationError("number of shares differs from the UAV count");
  }
  shares.validate();
  spec.cost.validate();

  MissionPlan plan;
  plan.context = resolve_mission(spec);
  plan.speed = spec.speed;
  plan.gimbal_pitch_deg = spec.gimbal_pitch_deg;
  plan.seed = spec.seed;
  const auto& ctx = plan.context;

  if (spec.ablation == Ablation::None) {
    plan.placement = identity_placement(ctx.roi, ctx.d_s, spec.mode, spec.placement.weights);
  } else {
    PlacementParams pp = spec.placement;
    pp.weights = ablation_weights(spec.ablation, spec.placement.weights);
    pp.seed = spec.seed;
    plan.placement = optimize_placement(ctx.roi, ctx.d_s, spec.mode, pp);
  }
  plan.grid = plan.placement.grid;
  auto& grid = plan.grid;

  std::vector<NedPoint> hints;
  std::vector<int> starts;
  if (spec.initial_positions) {
    for (const auto& g : *spec.initial_positions) {
      const NedPoint q = grid.to_grid(wgs84_to_ned(g, ctx.reference));
      hints.push_back(q);
      starts.push_back(nearest_free_node(grid, q));
    }
  } else {
    starts = auto_start_nodes(grid, spec.uavs, spec.seed);
    for (int n : starts) hints.push_back(grid.center(n));
  }
  assign_uav_nodes(grid, starts);
  plan.pruned_nodes = prune_unreachable(grid);

  plan.assignment = divide(grid, shares, spec.darp, spec.seed);

  std::vector<std::vector<int>> regions(spec.uavs);
  for (int k = 0; k < static_cast<int>(plan.assignment.owner.size()); ++k) {
    const int u = plan.assignment.owner[k];
    if (u >= 0) regions[u].push_back(k);
  }
  plan.paths.resize(spec.uavs);
  std::vector<std::exception_ptr> failures(spec.uavs);
#pragma omp parallel for schedule(dynamic) if (spec.uavs > 1)
  for (int u = 0; u < spec.uavs; ++u) {
    try {
      plan.paths[u] = plan_region_path(grid, regions[u], plan.assignment.start_nodes[u], hints[u],
                                       ctx.reference, u);
    } catch (...) {
      failures[u] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  for (auto& p : plan.paths) {
    for (auto& g : p.waypoints_wgs84) g = {round_coordinate(g.lat), round_coordinate(g.lon)};
  }

  plan.coverage = evaluate_wgs84_paths(plan.paths, ctx, spec.coverage_cell);

  CostParams cp = spec.cost;
  cp.speed = spec.speed;
  std::vector<double> durations;
  for (const auto& p : plan.paths) durations.push_back(flight_duration(p.length, p.turns, cp));
  plan.cost = total_time_and_cost(durations, spec.uavs, ctx.roi_area, cp);
  return plan;
}

CoverageReport evaluate_plan(const MissionPlan& plan, const MissionSpec& spec) {
  return evaluate_wgs84_paths(plan.paths, resolve_mission(spec), spec.coverage_cell);
}

}  // namespace mcpp
