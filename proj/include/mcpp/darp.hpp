#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mcpp/grid.hpp"

namespace mcpp {

/// Target fraction of the free space per UAV; positive, summing to one.
struct ShareVector {
  std::vector<double> p;

  static ShareVector equal(int uavs);
  void validate() const;
};

struct DarpParams {
  double eta = 0.05;            // share-steering gain
  double repair_delta = 0.3;    // connectivity factor range [1 - d, 1 + d]
  int stall_cycles = 50;        // cycles without improvement before noise
  double noise_scale = 1e-4;    // noise sigma relative to the mean field value
  int max_cycles = 0;           // 0: 100 * (nx + ny)
  double tolerance = -1.0;      // < 0: default_tolerance(L)
  bool record_trace = false;
};

struct DarpTraceRecord {
  int cycle = 0;
  double cost = 0.0;
  double max_deviation = 0.0;
  int disconnected = 0;
};

struct RegionAssignment {
  int nx = 0;
  int ny = 0;
  std::vector<int> owner;        // per node; -1 on obstacles
  std::vector<int> counts;       // nodes per UAV
  std::vector<int> start_nodes;  // per UAV
  std::vector<double> shares;
  int iterations = 0;
  bool converged = false;
  double cost = 0.0;
  double tolerance = 0.0;
  std::vector<DarpTraceRecord> trace;

  int total() const;
};

/// max(1, 0.005 * L) nodes.
double default_tolerance(int free_nodes);

/// Proportional division cost 1/2 * sum (k_i - p_i * L)^2, in nodes.
double share_cost(std::span<const int> counts, std::span<const double> shares);

/// Divides the traversable nodes into one connected region per UAV, sized to
/// the shares. Returns converged = false with the best connected candidate when
/// the cycle cap is hit. Throws InfeasiblePartition if a start node is isolated,
/// if some free node is unreachable from every UAV, or if no connected
/// candidate was ever produced.
RegionAssignment divide(const NodeGrid& grid, const ShareVector& shares, const DarpParams& params,
                        std::uint64_t seed);

/// True iff the UAV's nodes form one 4-connected component holding its start.
bool region_connected(const RegionAssignment& assignment, int uav);

/// Binary PPM (P6), north up, one palette color per UAV, black for obstacles.
void write_owner_ppm(const RegionAssignment& assignment, std::ostream& out);

/// CSV: cycle,cost,max_deviation,disconnected
void write_darp_trace_csv(std::span<const DarpTraceRecord> trace, std::ostream& out);

}  // namespace mcpp
