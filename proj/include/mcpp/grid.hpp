#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mcpp/geo.hpp"

namespace mcpp {

enum class NodeState : std::uint8_t { Obstacle = 0, FreeSpace = 1, Uav = 2 };

/// StrictInPoly: a node is free only if the centers of its four sub-cells are
/// inside the ROI. BetterCoverage: only the node center is tested.
enum class LabelMode { StrictInPoly, BetterCoverage };

/// Bounding box snapped outward to multiples of d_n plus a one-cell margin.
struct AugmentedBox {
  BoundingBox box;
  int nx = 0;
  int ny = 0;
};

struct UavCell {
  int node = 0;
  int uav = 0;
};

/// Node lattice laid over the transformed ROI. Node (i, j) is the cell
/// [box.x_min + i*d_n, +d_n] x [box.y_min + j*d_n, +d_n]; j grows northwards.
/// All coordinates are in the grid frame; to_world() undoes the placement.
struct NodeGrid {
  int nx = 0;
  int ny = 0;
  double d_s = 0.0;
  double d_n = 0.0;
  BoundingBox box;           // augmented box (lattice extent)
  BoundingBox standard_box;  // tight box of the transformed outer ring
  Placement placement;
  NedPoint pivot;
  LabelMode mode = LabelMode::StrictInPoly;
  std::vector<NodeState> states;
  std::vector<UavCell> uav_cells;  // sorted by uav id

  int index(int i, int j) const { return j * nx + i; }
  int col(int node) const { return node % nx; }
  int row(int node) const { return node / nx; }
  bool traversable(int node) const { return states[node] != NodeState::Obstacle; }

  NedPoint center(int node) const;
  /// Sub-cell q of a node: 0 = SW, 1 = SE, 2 = NW, 3 = NE.
  NedPoint subcell_center(int node, int q) const;
  NedPoint to_world(NedPoint grid_point) const { return placement.invert(grid_point, pivot); }
  NedPoint to_grid(NedPoint world_point) const { return placement.apply(world_point, pivot); }

  int free_count() const;
  /// Node counts per axis from the floor formula on the standard box.
  std::pair<int, int> nominal_dims() const;
};

double node_spacing(double d_s);

/// Rotation pivot used for a ROI: the center of its standard bounding box.
NedPoint placement_pivot(const Polygon& roi);

AugmentedBox augmented_box(const Polygon& roi, double d_n);

/// Labels the lattice of `aug` against an already-transformed polygon.
/// Obstacle / FreeSpace only; `parallel` selects the OpenMP kernel.
std::vector<NodeState> label_nodes(const Polygon& transformed, const AugmentedBox& aug, double d_s,
                                   LabelMode mode, bool parallel = true);

/// Transforms the ROI, labels the lattice and snaps each UAV position (world
/// frame) to its nearest free node. Throws InfeasibleDiscretization when no
/// node is free and FleetConfigurationError when two UAVs share a node.
NodeGrid build_grid(const Polygon& roi, const Placement& placement, double d_s, LabelMode mode,
                    std::span<const NedPoint> uav_positions = {});

/// Nearest FreeSpace node to a grid-frame point, ties to the lowest index;
/// -1 if there is none.
int nearest_free_node(const NodeGrid& grid, NedPoint grid_point);

/// Marks the given free nodes as UAV starts, in uav-id order.
void assign_uav_nodes(NodeGrid& grid, std::span<const int> nodes);

/// 4-connected components over traversable nodes; -1 for obstacles.
std::vector<int> free_components(const NodeGrid& grid);

/// Binary PGM (P5), north up: Obstacle=0, FreeSpace=128, Uav=255.
void write_grid_pgm(const NodeGrid& grid, std::ostream& out);

}  // namespace mcpp
