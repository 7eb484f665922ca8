#pragma once

#include <array>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mcpp/geo.hpp"
#include "mcpp/grid.hpp"

namespace mcpp {

/// Where the spanning tree's connecting spine is placed: along the northmost
/// row (Upper), southmost row (Lower), eastmost column (Right) or westmost
/// column (Left). Rows grow northwards.
enum class TreeScheme { Upper = 0, Lower = 1, Right = 2, Left = 3 };

inline constexpr std::array<TreeScheme, 4> kAllSchemes = {TreeScheme::Upper, TreeScheme::Lower,
                                                          TreeScheme::Right, TreeScheme::Left};
std::string_view scheme_name(TreeScheme s);

/// A set of node indices on an nx-by-ny lattice.
struct Region {
  int nx = 0;
  int ny = 0;
  std::vector<int> nodes;
};

struct SpanningTree {
  int nx = 0;
  int ny = 0;
  std::vector<int> nodes;
  std::vector<std::pair<int, int>> edges;  // (lower index, higher index)
  TreeScheme scheme = TreeScheme::Upper;
};

/// Cyclic tour over sub-cells. Sub-cell (si, sj) lives on the 2nx-by-2ny
/// lattice and has index sj * 2nx + si; node (i, j) owns si in {2i, 2i+1},
/// sj in {2j, 2j+1}.
struct SubcellTour {
  int nx = 0;
  int ny = 0;
  std::vector<int> cells;

  int sub_nx() const { return 2 * nx; }
};

struct CoveragePath {
  int uav = 0;
  std::vector<NedPoint> waypoints_ned;  // world NED, closed (last == first)
  std::vector<GeoPoint> waypoints_wgs84;
  int turns = 0;
  double length = 0.0;  // meters
  TreeScheme scheme = TreeScheme::Upper;
  std::vector<int> subcells;  // grid-frame sub-cell indices, tour order
};

int subcell_of(int nx, int node, int quadrant);

/// Kruskal over 4-adjacent region nodes with tiered weights: edges parallel to
/// the teeth first, then spine edges ordered toward the scheme's side.
/// Throws ContractViolation if the region is empty or disconnected.
SpanningTree build_mst(const Region& region, TreeScheme scheme);

/// Walks around the tree keeping it on the right-hand side (clockwise),
/// starting at start_subcell, which must belong to a tree node.
SubcellTour circumnavigate(const SpanningTree& tree, int start_subcell);

/// Direction changes over the cyclic tour.
int count_turns(const SubcellTour& tour);

/// Plans the four schemes for one region and keeps the fewest-turn tour (ties
/// go to the earlier scheme). `start_hint` is the UAV position in the grid
/// frame; the tour starts at the start node's sub-cell nearest to it.
CoveragePath plan_region_path(const NodeGrid& grid, std::span<const int> region_nodes,
                              int start_node, NedPoint start_hint, GeoPoint ned_ref, int uav);

}  // namespace mcpp
