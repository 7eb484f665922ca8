#include "mcpp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <string>

#include "mcpp/errors.hpp"
#include "mcpp/kernels.hpp"

namespace mcpp {

NedPoint NodeGrid::center(int node) const {
  return {box.x_min + (col(node) + 0.5) * d_n, box.y_min + (row(node) + 0.5) * d_n};
}

NedPoint NodeGrid::subcell_center(int node, int q) const {
  const double ox = box.x_min + col(node) * d_n;
  const double oy = box.y_min + row(node) * d_n;
  return {ox + ((q & 1) ? 1.5 : 0.5) * d_s, oy + ((q & 2) ? 1.5 : 0.5) * d_s};
}

int NodeGrid::free_count() const {
  return static_cast<int>(std::count_if(states.begin(), states.end(),
                                        [](NodeState s) { return s != NodeState::Obstacle; }));
}

std::pair<int, int> NodeGrid::nominal_dims() const {
  return {static_cast<int>(std::floor(standard_box.width() / d_n)),
          static_cast<int>(std::floor(standard_box.height() / d_n))};
}

double node_spacing(double d_s) {
  if (!(d_s > 0.0) || !std::isfinite(d_s)) {
    throw InputDomainError("scanning density must be positive");
  }
  return 2.0 * d_s;
}

NedPoint placement_pivot(const Polygon& roi) {
  const BoundingBox b = bounding_box(roi);
  return {0.5 * (b.x_min + b.x_max), 0.5 * (b.y_min + b.y_max)};
}

AugmentedBox augmented_box(const Polygon& roi, double d_n) {
  const BoundingBox b = bounding_box(roi);
  const double x0 = (std::floor(b.x_min / d_n) - 1.0) * d_n;
  const double x1 = (std::ceil(b.x_max / d_n) + 1.0) * d_n;
  const double y0 = (std::floor(b.y_min / d_n) - 1.0) * d_n;
  const double y1 = (std::ceil(b.y_max / d_n) + 1.0) * d_n;
  return {{x0, x1, y0, y1},
          static_cast<int>(std::lround((x1 - x0) / d_n)),
          static_cast<int>(std::lround((y1 - y0) / d_n))};
}

std::vector<NodeState> label_nodes(const Polygon& transformed, const AugmentedBox& aug, double d_s,
                                   LabelMode mode, bool parallel) {
  const double d_n = 2.0 * d_s;
  const auto mask_fn = parallel ? kernels::polygon_mask_parallel : kernels::polygon_mask_serial;
  std::vector<NodeState> states(static_cast<std::size_t>(aug.nx) * aug.ny, NodeState::Obstacle);

  if (mode == LabelMode::BetterCoverage) {
    const kernels::Lattice lat{aug.box.x_min + 0.5 * d_n, aug.box.y_min + 0.5 * d_n, d_n, d_n,
                               aug.nx, aug.ny};
    const auto mask = mask_fn(transformed, lat);
    for (std::size_t k = 0; k < mask.size(); ++k) {
      if (mask[k]) states[k] = NodeState::FreeSpace;
    }
    return states;
  }

  const kernels::Lattice sub{aug.box.x_min + 0.5 * d_s, aug.box.y_min + 0.5 * d_s, d_s, d_s,
                             2 * aug.nx, 2 * aug.ny};
  const auto mask = mask_fn(transformed, sub);
  const auto at = [&](int i, int j) { return mask[static_cast<std::size_t>(j) * sub.nx + i]; };
  for (int j = 0; j < aug.ny; ++j) {
    for (int i = 0; i < aug.nx; ++i) {
      if (at(2 * i, 2 * j) && at(2 * i + 1, 2 * j) && at(2 * i, 2 * j + 1) &&
          at(2 * i + 1, 2 * j + 1)) {
        states[static_cast<std::size_t>(j) * aug.nx + i] = NodeState::FreeSpace;
      }
    }
  }
  return states;
}

NodeGrid build_grid(const Polygon& roi, const Placement& placement, double d_s, LabelMode mode,
                    std::span<const NedPoint> uav_positions) {
  const double d_n = node_spacing(d_s);
  if (placement.sx > d_n || placement.sy > d_n) {
    throw InputDomainError("placement shift exceeds the node spacing");
  }
  NodeGrid g;
  g.d_s = d_s;
  g.d_n = d_n;
  g.placement = placement;
  g.pivot = placement_pivot(roi);
  g.mode = mode;
  const Polygon moved = transform_polygon(roi, placement, g.pivot);
  const AugmentedBox aug = augmented_box(moved, d_n);
  g.nx = aug.nx;
  g.ny = aug.ny;
  g.box = aug.box;
  g.standard_box = bounding_box(moved);
  g.states = label_nodes(moved, aug, d_s, mode);
  if (g.free_count() == 0) {
    throw InfeasibleDiscretization("no free node for this placement and scanning density");
  }

  std::vector<int> nodes;
  for (const auto& p : uav_positions) nodes.push_back(nearest_free_node(g, g.to_grid(p)));
  assign_uav_nodes(g, nodes);
  return g;
}

int nearest_free_node(const NodeGrid& grid, NedPoint q) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < static_cast<int>(grid.states.size()); ++k) {
    if (grid.states[k] != NodeState::FreeSpace) continue;
    const NedPoint c = grid.center(k);
    const double d = (c.x - q.x) * (c.x - q.x) + (c.y - q.y) * (c.y - q.y);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

void assign_uav_nodes(NodeGrid& grid, std::span<const int> nodes) {
  for (const auto& c : grid.uav_cells) grid.states[c.node] = NodeState::FreeSpace;
  grid.uav_cells.clear();
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    const int n = nodes[u];
    if (n < 0 || n >= static_cast<int>(grid.states.size()) ||
        grid.states[n] == NodeState::Obstacle) {
      throw FleetConfigurationError("UAV " + std::to_string(u) + " is not on a free node");
    }
    if (grid.states[n] == NodeState::Uav) {
      throw FleetConfigurationError("UAVs " + std::to_string(u) +
                                    " and another UAV snap to the same node");
    }
    grid.states[n] = NodeState::Uav;
    grid.uav_cells.push_back({n, static_cast<int>(u)});
  }
}

std::vector<int> free_components(const NodeGrid& grid) {
  std::vector<int> comp(grid.states.size(), -1);
  int next = 0;
  std::queue<int> q;
  for (int s = 0; s < static_cast<int>(grid.states.size()); ++s) {
    if (!grid.traversable(s) || comp[s] >= 0) continue;
    comp[s] = next;
    q.push(s);
    while (!q.empty()) {
      const int n = q.front();
      q.pop();
      const int i = grid.col(n), j = grid.row(n);
      const int nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
      for (const auto& c : nb) {
        if (c[0] < 0 || c[0] >= grid.nx || c[1] < 0 || c[1] >= grid.ny) continue;
        const int m = grid.index(c[0], c[1]);
        if (grid.traversable(m) && comp[m] < 0) {
          comp[m] = next;
          q.push(m);
        }
      }
    }
    ++next;
  }
  return comp;
}

void write_grid_pgm(const NodeGrid& grid, std::ostream& out) {
  out << "P5\n" << grid.nx << ' ' << grid.ny << "\n255\n";
  for (int j = grid.ny - 1; j >= 0; --j) {
    for (int i = 0; i < grid.nx; ++i) {
      const NodeState s = grid.states[grid.index(i, j)];
      const unsigned char v = s == NodeState::Obstacle ? 0 : (s == NodeState::FreeSpace ? 128 : 255);
      out.put(static_cast<char>(v));
    }
  }
}

}  // namespace mcpp
