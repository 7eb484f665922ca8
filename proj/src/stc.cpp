#include "mcpp/stc.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "mcpp/errors.hpp"

namespace mcpp {
namespace {

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

struct Candidate {
  int tier;    // 0: tooth edge, 1: spine edge
  int offset;  // distance of the spine edge from the scheme's side
  int order;
  int a;
  int b;
};

enum Dir { kEast = 0, kNorth = 1, kWest = 2, kSouth = 3 };

int direction(int sub_nx, int from, int to) {
  const int d = to - from;
  if (d == 1) return kEast;
  if (d == -1) return kWest;
  if (d == sub_nx) return kNorth;
  if (d == -sub_nx) return kSouth;
  throw ContractViolation("tour step between non-adjacent sub-cells");
}

double tour_signed_area(const SubcellTour& t) {
  const int snx = t.sub_nx();
  double a2 = 0.0;
  for (std::size_t k = 0; k < t.cells.size(); ++k) {
    const int p = t.cells[k], q = t.cells[(k + 1) % t.cells.size()];
    a2 += static_cast<double>(p % snx) * (q / snx) - static_cast<double>(q % snx) * (p / snx);
  }
  return 0.5 * a2;
}

}  // namespace

std::string_view scheme_name(TreeScheme s) {
  switch (s) {
    case TreeScheme::Upper:
      return "upper";
    case TreeScheme::Lower:
      return "lower";
    case TreeScheme::Right:
      return "right";
    case TreeScheme::Left:
      return "left";
  }
  return "?";
}

int subcell_of(int nx, int node, int quadrant) {
  const int i = node % nx, j = node / nx;
  return (2 * j + (quadrant >> 1)) * (2 * nx) + 2 * i + (quadrant & 1);
}

SpanningTree build_mst(const Region& region, TreeScheme scheme) {
  if (region.nodes.empty()) throw ContractViolation("empty region");
  std::vector<char> in(static_cast<std::size_t>(region.nx) * region.ny, 0);
  for (int n : region.nodes) in[n] = 1;

  std::vector<int> nodes = region.nodes;
  std::sort(nodes.begin(), nodes.end());
  const bool vertical_teeth = scheme == TreeScheme::Upper || scheme == TreeScheme::Lower;

  std::vector<Candidate> cand;
  int order = 0;
  for (int n : nodes) {
    const int i = n % region.nx, j = n / region.nx;
    if (i + 1 < region.nx && in[n + 1]) {
      // horizontal edge on row j
      int tier = vertical_teeth ? 1 : 0;
      int offset = 0;
      if (scheme == TreeScheme::Upper) offset = region.ny - 1 - j;
      if (scheme == TreeScheme::Lower) offset = j;
      cand.push_back({tier, offset, order++, n, n + 1});
    }
    if (j + 1 < region.ny && in[n + region.nx]) {
      // vertical edge on column i
      int tier = vertical_teeth ? 0 : 1;
      int offset = 0;
      if (scheme == TreeScheme::Right) offset = region.nx - 1 - i;
      if (scheme == TreeScheme::Left) offset = i;
      cand.push_back({tier, offset, order++, n, n + region.nx});
    }
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.tier, x.offset, x.order) < std::tie(y.tier, y.offset, y.order);
  });

  SpanningTree tree{region.nx, region.ny, nodes, {}, scheme};
  DisjointSets sets(in.size());
  for (const auto& c : cand) {
    if (sets.unite(c.a, c.b)) tree.edges.emplace_back(c.a, c.b);
  }
  if (tree.edges.size() + 1 != nodes.size()) {
    throw ContractViolation("region is not 4-connected");
  }
  return tree;
}

SubcellTour circumnavigate(const SpanningTree& tree, int start_subcell) {
  const int nx = tree.nx;
  const int snx = 2 * nx;
  const std::size_t n_nodes = static_cast<std::size_t>(nx) * tree.ny;
  // Tree adjacency flags per node: bit Dir set if an edge leaves that way.
  std::vector<unsigned char> links(n_nodes, 0);
  std::vector<char> in(n_nodes, 0);
  for (int n : tree.nodes) in[n] = 1;
  for (auto [a, b] : tree.edges) {
    if (a > b) std::swap(a, b);
    if (a / nx == b / nx) {
      links[a] |= 1u << kEast;
      links[b] |= 1u << kWest;
    } else {
      links[a] |= 1u << kNorth;
      links[b] |= 1u << kSouth;
    }
  }
  const int start_node = (start_subcell / snx / 2) * nx + (start_subcell % snx) / 2;
  if (start_subcell < 0 || start_node >= static_cast<int>(n_nodes) || !in[start_node]) {
    throw ContractViolation("start sub-cell is not on the tree");
  }

  // Each sub-cell has two perimeter sides; each side links either to the
  // sibling sub-cell (no tree edge there) or across to the neighbor node.
  const auto next_of = [&](int sc) {
    const int si = sc % snx, sj = sc / snx;
    const int node = (sj / 2) * nx + si / 2;
    const bool east_half = si & 1, north_half = sj & 1;
    const unsigned char l = links[node];
    std::array<int, 2> out{};
    if (north_half) {
      out[0] = (l & (1u << kNorth)) ? sc + snx : (east_half ? sc - 1 : sc + 1);
    } else {
      out[0] = (l & (1u << kSouth)) ? sc - snx : (east_half ? sc - 1 : sc + 1);
    }
    if (east_half) {
      out[1] = (l & (1u << kEast)) ? sc + 1 : (north_half ? sc - snx : sc + snx);
    } else {
      out[1] = (l & (1u << kWest)) ? sc - 1 : (north_half ? sc - snx : sc + snx);
    }
    return out;
  };

  SubcellTour tour{nx, tree.ny, {}};
  const std::size_t expected = 4 * tree.nodes.size();
  tour.cells.reserve(expected);
  int prev = -1, cur = start_subcell;
  do {
    tour.cells.push_back(cur);
    const auto nb = next_of(cur);
    const int nxt = nb[0] != prev ? nb[0] : nb[1];
    prev = cur;
    cur = nxt;
    if (tour.cells.size() > expected) throw ContractViolation("tour does not close");
  } while (cur != start_subcell);
  if (tour.cells.size() != expected) throw ContractViolation("tour misses sub-cells");

  if (tour_signed_area(tour) > 0.0) std::reverse(tour.cells.begin() + 1, tour.cells.end());
  return tour;
}

int count_turns(const SubcellTour& tour) {
  const std::size_t n = tour.cells.size();
  if (n < 2) return 0;
  const int snx = tour.sub_nx();
  int turns = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const int before = direction(snx, tour.cells[(k + n - 1) % n], tour.cells[k]);
    const int after = direction(snx, tour.cells[k], tour.cells[(k + 1) % n]);
    turns += before != after;
  }
  return turns;
}

CoveragePath plan_region_path(const NodeGrid& grid, std::span<const int> region_nodes,
                              int start_node, NedPoint start_hint, GeoPoint ned_ref, int uav) {
  const Region region{grid.nx, grid.ny, {region_nodes.begin(), region_nodes.end()}};
  if (std::find(region.nodes.begin(), region.nodes.end(), start_node) == region.nodes.end()) {
    throw ContractViolation("start node is outside its region");
  }
  int start_q = 0;
  double best_d = 0.0;
  for (int q = 0; q < 4; ++q) {
    const NedPoint c = grid.subcell_center(start_node, q);
    const double d = (c.x - start_hint.x) * (c.x - start_hint.x) +
                     (c.y - start_hint.y) * (c.y - start_hint.y);
    if (q == 0 || d < best_d) {
      best_d = d;
      start_q = q;
    }
  }
  const int start_sc = subcell_of(grid.nx, start_node, start_q);

  SubcellTour best_tour;
  int best_turns = -1;
  TreeScheme best_scheme = TreeScheme::Upper;
  for (TreeScheme s : kAllSchemes) {
    SubcellTour t = circumnavigate(build_mst(region, s), start_sc);
    const int turns = count_turns(t);
    if (best_turns < 0 || turns < best_turns) {
      best_turns = turns;
      best_tour = std::move(t);
      best_scheme = s;
    }
  }

  const int snx = best_tour.sub_nx();
  const auto center = [&](int sc) {
    const int si = sc % snx, sj = sc / snx;
    return NedPoint{grid.box.x_min + (si + 0.5) * grid.d_s, grid.box.y_min + (sj + 0.5) * grid.d_s};
  };
  const std::size_t n = best_tour.cells.size();
  CoveragePath path;
  path.uav = uav;
  path.turns = best_turns;
  path.scheme = best_scheme;
  path.length = static_cast<double>(n) * grid.d_s;
  path.subcells = best_tour.cells;
  path.waypoints_ned.push_back(grid.to_world(center(best_tour.cells[0])));
  for (std::size_t k = 1; k < n; ++k) {
    const int before = direction(snx, best_tour.cells[k - 1], best_tour.cells[k]);
    const int after = direction(snx, best_tour.cells[k], best_tour.cells[(k + 1) % n]);
    if (before != after) path.waypoints_ned.push_back(grid.to_world(center(best_tour.cells[k])));
  }
  path.waypoints_ned.push_back(path.waypoints_ned.front());
  path.waypoints_wgs84.reserve(path.waypoints_ned.size());
  for (const auto& p : path.waypoints_ned) path.waypoints_wgs84.push_back(ned_to_wgs84(p, ned_ref));
  return path;
}

}  // namespace mcpp
