#include "mcpp/darp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "mcpp/errors.hpp"

namespace mcpp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Lattice4 {
  int nx;
  int ny;

  template <typename F>
  void for_neighbors(int n, F&& f) const {
    const int i = n % nx, j = n / nx;
    if (i + 1 < nx) f(n + 1);
    if (i > 0) f(n - 1);
    if (j + 1 < ny) f(n + nx);
    if (j > 0) f(n - nx);
  }
};

// Multi-source BFS over nodes accepted by `pass`; -1 where unreached.
template <typename Pass>
std::vector<int> bfs(const Lattice4& lat, std::span<const int> sources, Pass&& pass) {
  std::vector<int> dist(static_cast<std::size_t>(lat.nx) * lat.ny, -1);
  std::deque<int> q;
  for (int s : sources) {
    dist[s] = 0;
    q.push_back(s);
  }
  while (!q.empty()) {
    const int n = q.front();
    q.pop_front();
    lat.for_neighbors(n, [&](int m) {
      if (dist[m] < 0 && pass(m)) {
        dist[m] = dist[n] + 1;
        q.push_back(m);
      }
    });
  }
  return dist;
}


// Greedy boundary transfer from over-share to under-share neighbors; each
// move lowers the share cost and keeps the donor connected.
void rebalance(const Lattice4& lat, std::span<const int> nodes, std::vector<int>& owner, std::vector<int>& counts,
               std::span<const int> starts, std::span<const double> targets, double tol) {
  const int uavs = static_cast<int>(counts.size());
  const auto dev = [&](int u) { return counts[u] - targets[u]; };
  for (;;) {
    double worst = 0.0;
    for (int u = 0; u < uavs; ++u) worst = std::max(worst, std::abs(dev(u)));
    if (worst <= tol + 1e-9) return;

    struct Move {
      double gain;
      int node, to;
    };
    std::vector<Move> moves;
    for (int x : nodes) {
      const int u = owner[x];
      if (x == starts[u]) continue;
      lat.for_neighbors(x, [&](int y) {
        const int v = owner[y];
        if (v < 0 || v == u) return;
        const double gain = dev(u) - dev(v);
        if (gain > 1.0 + 1e-9) moves.push_back({gain, x, v});
      });
    }
    std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
      return a.gain != b.gain ? a.gain > b.gain : a.node != b.node ? a.node < b.node : a.to < b.to;
    });
    bool moved = false;
    for (const auto& m : moves) {
      const int u = owner[m.node];
      const int src[1] = {starts[u]};
      const auto d = bfs(lat, src, [&](int k) { return owner[k] == u && k != m.node; });
      const auto reached = std::count_if(nodes.begin(), nodes.end(), [&](int k) { return d[k] >= 0; });
      if (reached != counts[u] - 1) continue;
      owner[m.node] = m.to;
      --counts[u];
      ++counts[m.to];
      moved = true;
      break;
    }
    if (!moved) return;
  }
}

}  // namespace

ShareVector ShareVector::equal(int uavs) {
  if (uavs < 1) throw InputDomainError("at least one UAV is required");
  return {std::vector<double>(static_cast<std::size_t>(uavs), 1.0 / uavs)};
}

void ShareVector::validate() const {
  if (p.empty()) throw InputDomainError("share vector is empty");
  double sum = 0.0;
  for (double v : p) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputDomainError("shares must be positive");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InputDomainError("shares must sum to 1");
}

int RegionAssignment::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

double default_tolerance(int free_nodes) { return std::max(1.0, 0.005 * free_nodes); }

double share_cost(std::span<const int> counts, std::span<const double> shares) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  double c = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double d = counts[i] - shares[i] * total;
    c += d * d;
  }
  return 0.5 * c;
}

bool region_connected(const RegionAssignment& a, int uav) {
  if (uav < 0 || uav >= static_cast<int>(a.counts.size())) {
    throw InputDomainError("unknown UAV id " + std::to_string(uav));
  }
  const int start = a.start_nodes[uav];
  if (a.owner[start] != uav) return false;
  const Lattice4 lat{a.nx, a.ny};
  const int src[1] = {start};
  const auto dist = bfs(lat, src, [&](int m) { return a.owner[m] == uav; });
  const auto reached = std::count_if(dist.begin(), dist.end(), [](int d) { return d >= 0; });
  return reached == a.counts[uav];
}

RegionAssignment divide(const NodeGrid& grid, const ShareVector& shares, const DarpParams& params,
                        std::uint64_t seed) {
  shares.validate();
  const int uavs = static_cast<int>(grid.uav_cells.size());
  if (uavs != static_cast<int>(shares.p.size())) {
    throw InputDomainError("number of UAV nodes does not match the share vector");
  }
  const int total = grid.free_count();
  if (total < uavs) throw InputDomainError("fewer free nodes than UAVs");

  const Lattice4 lat{grid.nx, grid.ny};
  const std::size_t n_nodes = grid.states.size();
  const auto traversable = [&](int m) { return grid.traversable(m); };

  std::vector<int> starts(uavs);
  for (const auto& c : grid.uav_cells) starts[c.uav] = c.node;

  // Geodesic distance fields.
  std::vector<std::vector<double>> field(uavs, std::vector<double>(n_nodes, kInf));
  std::vector<std::vector<double>> base;
  std::vector<char> reachable(n_nodes, 0);
  for (int u = 0; u < uavs; ++u) {
    bool has_neighbor = false;
    lat.for_neighbors(starts[u], [&](int m) { has_neighbor |= grid.traversable(m); });
    if (!has_neighbor && total > 1) {
      throw InfeasiblePartition("start node of UAV " + std::to_string(u) +
                                " is disconnected from the free space");
    }
    const int src[1] = {starts[u]};
    const auto d = bfs(lat, src, traversable);
    for (std::size_t k = 0; k < n_nodes; ++k) {
      if (d[k] >= 0) {
        field[u][k] = d[k];
        reachable[k] = 1;
      }
    }
  }
  std::vector<int> nodes;
  for (int k = 0; k < static_cast<int>(n_nodes); ++k) {
    if (!grid.traversable(k)) continue;
    if (!reachable[k]) throw InfeasiblePartition("a free node is unreachable from every UAV");
    nodes.push_back(k);
  }

  base = field;

  const double tol = params.tolerance >= 0.0 ? params.tolerance : default_tolerance(total);
  const int cap = params.max_cycles > 0 ? params.max_cycles : 100 * (grid.nx + grid.ny);
  std::vector<double> steer(uavs, 1.0);  // m_i, clamped
  std::vector<double> scale(uavs, 1.0);  // absorbs field renormalization
  std::mt19937_64 rng(seed);

  RegionAssignment out;
  out.nx = grid.nx;
  out.ny = grid.ny;
  out.start_nodes = starts;
  out.shares = shares.p;
  out.tolerance = tol;

  std::vector<int> owner(n_nodes, -1);
  std::vector<int> counts(uavs, 0);
  RegionAssignment best;
  double best_cost = kInf;
  double best_any_cost = kInf;
  int stall = 0;
  int since_best = 0;
  const int restart_after = 10 * (grid.nx + grid.ny);

  for (int cycle = 1; cycle <= cap; ++cycle) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int k : nodes) {
      int arg = -1;
      double val = kInf;
      for (int u = 0; u < uavs; ++u) {
        const double v = steer[u] * scale[u] * field[u][k];
        if (v < val) {
          val = v;
          arg = u;
        }
      }
      owner[k] = arg;
    }
    for (int u = 0; u < uavs; ++u) owner[starts[u]] = u;
    for (int k : nodes) ++counts[owner[k]];

    const double cost = share_cost(counts, shares.p);
    double max_dev = 0.0;
    for (int u = 0; u < uavs; ++u) {
      max_dev = std::max(max_dev, std::abs(counts[u] - shares.p[u] * total));
    }

    // Connectivity of each region, and its main component.
    std::vector<std::vector<int>> main_dist(uavs);
    std::vector<char> split(uavs, 0);
    int disconnected = 0;
    for (int u = 0; u < uavs; ++u) {
      const int src[1] = {starts[u]};
      main_dist[u] = bfs(lat, src, [&](int m) { return owner[m] == u; });
      const auto reached =
          std::count_if(nodes.begin(), nodes.end(), [&](int k) { return main_dist[u][k] >= 0; });
      if (reached != counts[u]) {
        split[u] = 1;
        ++disconnected;
      }
    }
    if (params.record_trace) out.trace.push_back({cycle, cost, max_dev, disconnected});

    ++since_best;
    if (disconnected == 0 && cost < best_cost) {
      since_best = 0;
      best_cost = cost;
      best.owner = owner;
      best.counts = counts;
      best.iterations = cycle;
      best.cost = cost;
    }
    if (disconnected == 0 && max_dev <= tol + 1e-9) {
      out.owner = owner;
      out.counts = counts;
      out.iterations = cycle;
      out.converged = true;
      out.cost = cost;
      return out;
    }

    if (cost < best_any_cost) {
      best_any_cost = cost;
      stall = 0;
    } else if (++stall >= params.stall_cycles) {
      double mean = 0.0;
      std::size_t cnt = 0;
      for (int u = 0; u < uavs; ++u) {
        for (int k : nodes) {
          if (std::isfinite(field[u][k])) {
            mean += field[u][k];
            ++cnt;
          }
        }
      }
      mean = cnt ? mean / static_cast<double>(cnt) : 1.0;
      std::normal_distribution<double> noise(0.0, params.noise_scale * mean);
      for (int u = 0; u < uavs; ++u) {
        for (int k : nodes) {
          if (k == starts[u] || !std::isfinite(field[u][k])) continue;
          field[u][k] = std::max(0.0, field[u][k] + noise(rng));
        }
      }
      stall = 0;
    }

    // Restart from perturbed distance fields once the search is stuck.
    const bool saturated = std::any_of(steer.begin(), steer.end(), [](double m) { return m <= 1e-3 || m >= 1e3; });
    if (saturated || since_best >= restart_after) {
      std::uniform_real_distribution<double> jitter(0.9, 1.1);
      for (int u = 0; u < uavs; ++u) {
        for (int k : nodes) field[u][k] = k == starts[u] ? 0.0 : base[u][k] * jitter(rng);
      }
      std::fill(steer.begin(), steer.end(), 1.0);
      std::fill(scale.begin(), scale.end(), 1.0);
      since_best = 0;
      stall = 0;
      continue;
    }

    // Connectivity repair: favor nodes near the start component, penalize
    // nodes near orphan fragments.
    for (int u = 0; u < uavs; ++u) {
      if (!split[u]) continue;
      std::vector<int> main_cells, orphan_cells;
      for (int k : nodes) {
        if (owner[k] != u) continue;
        (main_dist[u][k] >= 0 ? main_cells : orphan_cells).push_back(k);
      }
      const auto to_main = bfs(lat, main_cells, traversable);
      const auto to_orphan = bfs(lat, orphan_cells, traversable);
      double lo = kInf, hi = -kInf;
      std::vector<double> diff(n_nodes, 0.0);
      for (int k : nodes) {
        if (to_main[k] < 0 || to_orphan[k] < 0) continue;
        diff[k] = to_main[k] - to_orphan[k];
        lo = std::min(lo, diff[k]);
        hi = std::max(hi, diff[k]);
      }
      if (!(hi > lo)) continue;
      const double d = params.repair_delta;
      double fmax = 0.0;
      for (int k : nodes) {
        if (to_main[k] >= 0 && to_orphan[k] >= 0) {
          field[u][k] *= (1.0 - d) + 2.0 * d * (diff[k] - lo) / (hi - lo);
        }
        if (std::isfinite(field[u][k])) fmax = std::max(fmax, field[u][k]);
      }
      if (fmax > 0.0) {
        for (int k : nodes) field[u][k] /= fmax;
        scale[u] *= fmax;
      }
    }

    for (int u = 0; u < uavs; ++u) {
      const double dev = (counts[u] - shares.p[u] * total) / total;
      steer[u] = std::clamp(steer[u] * (1.0 + params.eta * dev), 1e-3, 1e3);
    }
  }

  if (!std::isfinite(best_cost)) {
    throw InfeasiblePartition("no connected division found within the cycle cap");
  }
  std::vector<double> targets(uavs);
  for (int u = 0; u < uavs; ++u) targets[u] = shares.p[u] * total;
  rebalance(lat, nodes, best.owner, best.counts, starts, targets, tol);
  double max_dev = 0.0;
  for (int u = 0; u < uavs; ++u) max_dev = std::max(max_dev, std::abs(best.counts[u] - targets[u]));
  out.owner = std::move(best.owner);
  out.counts = std::move(best.counts);
  out.iterations = cap;
  out.converged = max_dev <= tol + 1e-9;
  out.cost = share_cost(out.counts, shares.p);
  return out;
}

void write_owner_ppm(const RegionAssignment& a, std::ostream& out) {
  static constexpr unsigned char palette[][3] = {
      {230, 25, 75},  {60, 180, 75},   {255, 225, 25}, {0, 130, 200},  {245, 130, 48},
      {145, 30, 180}, {70, 240, 240},  {240, 50, 230}, {210, 245, 60}, {250, 190, 212},
      {0, 128, 128},  {220, 190, 255}, {170, 110, 40}, {255, 250, 200}, {128, 0, 0}};
  constexpr int n_colors = sizeof(palette) / sizeof(palette[0]);
  out << "P6\n" << a.nx << ' ' << a.ny << "\n255\n";
  for (int j = a.ny - 1; j >= 0; --j) {
    for (int i = 0; i < a.nx; ++i) {
      const int o = a.owner[static_cast<std::size_t>(j) * a.nx + i];
      const bool start = std::find(a.start_nodes.begin(), a.start_nodes.end(),
                                   j * a.nx + i) != a.start_nodes.end();
      for (int c = 0; c < 3; ++c) {
        const unsigned char v = o < 0 ? 0 : (start ? 255 : palette[o % n_colors][c]);
        out.put(static_cast<char>(v));
      }
    }
  }
}

void write_darp_trace_csv(std::span<const DarpTraceRecord> trace, std::ostream& out) {
  out << "cycle,cost,max_deviation,disconnected\n";
  for (const auto& r : trace) {
    out << r.cycle << ',' << r.cost << ',' << r.max_deviation << ',' << r.disconnected << '\n';
  }
}

}  // namespace mcpp
