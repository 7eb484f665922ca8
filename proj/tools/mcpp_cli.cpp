#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "mcpp/errors.hpp"
#include "mcpp/mission_io.hpp"

namespace fs = std::filesystem;
using namespace mcpp;

namespace {

enum Exit { kOk = 0, kOther = 1, kInvalidInput = 2, kInfeasibleGrid = 3, kInfeasiblePartition = 4 };

std::ofstream open_out(const fs::path& p, bool binary = false) {
  std::ofstream out(p, binary ? std::ios::binary : std::ios::out);
  if (!out) throw InputDomainError("cannot write " + p.string());
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputDomainError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_coverage_artifacts(const CoverageReport& rep, const fs::path& dir) {
  auto heat = open_out(dir / "heatmap.pgm", true);
  write_heatmap_pgm(rep, heat);
  auto hist = open_out(dir / "histogram.csv");
  write_histogram_csv(rep, hist);
}

template <class F>
int guarded(F&& body) {
  try {
    body();
    return kOk;
  } catch (const InfeasibleDiscretization& e) {
    std::cerr << "infeasible discretization: " << e.what() << '\n';
    return kInfeasibleGrid;
  } catch (const InfeasiblePartition& e) {
    std::cerr << "infeasible partition: " << e.what() << '\n';
    return kInfeasiblePartition;
  } catch (const InputDomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-UAV coverage path planner"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int threads = 0;

  auto* plan_cmd = app.add_subcommand("plan", "plan a mission and write its artifacts");
  std::string mission, out_dir = ".", ablation, mode;
  bool debug = false;
  plan_cmd->add_option("--mission", mission, "mission JSON")->required();
  plan_cmd->add_option("--out", out_dir, "output directory");
  plan_cmd->add_option("--seed", seed, "random seed");
  plan_cmd->add_option("--threads", threads, "worker threads (0 = default)");
  plan_cmd->add_flag("--debug", debug, "also write grid.pgm, regions.ppm and traces");
  plan_cmd->add_option("--ablation", ablation, "placement objective")
      ->check(CLI::IsMember({"none", "j1", "j1j2", "full"}));
  plan_cmd->add_option("--mode", mode, "node labeling")->check(CLI::IsMember({"strict", "better"}));

  auto* eval_cmd = app.add_subcommand("evaluate", "coverage report for stored paths");
  std::string paths_file, eval_mission, eval_out = ".";
  eval_cmd->add_option("paths", paths_file, "paths GeoJSON")->required();
  eval_cmd->add_option("--mission", eval_mission, "mission JSON")->required();
  eval_cmd->add_option("--out", eval_out, "output directory");
  eval_cmd->add_option("--threads", threads, "worker threads (0 = default)");

  auto* cost_cmd = app.add_subcommand("costmodel", "mission time and cost from a flight time");
  double ft = 0.0, area = 0.0;
  int vn = 1, bats = 0;
  CostParams cp;
  cost_cmd->add_option("--ft", ft, "flight time in minutes")->required();
  cost_cmd->add_option("--vn", vn, "number of UAVs");
  cost_cmd->add_option("--area", area, "ROI area in m^2");
  cost_cmd->add_option("--bats", bats, "batteries per UAV (default: from endurance)");
  cost_cmd->add_option("--speed", cp.speed, "speed in m/s");
  cost_cmd->add_option("--endurance", cp.battery_endurance_min, "battery endurance in minutes");
  cost_cmd->add_option("--fcm", cp.fcm, "cost per flight minute");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidInput;
  }
  if (threads > 0) omp_set_num_threads(threads);

  if (*plan_cmd) {
    return guarded([&] {
      MissionFile mf = read_mission_file(mission);
      for (const auto& w : mf.warnings) std::cerr << "warning: " << w << '\n';
      auto& spec = mf.spec;
      spec.seed = seed;
      if (!ablation.empty()) {
        static const std::map<std::string, Ablation> kAbl = {
            {"none", Ablation::None}, {"j1", Ablation::J1}, {"j1j2", Ablation::J1J2}, {"full", Ablation::Full}};
        spec.ablation = kAbl.at(ablation);
      }
      if (!mode.empty()) spec.mode = mode == "strict" ? LabelMode::StrictInPoly : LabelMode::BetterCoverage;
      spec.placement.record_trace = debug;
      spec.darp.record_trace = debug;

      const MissionPlan plan = plan_mission(spec);
      const fs::path dir(out_dir);
      fs::create_directories(dir);
      {
        auto o = open_out(dir / "paths.geojson");
        write_paths_geojson(plan, o);
      }
      {
        auto o = open_out(dir / "metrics.json");
        o << metrics_json(plan, mf.warnings);
      }
      write_coverage_artifacts(plan.coverage, dir);
      if (debug) {
        auto g = open_out(dir / "grid.pgm", true);
        write_grid_pgm(plan.grid, g);
        auto r = open_out(dir / "regions.ppm", true);
        write_owner_ppm(plan.assignment, r);
        auto pt = open_out(dir / "placement_trace.csv");
        write_trace_csv(plan.placement.trace, pt);
        auto dt = open_out(dir / "darp_trace.csv");
        write_darp_trace_csv(plan.assignment.trace, dt);
      }
      std::cout << std::fixed << std::setprecision(2) << "PoC " << plan.coverage.poc << " %  PoOC "
                << plan.coverage.pooc << " %  turns " << plan.coverage.metrics.turns << "  length "
                << plan.coverage.metrics.length_km << " km  total " << plan.cost.total_time_min
                << " min  cost " << plan.cost.flight_cost << '\n';
    });
  }

  if (*eval_cmd) {
    return guarded([&] {
      MissionFile mf = read_mission_file(eval_mission);
      for (const auto& w : mf.warnings) std::cerr << "warning: " << w << '\n';
      auto paths = read_paths_geojson(slurp(paths_file));
      const MissionContext ctx = resolve_mission(mf.spec);
      const CoverageReport rep = evaluate_wgs84_paths(std::move(paths), ctx, mf.spec.coverage_cell);
      const fs::path dir(eval_out);
      fs::create_directories(dir);
      {
        auto o = open_out(dir / "coverage.json");
        o << coverage_json(rep);
      }
      write_coverage_artifacts(rep, dir);
      std::cout << std::fixed << std::setprecision(2) << "PoC " << rep.poc << " %  PoOC " << rep.pooc
                << " %\n";
    });
  }

  return guarded([&] {
    std::vector<double> durations{ft};
    const auto r = total_time_and_cost(durations, vn, area, cp, bats);
    std::cout << std::fixed << std::setprecision(2) << "FlightTime        " << r.flight_time_min
              << " min\nBatteries/UAV     " << r.batteries_per_uav << "\nDeploymentTime    "
              << r.deployment_time_min << " min\nChangeBatteryDelay " << r.change_battery_delay_min
              << " min\nTotalTime         " << r.total_time_min << " min\nFlightCost        "
              << r.flight_cost << '\n';
  });
}
