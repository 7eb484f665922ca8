#pragma once

#include <span>
#include <vector>

namespace mcpp {

struct CostParams {
  double speed = 3.0;                   // m/s
  double battery_endurance_min = 25.0;  // minutes of flight per battery
  double c1 = 6.0;                      // turn-delay shaping constants
  double c2 = 2.0;
  double fcm = 0.017228;                // cost per flight minute

  void validate() const;
};

struct MissionCostReport {
  std::vector<double> flight_durations_min;  // per UAV
  std::vector<int> batteries;                // per UAV
  int batteries_per_uav = 1;                 // fleet maximum
  double flight_time_min = 0.0;
  double deployment_time_min = 0.0;
  double change_battery_delay_min = 0.0;
  double total_time_min = 0.0;
  double flight_cost = 0.0;
};

/// Length / speed plus a per-turn delay c1*v / (c2 + |v|), both in seconds;
/// returned in minutes.
double flight_duration(double length_m, int turns, const CostParams& params);

/// ceil(duration / endurance), at least one.
int batteries_needed(double duration_min, double endurance_min);

/// 5 minutes plus 3 per UAV.
double deployment_time(int uavs);

/// (batteries - 1) * (2 sqrt(area) / (3 * speed * 60) + 3 * uavs)
double change_battery_delay(int batteries, double area_m2, double speed, int uavs);

/// Fleet figures from per-UAV durations. Batteries are derived from the flight
/// time unless `batteries_override` is positive.
MissionCostReport total_time_and_cost(std::span<const double> durations_min, int uavs,
                                      double area_m2, const CostParams& params,
                                      int batteries_override = 0);

}  // namespace mcpp
