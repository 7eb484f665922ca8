#include "mcpp/cost.hpp"

#include <algorithm>
#include <cmath>

#include "mcpp/errors.hpp"

namespace mcpp {

void CostParams::validate() const {
  if (!(speed > 0.0)) throw InputDomainError("speed must be positive");
  if (!(battery_endurance_min > 0.0)) throw InputDomainError("battery endurance must be positive");
  if (!(c2 + std::abs(speed) > 0.0)) throw InputDomainError("c2 + |speed| must be positive");
  if (!(fcm >= 0.0)) throw InputDomainError("flight cost per minute must be non-negative");
}

double flight_duration(double length_m, int turns, const CostParams& params) {
  params.validate();
  if (length_m < 0.0 || turns < 0) throw InputDomainError("negative length or turn count");
  const double per_turn = params.c1 * params.speed / (params.c2 + std::abs(params.speed));
  return (length_m / params.speed + turns * per_turn) / 60.0;
}

int batteries_needed(double duration_min, double endurance_min) {
  if (!(endurance_min > 0.0) || duration_min < 0.0) {
    throw InputDomainError("invalid duration or endurance");
  }
  return std::max(1, static_cast<int>(std::ceil(duration_min / endurance_min)));
}

double deployment_time(int uavs) {
  if (uavs < 0) throw InputDomainError("negative UAV count");
  return 5.0 + 3.0 * uavs;
}

double change_battery_delay(int batteries, double area_m2, double speed, int uavs) {
  if (batteries < 1 || area_m2 < 0.0 || !(speed > 0.0) || uavs < 0) {
    throw InputDomainError("invalid change-battery-delay arguments");
  }
  return (batteries - 1) * (2.0 * std::sqrt(area_m2) / (3.0 * speed * 60.0) + 3.0 * uavs);
}

MissionCostReport total_time_and_cost(std::span<const double> durations_min, int uavs,
                                      double area_m2, const CostParams& params,
                                      int batteries_override) {
  params.validate();
  if (uavs < 1) throw InputDomainError("at least one UAV is required");
  if (durations_min.empty()) throw InputDomainError("no flight durations");

  MissionCostReport r;
  r.flight_durations_min.assign(durations_min.begin(), durations_min.end());
  for (double d : durations_min) {
    r.batteries.push_back(batteries_needed(d, params.battery_endurance_min));
  }
  r.flight_time_min = *std::max_element(durations_min.begin(), durations_min.end());
  r.batteries_per_uav = batteries_override > 0
                            ? batteries_override
                            : *std::max_element(r.batteries.begin(), r.batteries.end());
  r.deployment_time_min = deployment_time(uavs);
  r.change_battery_delay_min = change_battery_delay(r.batteries_per_uav, area_m2, params.speed, uavs);
  r.total_time_min = r.flight_time_min + r.deployment_time_min + r.change_battery_delay_min;
  r.flight_cost = (r.total_time_min - r.deployment_time_min - (r.batteries_per_uav - 1) * 3.0) *
                  uavs * params.fcm;
  return r;
}

}  // namespace mcpp
