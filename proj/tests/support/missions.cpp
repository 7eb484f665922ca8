#include "missions.hpp"

#include <iomanip>
#include <sstream>

namespace oracle {

using namespace mcpp;

MissionSpec mission_from_ned(const Ring& outer, const std::vector<Ring>& holes, double d_s, int uavs,
                             GeoPoint ref) {
  MissionSpec s;
  for (const auto& p : outer) s.roi.push_back(ned_to_wgs84(p, ref));
  for (const auto& h : holes) {
    std::vector<GeoPoint> g;
    for (const auto& p : h) g.push_back(ned_to_wgs84(p, ref));
    s.obstacles.push_back(g);
  }
  s.scanning_density = d_s;
  s.uavs = uavs;
  return s;
}

std::string mission_json(const MissionSpec& spec) {
  std::ostringstream o;
  o << std::setprecision(17);
  auto ring = [&](const std::vector<GeoPoint>& r) {
    o << '[';
    for (std::size_t k = 0; k < r.size(); ++k) o << (k ? "," : "") << '[' << r[k].lat << ',' << r[k].lon << ']';
    o << ']';
  };
  o << "{\"roi\":";
  ring(spec.roi);
  o << ",\"obstacles\":[";
  for (std::size_t k = 0; k < spec.obstacles.size(); ++k) {
    if (k) o << ',';
    ring(spec.obstacles[k]);
  }
  o << "],\"uavs\":" << spec.uavs;
  if (spec.scanning_density) o << ",\"scanning_density_m\":" << *spec.scanning_density;
  o << ",\"sensor\":{\"hfov_deg\":" << spec.sensor.hfov_deg << ",\"overlap\":" << spec.sensor.overlap;
  if (spec.sensor.altitude) o << ",\"altitude_m\":" << *spec.sensor.altitude;
  o << "}";
  if (spec.shares) {
    o << ",\"shares\":[";
    for (std::size_t k = 0; k < spec.shares->p.size(); ++k) o << (k ? "," : "") << spec.shares->p[k];
    o << ']';
  }
  o << ",\"mode\":\"" << (spec.mode == LabelMode::StrictInPoly ? "strict" : "better") << "\"}";
  return o.str();
}

}  // namespace oracle
