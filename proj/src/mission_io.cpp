#include "mcpp/mission_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mcpp/errors.hpp"

namespace mcpp {
namespace {

using nlohmann::json;

class Reader {
public:
  explicit Reader(std::vector<std::string>& warnings) : warnings_(warnings) {}

  void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> known) {
    if (!obj.is_object()) throw InputDomainError(where + " must be an object");
    std::set<std::string> k(known.begin(), known.end());
    for (const auto& [key, _] : obj.items()) {
      if (!k.count(key)) warnings_.push_back("unknown field " + where + "." + key);
    }
  }

private:
  std::vector<std::string>& warnings_;
};

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw InputDomainError(what + " must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw InputDomainError(what + " must be an integer");
  return v.get<int>();
}

template <class T>
void maybe(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  if constexpr (std::is_same_v<T, int>) {
    out = integer(obj[key], where + "." + key);
  } else {
    out = number(obj[key], where + "." + key);
  }
}

// [lat, lon] pairs, or [lon, lat] when `lonlat` (GeoJSON order).
std::vector<GeoPoint> ring(const json& v, const std::string& what, bool lonlat) {
  if (!v.is_array()) throw InputDomainError(what + " must be an array of coordinates");
  std::vector<GeoPoint> out;
  for (const auto& c : v) {
    if (!c.is_array() || c.size() < 2) throw InputDomainError(what + " has a malformed coordinate");
    const double a = number(c[0], what), b = number(c[1], what);
    out.push_back(lonlat ? GeoPoint{b, a} : GeoPoint{a, b});
  }
  if (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

void read_geojson_polygon(const json& v, MissionSpec& spec) {
  const json* g = &v;
  if (v.value("type", "") == "Feature") {
    if (!v.contains("geometry")) throw InputDomainError("roi feature has no geometry");
    g = &v["geometry"];
  }
  if (g->value("type", "") != "Polygon" || !g->contains("coordinates") ||
      !(*g)["coordinates"].is_array() || (*g)["coordinates"].empty()) {
    throw InputDomainError("roi must be a coordinate array or a GeoJSON Polygon");
  }
  const auto& rings = (*g)["coordinates"];
  spec.roi = ring(rings[0], "roi", true);
  for (std::size_t k = 1; k < rings.size(); ++k) {
    spec.obstacles.push_back(ring(rings[k], "roi hole", true));
  }
}

json point(GeoPoint g) { return json::array({g.lat, g.lon}); }

}  // namespace

MissionFile parse_mission(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputDomainError(std::string("mission is not valid JSON: ") + e.what());
  }
  MissionFile f;
  auto& s = f.spec;
  Reader r(f.warnings);
  r.check_keys(doc, "mission",
               {"roi", "obstacles", "uavs", "initial_positions", "shares", "sensor",
                "scanning_density_m", "mode", "speed", "gimbal_pitch_deg", "placement", "darp",
                "cost", "coverage_cell_m", "ablation"});

  if (!doc.contains("roi")) throw InputDomainError("mission has no roi");
  if (doc["roi"].is_object()) {
    read_geojson_polygon(doc["roi"], s);
  } else {
    s.roi = ring(doc["roi"], "roi", false);
  }
  if (doc.contains("obstacles")) {
    if (!doc["obstacles"].is_array()) throw InputDomainError("obstacles must be an array");
    for (const auto& o : doc["obstacles"]) s.obstacles.push_back(ring(o, "obstacle", false));
  }
  if (s.roi.size() < 3) throw InputDomainError("ROI needs at least 3 vertices");

  maybe(doc, "uavs", s.uavs, "mission");
  if (s.uavs < 1) throw InputDomainError("uavs must be at least 1");

  if (doc.contains("initial_positions")) {
    const auto& v = doc["initial_positions"];
    if (v.is_string()) {
      if (v.get<std::string>() != "auto") throw InputDomainError("initial_positions must be \"auto\" or a list");
    } else {
      std::vector<GeoPoint> pts;
      if (!v.is_array()) throw InputDomainError("initial_positions must be \"auto\" or a list");
      for (const auto& c : v) {
        if (!c.is_array() || c.size() < 2) throw InputDomainError("malformed initial position");
        pts.push_back({number(c[0], "initial position"), number(c[1], "initial position")});
      }
      s.initial_positions = std::move(pts);
    }
  }
  if (doc.contains("shares")) {
    const auto& v = doc["shares"];
    if (v.is_string()) {
      if (v.get<std::string>() != "equal") throw InputDomainError("shares must be \"equal\" or a list");
    } else {
      if (!v.is_array()) throw InputDomainError("shares must be \"equal\" or a list");
      ShareVector sv;
      for (const auto& x : v) sv.p.push_back(number(x, "share"));
      s.shares = std::move(sv);
    }
  }
  if (doc.contains("sensor")) {
    const auto& v = doc["sensor"];
    r.check_keys(v, "sensor", {"altitude_m", "hfov_deg", "h_res_px", "overlap"});
    if (v.contains("altitude_m")) s.sensor.altitude = number(v["altitude_m"], "sensor.altitude_m");
    maybe(v, "hfov_deg", s.sensor.hfov_deg, "sensor");
    maybe(v, "h_res_px", s.sensor.h_res_px, "sensor");
    maybe(v, "overlap", s.sensor.overlap, "sensor");
  }
  if (doc.contains("scanning_density_m")) {
    s.scanning_density = number(doc["scanning_density_m"], "scanning_density_m");
  }
  if (doc.contains("mode")) {
    const auto m = doc["mode"].is_string() ? doc["mode"].get<std::string>() : "";
    if (m == "strict") {
      s.mode = LabelMode::StrictInPoly;
    } else if (m == "better") {
      s.mode = LabelMode::BetterCoverage;
    } else {
      throw InputDomainError("mode must be \"strict\" or \"better\"");
    }
  }
  if (doc.contains("ablation")) {
    const auto a = doc["ablation"].is_string() ? doc["ablation"].get<std::string>() : "";
    if (a == "none") s.ablation = Ablation::None;
    else if (a == "j1") s.ablation = Ablation::J1;
    else if (a == "j1j2") s.ablation = Ablation::J1J2;
    else if (a == "full") s.ablation = Ablation::Full;
    else throw InputDomainError("ablation must be none, j1, j1j2 or full");
  }
  maybe(doc, "speed", s.speed, "mission");
  maybe(doc, "gimbal_pitch_deg", s.gimbal_pitch_deg, "mission");
  maybe(doc, "coverage_cell_m", s.coverage_cell, "mission");

  if (doc.contains("placement")) {
    const auto& v = doc["placement"];
    r.check_keys(v, "placement",
                 {"a", "b", "c", "initial_temperature", "cooling", "proposals_per_temperature",
                  "min_temperature", "max_evaluations"});
    auto& w = s.placement.weights;
    auto& sch = s.placement.schedule;
    maybe(v, "a", w.a, "placement");
    maybe(v, "b", w.b, "placement");
    maybe(v, "c", w.c, "placement");
    maybe(v, "initial_temperature", sch.initial_temperature, "placement");
    maybe(v, "cooling", sch.cooling, "placement");
    maybe(v, "proposals_per_temperature", sch.proposals_per_temperature, "placement");
    maybe(v, "min_temperature", sch.min_temperature, "placement");
    maybe(v, "max_evaluations", sch.max_evaluations, "placement");
    w.validate();
  }
  if (doc.contains("darp")) {
    const auto& v = doc["darp"];
    r.check_keys(v, "darp",
                 {"eta", "repair_delta", "stall_cycles", "noise_scale", "max_cycles", "tolerance"});
    auto& d = s.darp;
    maybe(v, "eta", d.eta, "darp");
    maybe(v, "repair_delta", d.repair_delta, "darp");
    maybe(v, "stall_cycles", d.stall_cycles, "darp");
    maybe(v, "noise_scale", d.noise_scale, "darp");
    maybe(v, "max_cycles", d.max_cycles, "darp");
    maybe(v, "tolerance", d.tolerance, "darp");
  }
  if (doc.contains("cost")) {
    const auto& v = doc["cost"];
    r.check_keys(v, "cost", {"battery_endurance_min", "c1", "c2", "fcm"});
    maybe(v, "battery_endurance_min", s.cost.battery_endurance_min, "cost");
    maybe(v, "c1", s.cost.c1, "cost");
    maybe(v, "c2", s.cost.c2, "cost");
    maybe(v, "fcm", s.cost.fcm, "cost");
  }
  return f;
}

MissionFile read_mission_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputDomainError("cannot read mission file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mission(ss.str());
}

void write_paths_geojson(const MissionPlan& plan, std::ostream& out) {
  const auto& c = plan.context;
  out << std::fixed << std::setprecision(7);
  out << "{\"type\":\"FeatureCollection\",\n\"mission\":{\"reference\":[" << c.reference.lat << ','
      << c.reference.lon << "],";
  out << std::setprecision(3) << "\"roi_area_m2\":" << c.roi_area
      << ",\"scanning_density_m\":" << c.d_s << ",\"altitude_m\":" << c.sensor.altitude
      << ",\"speed\":" << plan.speed << ",\"gimbal_pitch_deg\":" << plan.gimbal_pitch_deg
      << ",\"seed\":" << plan.seed << ",\"version\":\"" << plan.version << "\"},\n\"features\":[";
  for (std::size_t k = 0; k < plan.paths.size(); ++k) {
    const auto& p = plan.paths[k];
    out << (k ? ",\n" : "\n") << "{\"type\":\"Feature\",\"properties\":{\"uav_id\":" << p.uav
        << ",\"turns\":" << p.turns << ",\"length_m\":" << std::setprecision(6) << p.length
        << ",\"scheme\":\"" << scheme_name(p.scheme) << "\"},\"geometry\":{\"type\":\"LineString\","
        << "\"coordinates\":[";
    out << std::setprecision(7);
    for (std::size_t w = 0; w < p.waypoints_wgs84.size(); ++w) {
      out << (w ? "," : "") << '[' << p.waypoints_wgs84[w].lon << ',' << p.waypoints_wgs84[w].lat
          << ']';
    }
    out << "]}}";
  }
  out << "\n]}\n";
}

std::vector<CoveragePath> read_paths_geojson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputDomainError(std::string("paths file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
      !doc["features"].is_array()) {
    throw InputDomainError("paths file must be a GeoJSON FeatureCollection");
  }
  std::vector<CoveragePath> paths;
  int next_id = 0;
  for (const auto& f : doc["features"]) {
    if (!f.contains("geometry") || f["geometry"].value("type", "") != "LineString") continue;
    CoveragePath p;
    p.uav = next_id++;
    p.turns = -1;
    p.length = -1.0;
    const auto& coords = f["geometry"]["coordinates"];
    if (!coords.is_array()) throw InputDomainError("LineString without coordinates");
    for (const auto& c : coords) {
      if (!c.is_array() || c.size() < 2) throw InputDomainError("malformed path coordinate");
      p.waypoints_wgs84.push_back({number(c[1], "latitude"), number(c[0], "longitude")});
    }
    if (f.contains("properties") && f["properties"].is_object()) {
      const auto& pr = f["properties"];
      if (pr.contains("uav_id")) p.uav = integer(pr["uav_id"], "uav_id");
      if (pr.contains("turns")) p.turns = integer(pr["turns"], "turns");
      if (pr.contains("length_m")) p.length = number(pr["length_m"], "length_m");
    }
    paths.push_back(std::move(p));
  }
  return paths;
}

namespace {

json coverage_object(const CoverageReport& r) {
  return {{"poc", r.poc},
          {"pooc", r.pooc},
          {"turns", r.metrics.turns},
          {"n_turns", r.metrics.n_turns},
          {"length_km", r.metrics.length_km},
          {"n_length", r.metrics.n_length},
          {"max_scans", r.max_scans},
          {"roi_cells", r.roi_cells},
          {"cell_side_m", r.raster.cell_side},
          {"histogram", r.histogram}};
}

json cost_object(const MissionCostReport& c) {
  return {{"flight_durations_min", c.flight_durations_min},
          {"batteries", c.batteries},
          {"batteries_per_uav", c.batteries_per_uav},
          {"flight_time_min", c.flight_time_min},
          {"deployment_time_min", c.deployment_time_min},
          {"change_battery_delay_min", c.change_battery_delay_min},
          {"total_time_min", c.total_time_min},
          {"flight_cost", c.flight_cost}};
}

}  // namespace

std::string metrics_json(const MissionPlan& plan, const std::vector<std::string>& warnings) {
  const auto& c = plan.context;
  const auto& pl = plan.placement;
  const auto& a = plan.assignment;
  json paths = json::array();
  for (const auto& p : plan.paths) {
    paths.push_back({{"uav_id", p.uav},
                     {"turns", p.turns},
                     {"length_m", p.length},
                     {"scheme", std::string(scheme_name(p.scheme))},
                     {"waypoints", p.waypoints_wgs84.size()}});
  }
  std::vector<double> targets;
  for (double p : a.shares) targets.push_back(p * a.total());
  json doc = {
      {"version", plan.version},
      {"seed", plan.seed},
      {"reference", point(c.reference)},
      {"roi_area_m2", c.roi_area},
      {"scanning_density_m", c.d_s},
      {"altitude_m", c.sensor.altitude},
      {"footprint_m", c.sensor.footprint()},
      {"speed", plan.speed},
      {"gimbal_pitch_deg", plan.gimbal_pitch_deg},
      {"mode", plan.grid.mode == LabelMode::StrictInPoly ? "strict" : "better"},
      {"placement",
       {{"sx", pl.placement.sx},
        {"sy", pl.placement.sy},
        {"theta_deg", pl.placement.theta_deg},
        {"J", pl.terms.j},
        {"J1", pl.terms.j1},
        {"J2", pl.terms.j2},
        {"J3", pl.terms.j3},
        {"evaluations", pl.evaluations}}},
      {"grid",
       {{"nx", plan.grid.nx},
        {"ny", plan.grid.ny},
        {"node_spacing_m", plan.grid.d_n},
        {"free_nodes", plan.grid.free_count()},
        {"pruned_nodes", plan.pruned_nodes}}},
      {"assignment",
       {{"counts", a.counts},
        {"shares", a.shares},
        {"targets", targets},
        {"iterations", a.iterations},
        {"converged", a.converged},
        {"cost", a.cost},
        {"tolerance", a.tolerance}}},
      {"paths", paths},
      {"coverage", coverage_object(plan.coverage)},
      {"cost", cost_object(plan.cost)},
      {"warnings", warnings}};
  return doc.dump(2) + "\n";
}

std::string coverage_json(const CoverageReport& report) {
  return coverage_object(report).dump(2) + "\n";
}

std::string cost_json(const MissionCostReport& report) { return cost_object(report).dump(2) + "\n"; }

}  // namespace mcpp
