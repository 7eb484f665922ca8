#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mcpp/pipeline.hpp"

namespace mcpp {

struct MissionFile {
  MissionSpec spec;
  std::vector<std::string> warnings;  // unknown keys, by JSON path
};

/// Parses a mission document. The ROI is either an array of [lat, lon] pairs
/// (with obstacles likewise) or a GeoJSON Polygon / Feature whose outer ring
/// is the ROI and whose inner rings are no-fly zones. Throws InputDomainError
/// on malformed input.
MissionFile parse_mission(const std::string& text);
MissionFile read_mission_file(const std::string& path);

/// FeatureCollection with one LineString per UAV, coordinates [lon, lat] at
/// seven decimals, plus a "mission" member with the frame reference.
void write_paths_geojson(const MissionPlan& plan, std::ostream& out);

/// Paths from a FeatureCollection of LineStrings. Missing turns / length_m
/// properties are left negative so callers can recompute them.
std::vector<CoveragePath> read_paths_geojson(const std::string& text);

std::string metrics_json(const MissionPlan& plan, const std::vector<std::string>& warnings);
std::string coverage_json(const CoverageReport& report);
std::string cost_json(const MissionCostReport& report);

}  // namespace mcpp
