#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mcpp/geo.hpp"
#include "mcpp/grid.hpp"

namespace mcpp {

/// J = a*J1 + b*J2 - c*J3 with 0 <= a, b, c <= 1 and a + b = 1.
struct IndexWeights {
  double a = 0.9;
  double b = 0.1;
  double c = 0.05;

  void validate() const;
};

enum class Ablation { None, J1, J1J2, Full };

/// Weight presets for the ablation variants; None has no weights (the
/// optimizer is skipped) and returns the defaults.
IndexWeights ablation_weights(Ablation ablation, const IndexWeights& full = {});

struct AnnealingSchedule {
  double initial_temperature = 0.1;
  double cooling = 0.95;
  int proposals_per_temperature = 30;
  double min_temperature = 1e-4;
  int max_evaluations = 10000;
};

struct PlacementParams {
  IndexWeights weights;
  AnnealingSchedule schedule;
  std::uint64_t seed = 0;
  bool record_trace = false;
};

struct IndexTerms {
  double j = 0.0;
  double j1 = 0.0;  // free nodes over the area bound, capped at 1
  double j2 = 0.0;  // ROI area over augmented-box area
  double j3 = 0.0;  // normalized margin imbalance
  int free_nodes = 0;
};

struct TraceRecord {
  int evaluation = 0;
  Placement placement;
  IndexTerms terms;
  bool accepted = false;
  double best_j = 0.0;
};

struct PlacementSolution {
  Placement placement;
  IndexTerms terms;
  NodeGrid grid;
  int evaluations = 0;
  std::vector<TraceRecord> trace;
};

IndexTerms eval_index(const Polygon& roi, const Placement& placement, double d_s, LabelMode mode,
                      const IndexWeights& weights);

/// Simulated annealing over (sx, sy, theta). The identity placement is always
/// the first evaluation and the best state seen is returned. Throws
/// InfeasibleDiscretization if no evaluated placement has a free node.
PlacementSolution optimize_placement(const Polygon& roi, double d_s, LabelMode mode,
                                     const PlacementParams& params);

/// Solution for the fixed identity placement (the non-optimized baseline).
PlacementSolution identity_placement(const Polygon& roi, double d_s, LabelMode mode,
                                     const IndexWeights& weights);

/// CSV: evaluation,sx,sy,theta,J1,J2,J3,J,accepted
void write_trace_csv(std::span<const TraceRecord> trace, std::ostream& out);

}  // namespace mcpp
