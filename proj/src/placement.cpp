#include "mcpp/placement.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "mcpp/errors.hpp"

namespace mcpp {
namespace {

// Evaluates J for many placements of one ROI.
class IndexEvaluator {
public:
  IndexEvaluator(const Polygon& roi, double d_s, LabelMode mode, const IndexWeights& w)
      : roi_(roi),
        d_s_(d_s),
        d_n_(node_spacing(d_s)),
        mode_(mode),
        w_(w),
        area_(polygon_area(roi)),
        pivot_(placement_pivot(roi)) {}

  double d_n() const { return d_n_; }

  IndexTerms operator()(const Placement& p) const {
    if (p.sx > d_n_ || p.sy > d_n_) {
      throw InputDomainError("placement shift exceeds the node spacing");
    }
    const Polygon moved = transform_polygon(roi_, p, pivot_);
    const AugmentedBox aug = augmented_box(moved, d_n_);
    const BoundingBox std_box = bounding_box(moved);
    const auto states = label_nodes(moved, aug, d_s_, mode_);

    IndexTerms t;
    for (const auto s : states) t.free_nodes += s != NodeState::Obstacle;
    t.j1 = std::min(1.0, t.free_nodes * d_n_ * d_n_ / area_);
    t.j2 = area_ / aug.box.area();
    const BoundingBox& bb = aug.box;
    t.j3 = std::abs(std::abs(bb.x_max - std_box.x_max) - std::abs(std_box.x_min - bb.x_min)) /
               (2.0 * std::abs(bb.x_max - bb.x_min)) +
           std::abs(std::abs(bb.y_max - std_box.y_max) - std::abs(std_box.y_min - bb.y_min)) /
               (2.0 * std::abs(bb.y_max - bb.y_min));
    t.j = w_.a * t.j1 + w_.b * t.j2 - w_.c * t.j3;
    return t;
  }

private:
  const Polygon& roi_;
  double d_s_;
  double d_n_;
  LabelMode mode_;
  IndexWeights w_;
  double area_;
  NedPoint pivot_;
};

double reflect(double v, double hi) {
  while (v < 0.0 || v > hi) {
    if (v < 0.0) v = -v;
    if (v > hi) v = 2.0 * hi - v;
  }
  return v;
}

}  // namespace

void IndexWeights::validate() const {
  const auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in01(a) || !in01(b) || !in01(c) || std::abs(a + b - 1.0) > 1e-12) {
    throw InputDomainError("index weights need 0 <= a, b, c <= 1 and a + b = 1");
  }
}

IndexWeights ablation_weights(Ablation ablation, const IndexWeights& full) {
  switch (ablation) {
    case Ablation::J1:
      return {1.0, 0.0, 0.0};
    case Ablation::J1J2:
      return {full.a, full.b, 0.0};
    case Ablation::None:
    case Ablation::Full:
      break;
  }
  return full;
}

IndexTerms eval_index(const Polygon& roi, const Placement& placement, double d_s, LabelMode mode,
                      const IndexWeights& weights) {
  weights.validate();
  return IndexEvaluator(roi, d_s, mode, weights)(placement);
}

PlacementSolution identity_placement(const Polygon& roi, double d_s, LabelMode mode,
                                     const IndexWeights& weights) {
  weights.validate();
  PlacementSolution sol;
  sol.terms = IndexEvaluator(roi, d_s, mode, weights)(sol.placement);
  sol.evaluations = 1;
  sol.grid = build_grid(roi, sol.placement, d_s, mode);
  return sol;
}

PlacementSolution optimize_placement(const Polygon& roi, double d_s, LabelMode mode,
                                     const PlacementParams& params) {
  params.weights.validate();
  const auto& sched = params.schedule;
  if (!(sched.initial_temperature > 0.0) || !(sched.cooling > 0.0 && sched.cooling < 1.0) ||
      sched.proposals_per_temperature < 1 || sched.max_evaluations < 1) {
    throw InputDomainError("invalid annealing schedule");
  }

  const IndexEvaluator eval(roi, d_s, mode, params.weights);
  const double ranges[3] = {eval.d_n(), eval.d_n(), 90.0};
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<int> pick_var(0, 2);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  PlacementSolution sol;
  Placement current{};
  IndexTerms cur_terms = eval(current);
  Placement best = current;
  IndexTerms best_terms = cur_terms;
  int evals = 1;
  if (params.record_trace) sol.trace.push_back({evals, current, cur_terms, true, best_terms.j});

  double temp = sched.initial_temperature;
  while (evals < sched.max_evaluations && temp >= sched.min_temperature) {
    for (int k = 0; k < sched.proposals_per_temperature && evals < sched.max_evaluations; ++k) {
      Placement cand = current;
      const int var = pick_var(rng);
      double* field = var == 0 ? &cand.sx : (var == 1 ? &cand.sy : &cand.theta_deg);
      const double step = unit(rng) * ranges[var] * temp / sched.initial_temperature;
      *field = reflect(*field + step, ranges[var]);

      const IndexTerms t = eval(cand);
      ++evals;
      const double delta = t.j - cur_terms.j;
      const double draw = u01(rng);
      const bool accept = delta >= 0.0 || draw < std::exp(delta / temp);
      if (accept) {
        current = cand;
        cur_terms = t;
      }
      if (t.j > best_terms.j) {
        best = cand;
        best_terms = t;
      }
      if (params.record_trace) sol.trace.push_back({evals, cand, t, accept, best_terms.j});
    }
    temp *= sched.cooling;
  }

  if (best_terms.free_nodes == 0) {
    throw InfeasibleDiscretization("no placement yields a free node at this scanning density");
  }
  sol.placement = best;
  sol.terms = best_terms;
  sol.evaluations = evals;
  sol.grid = build_grid(roi, best, d_s, mode);
  return sol;
}

void write_trace_csv(std::span<const TraceRecord> trace, std::ostream& out) {
  out << "evaluation,sx,sy,theta,J1,J2,J3,J,accepted\n";
  for (const auto& r : trace) {
    out << r.evaluation << ',' << r.placement.sx << ',' << r.placement.sy << ','
        << r.placement.theta_deg << ',' << r.terms.j1 << ',' << r.terms.j2 << ',' << r.terms.j3
        << ',' << r.terms.j << ',' << (r.accepted ? 1 : 0) << '\n';
  }
}

}  // namespace mcpp
