#ifndef GEOFLOW_RAMP_HPP
#define GEOFLOW_RAMP_HPP

#include <string>
#include <vector>

#include "geoflow/flow.hpp"

namespace geoflow {

// Per-step extrema of the fiber height h, of the curvature, and of their
// ratio k/h along a flow on a model with an S¹ factor. Curvature carries a
// sign in a 2-dimensional chart (against the oriented normal J·T) and is
// the nonnegative |DT/∂s| otherwise.
struct RampSample {
  double t = 0.0;
  long step = 0;
  double mu = 0.0;      // min_i h_i
  double kappa = 0.0;   // min_i k_i
  double lambda = 0.0;  // max_i k_i
  double phi = 0.0;     // min_i k_i / h_i
  double psi = 0.0;     // max_i k_i / h_i
  long winding = 0;     // integer fiber degree of the lift
};

struct RampTrace {
  std::vector<RampSample> samples;
  double xi = 0.0;   // curvature ceiling of the model: envelope growth rate
  double c1 = kNaN;  // phi at the first sample when negative (lower envelope)
  double c2 = kNaN;  // psi at the first sample when positive (upper envelope)
};

// Collects RampSamples from flow states; wire `record` into run()'s snapshot
// hook with snapshot cadence 1 for a per-step trace. The first recorded
// state must be a ramp (every fiber height positive); otherwise record
// throws PreconditionError naming a violating node. Later states are
// recorded as they are, so monitors can observe any degradation honestly.
class RampRecorder {
 public:
  explicit RampRecorder(MetricModel model);
  void record(const FlowState& s);
  const RampTrace& trace() const { return trace_; }

 private:
  MetricModel model_;
  RampTrace trace_;
};

// Max relative residual of the discrete fiber-height evolution law,
//   (h_next − h_prev)/dt   against   h″ + k²h,
// with h″ the centered arclength second difference and k, h taken at prev.
// prev and next must be consecutive states on the same grid (same node
// count, no redistribution between them) of a model with an S¹ factor.
// The residual is relative to max(1, sup|h″ + k²h|).
double height_law_residual(const FlowState& prev, const FlowState& next,
                           const MetricModel& model);

// Checks the min fiber height never drops below its previous value by more
// than 1e-6·dt between consecutive samples. Requires mu > 0 at the first
// sample. Pairs that straddle a node redistribution (sample step divisible
// by resample_every) compare extrema over different grids and are skipped;
// pass resample_every = 0 when the run never redistributes.
MonitorReport monitor_mu(const RampTrace& trace, int resample_every = 0);

enum class BranchStatus { Holds, Violated, NotApplicable };
const char* to_string(BranchStatus s);

struct GrowthBounds {
  BranchStatus lower = BranchStatus::NotApplicable;  // phi_t ≥ c1·exp(xi·t)
  BranchStatus upper = BranchStatus::NotApplicable;  // psi_t ≤ c2·exp(xi·t)
  double lower_margin = kNaN;  // min_t of phi_t − slack·c1·exp(xi·(t−t0))
  double upper_margin = kNaN;  // min_t of slack·c2·exp(xi·(t−t0)) − psi_t
  std::string detail;
};

// Exponential envelopes on the curvature/height ratio with slack factor
// 1.05. The lower branch applies only when the curvature minimum stays
// below −1e−9 at every sample (needs a signed curvature, so a 2-d chart),
// the upper branch only when the curvature maximum stays above +1e−9;
// otherwise the branch reports NotApplicable rather than a failure.
// xi is floored at 1e−9 so flat models degrade to constant envelopes.
GrowthBounds exponential_growth_bounds(const RampTrace& trace, double xi);
inline GrowthBounds exponential_growth_bounds(const RampTrace& trace) {
  return exponential_growth_bounds(trace, trace.xi);
}

struct GeodesicCertificate {
  bool converged = false;
  StopReport report;          // flow outcome; failure detail when not converged
  DiscreteCurve geodesic;     // final curve
  long winding = 0;           // fiber degree, invariant across the run
  double sup_d1 = kNaN;       // final sup |DT/∂s|
  double sup_d2 = kNaN;       // final sup |D²T/∂s²|
  double length = kNaN;       // final curve length
  double length_floor = kNaN; // 2π·winding·ρ; ∮h ds pins every ramp above it
  RampTrace trace;            // per-step ramp data
};

// Runs the shortening flow from a ramp on a static product model and
// certifies the geodesic limit: converged is true only for a
// geodesic-converged stop; any other stop embeds its report unchanged.
// Throws PreconditionError when the model is not a static product with an
// S¹ factor or the initial curve is not a ramp (naming a violating node).
GeodesicCertificate find_geodesic(const MetricModel& model, const DiscreteCurve& initial,
                                  const FlowParams& params);

}  // namespace geoflow

#endif  // GEOFLOW_RAMP_HPP
