#ifndef GEOFLOW_EVOLVING_METRIC_HPP
#define GEOFLOW_EVOLVING_METRIC_HPP

#include <vector>

#include "geoflow/flow.hpp"

namespace geoflow {

// Node of maximal squared curvature. `ties` lists every node whose k² is
// within relative tolerance 1e-6 of the maximum (always includes `node`);
// `node` itself is the lowest-index member of that set.
struct CurvatureArgmax {
  int node = 0;
  double max_k2 = 0.0;
  std::vector<int> ties;
};

CurvatureArgmax curvature_argmax(const CurveGeometry& geom);

// Conformal-exponent drive for metrics g_t = e^{f(t)}·g: the exponent rate
// that freezes the curvature maximum,
//   df/dt = 2k² + 2⟨R(T,N)T, N⟩
// evaluated at the argmax node under the current metric (the model passed in
// carries the exponent accumulated so far). N is the unit principal normal
// DT/∂s / k; where k is below the Frenet floor the curvature term drops out.
// A driven round unit circle keeps k² ≡ 1 while its chart radius decays
// like e^{−t}: the collapse is pushed to infinite time.
struct ConformalRate final : public EvolvingPolicy {
  RateResult rate(const FlowState& state, const MetricModel& model) const override;
};

// Same drive for warped-circle metrics g_base ⊕ ρ²e^{f(t)}dθ², where only
// the fiber is rescaled:
//   df/dt = (2k² + 2⟨R(T,N)T, N⟩) / (2|π_*T|² − |π_*N|²)
// with π the fiber projection and both norms taken in the current metric
// (|π_*X|² = g_θθ·(X^θ)²). |π_*N|² counts as 0 where k is below the Frenet
// floor. Throws DegenerateDenominatorError when the denominator magnitude is
// at most 1e-6; run() converts that into a monitor-violation stop. The
// denominator is reported in RateResult::denom.
struct WarpedRate final : public EvolvingPolicy {
  RateResult rate(const FlowState& state, const MetricModel& model) const override;
};

// One driven step: evaluate the policy under the current metric, advance the
// exponent f ← f + dt·rate, then take one explicit flow step under the
// updated metric. `model` is the evolving family at exponent 0 (same
// precondition as run() with a policy); state.f_value carries the exponent.
// The returned state holds the new exponent and its geometry under the
// updated metric at the new time. Errors from the policy or the step
// propagate. This is the single-step version of what run() does with a
// policy; it applies no guards, monitors, or resampling.
FlowState step_evolving(const FlowState& state, const MetricModel& model,
                        const EvolvingPolicy& policy, double dt);

// A posteriori check that the curvature maximum never increased: every
// consecutive trace pair must satisfy
//   max k²(t+dt) ≤ max k²(t)·(1 + 1e-4) + 1e-12,
// the same slack the in-run monitor (FlowParams::monitor_max_k2) applies.
// A correctly driven run passes; undriven shrinking curves fail.
MonitorReport monitor_max_curvature(const std::vector<Diagnostics>& trace);

}  // namespace geoflow

#endif  // GEOFLOW_EVOLVING_METRIC_HPP
