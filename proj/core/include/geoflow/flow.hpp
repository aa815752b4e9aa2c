#ifndef GEOFLOW_FLOW_HPP
#define GEOFLOW_FLOW_HPP

#include <functional>
#include <string>
#include <vector>

#include "geoflow/curve.hpp"
#include "geoflow/manifold.hpp"
#include "geoflow/types.hpp"

namespace geoflow {

// Why a run ended; to_string gives the kebab-case names used in reports.
enum class StopReason {
  GeodesicConverged,  // sup|DT/∂s| stayed below tol_geo long enough
  TMaxReached,
  BlowupGuard,        // curvature / time-step / metric-amplitude guard tripped
  LengthFloor,        // L fell below l_min_factor·L₀
  MonitorViolation,   // an identity or bound check failed
  ResampleFailure,    // node redistribution or the chart domain broke down
};

const char* to_string(StopReason reason);

struct FlowParams {
  double t_max = 1.0;

  // Geodesic detection: converged once sup|DT/∂s| < tol_geo for
  // geo_consecutive accepted steps in a row.
  double tol_geo = 1e-4;
  int geo_consecutive = 50;

  // Explicit step size dt = c_cfl·(min_i Δs_i)² clamped to [dt_min, dt_max];
  // a raw value below dt_min trips the blow-up guard.
  double c_cfl = 0.25;
  double dt_max = 1e-2;
  double dt_min = 1e-12;

  int resample_every = 25;     // steps between arclength redistributions; 0 = off
  double k2_max = 1e6;         // blow-up guard on max k²
  double l_min_factor = 1e-4;  // length floor relative to L₀
  int n_max = 3;               // covariant derivative depth in diagnostics (1..3)
  int snapshot_every = 0;      // snapshot cadence in steps; 0 = off

  // Per-step identity residuals (length / speed / tangent laws); residuals
  // above the thresholds stop the run with monitor-violation. Steps shorter
  // than 1e-10 (the clamped final step can be) skip them: the backward
  // differences would be roundoff-dominated.
  bool monitor_identities = true;
  double res1_max = 0.1;
  double res2_max = 0.25;
  double res3_max = 0.5;

  // Short-window curvature bounds, applied on static metrics only:
  //   max k² ≤ 2M₀(1+eps)  and  t·sup|D²T/∂s²|² + 3·sup|DT/∂s|² ≤ 16M₀(1+eps)
  // while t ≤ log(1 + Λ̃/(4M₀ + Λ̃ + 1))/(2Λ̃) with Λ̃ = max(Λ, 1e-6).
  bool bernstein = true;
  double bernstein_eps = 0.05;

  bool monitor_mu = false;      // min fiber height must not decrease
  bool monitor_max_k2 = false;  // max k² must not increase (driven metrics)
};

struct FlowState {
  DiscreteCurve curve;
  double t = 0.0;
  long step = 0;
  double f_value = 0.0;  // conformal exponent (0 on static metrics)
  CurveGeometry geom;    // geometry of `curve` under the step's metric
};

// One trace row. NaN marks a quantity that does not apply there.
struct Diagnostics {
  long step = 0;
  double t = 0.0;
  double L = 0.0;
  double dL_dt = kNaN;         // backward difference; NaN on the initial row
  double bending = 0.0;        // ∫k²ds
  double max_k2 = 0.0;
  double min_k_signed = kNaN;  // dim-2 charts only
  double max_k = 0.0;
  double sup_d1 = 0.0;         // sup|DT/∂s|, the geodesic residual
  double sup_d2 = kNaN;
  double sup_d3 = kNaN;
  double bending2 = kNaN;      // ∫|D²T/∂s²|²ds
  double mu = kNaN;            // min fiber height (metrics with an S¹ factor)
  double L0 = 0.0;             // initial length of the run
  double res1 = kNaN;          // residuals of the step ending at this row
  double res2 = kNaN;
  double res3 = kNaN;
  double f_value = kNaN;       // evolving metrics only
  double df_dt = kNaN;
  double rate_denom = kNaN;    // warped-rate denominator at the driving node
};

struct IdentityResiduals {
  double res1 = kNaN;
  double res2 = kNaN;
  double res3 = kNaN;
};

struct BernsteinReport {
  double m0 = 0.0;      // max k² on the first row
  double lambda = 0.0;  // curvature bound with the flat-case floor applied
  double window = 0.0;  // rows with t − t₀ ≤ window are checked
  long checked = 0;
  bool ok = true;
  std::string detail;   // first violation, empty when ok
};

struct StopReport {
  StopReason reason = StopReason::TMaxReached;
  std::string detail;
  Diagnostics final;
  double final_residual = kNaN;        // sup|DT/∂s| on the last row
  std::vector<double> last_residuals;  // geodesic residuals of the last ≤ 10 steps
};

// Outcome of a posteriori trace monitors (min-height, max-curvature, ...).
struct MonitorReport {
  bool ok = true;
  std::string detail;  // first violation when !ok
};

struct RunResult {
  std::vector<Diagnostics> trace;  // initial row plus one row per accepted step
  StopReport report;
  FlowState final_state;
};

// Conformal-exponent drive, evaluated once per step at the node of strictly
// maximal curvature (ties resolved toward the lowest index). `denom` reports
// the warped-product denominator 2|π_*T|² − |π_*N|², NaN for purely conformal
// drives. rate() may throw DegenerateDenominatorError; run() converts that
// into a monitor-violation stop.
struct RateResult {
  double rate = 0.0;
  double denom = kNaN;
};

class EvolvingPolicy {
 public:
  virtual ~EvolvingPolicy() = default;
  virtual RateResult rate(const FlowState& state, const MetricModel& model) const = 0;
};

// Flow velocity DT/∂s per node; g-orthogonal to T by construction.
std::vector<Vec> velocity(const DiscreteCurve& curve, const MetricModel& model,
                          double t);

// dt = c_cfl·(min Δs)² clamped to [dt_min, dt_max].
double adaptive_dt(const CurveGeometry& geom, const FlowParams& params);

// One explicit step γ ← γ + dt·DT/∂s under `model`; state.geom must hold the
// geometry of state.curve under the same model. No resampling. Throws
// DomainError when a node leaves the chart domain, DegenerateCurveError when
// a node turns non-finite or the immersion degenerates.
FlowState step(const FlowState& state, const MetricModel& model, double dt);

// Residuals of the per-step evolution identities between consecutive states
// on the same grid (no resample in between). df_dt is the conformal-exponent
// rate active during the step (0 for static metrics); the length and speed
// laws then carry the metric-variation term +½·df·w·v with w = 1 on conformal
// families and w = |π_*T|² on warped ones.
//   res1 = |ΔL/dt + ∫k²ds − ½·df·∫w ds| / max(∫k²ds, 1e-12)
//   res2 = max_i |Δv_i/dt + k²v − ½·df·w·v| / max(max_i k²v, 1e-8)
//   res3 = sup-norm defect of ΔT/dt + Γ(V, T) against (k² − ½·df)T + D²T/∂s²,
//          scaled by the larger right-hand term magnitude (floor 1e-5);
//          NaN on warped families with df ≠ 0 and when n_max < 2.
IdentityResiduals monitor_identities(const FlowState& prev, const FlowState& next,
                                     const MetricModel& model, double df_dt = 0.0);

// Check the short-window curvature bounds over a recorded trace; the window
// starts at the first row.
BernsteinReport bernstein_monitor(const std::vector<Diagnostics>& trace,
                                  const MetricModel& model, double eps = 0.05);

// Flow engine: explicit steps with adaptive dt, periodic arclength
// redistribution, per-step identity/curvature monitors, and stop detection.
// On positively curved space-form charts, initial data beyond the chart
// guard radius is moved by the inversion isometry x ↦ x/|x|² first. `policy`
// (optional) drives the conformal exponent of an evolving-family metric: the
// exponent is advanced before each step and the step runs under the updated
// metric. `snapshot` (optional) is called on the initial state, every
// snapshot_every accepted steps, and on the final state.
RunResult run(const MetricModel& model, const DiscreteCurve& initial,
              const FlowParams& params, const EvolvingPolicy* policy = nullptr,
              const std::function<void(const FlowState&)>& snapshot = {});

}  // namespace geoflow

#endif  // GEOFLOW_FLOW_HPP
