#include "geoflow/evolving_metric.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>

namespace geoflow {

namespace {

template <typename... Args>
std::string fmt(Args&&... args) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << args);
  return os.str();
}

constexpr double kTieTol = 1e-6;     // relative k² tolerance for the argmax set
constexpr double kDenomTol = 1e-6;   // below this the warped denominator is degenerate

// Current-metric frame at the driving node.
struct DriveFrame {
  int node = 0;
  double k = 0.0;
  Vec T;
  Vec N;                 // unit principal normal; empty below the Frenet floor
  bool has_normal = false;
  Vec p;
};

DriveFrame drive_frame(const FlowState& state) {
  const CurvatureArgmax am = curvature_argmax(state.geom);
  DriveFrame fr;
  fr.node = am.node;
  fr.k = state.geom.k[static_cast<std::size_t>(am.node)];
  fr.p = state.curve.nodes[static_cast<std::size_t>(am.node)];
  fr.T = state.geom.T[static_cast<std::size_t>(am.node)];
  if (fr.k > kCurvatureFloor) {
    fr.N = state.geom.d_t[0][static_cast<std::size_t>(am.node)] / fr.k;
    fr.has_normal = true;
  }
  return fr;
}

// 2k² + 2⟨R(T,N)T, N⟩ at the driving node; the curvature term drops out
// where the Frenet normal is undefined.
double drive_numerator(const DriveFrame& fr, const MetricModel& model, double t) {
  double r_term = 0.0;
  if (fr.has_normal)
    r_term = riemann_component(model, fr.p, fr.T, fr.N, fr.T, fr.N, t);
  return 2.0 * fr.k * fr.k + 2.0 * r_term;
}

}  // namespace

CurvatureArgmax curvature_argmax(const CurveGeometry& geom) {
  CurvatureArgmax am;
  const std::size_t n = geom.k.size();
  if (n == 0) throw PreconditionError("curvature_argmax: empty geometry");
  for (std::size_t i = 0; i < n; ++i) {
    const double k2 = geom.k[i] * geom.k[i];
    if (k2 > am.max_k2) {
      am.max_k2 = k2;
      am.node = static_cast<int>(i);
    }
  }
  const double cut = am.max_k2 * (1.0 - kTieTol);
  for (std::size_t i = 0; i < n; ++i)
    if (geom.k[i] * geom.k[i] >= cut) am.ties.push_back(static_cast<int>(i));
  am.node = am.ties.front();
  return am;
}

RateResult ConformalRate::rate(const FlowState& state, const MetricModel& model) const {
  const DriveFrame fr = drive_frame(state);
  return {drive_numerator(fr, model, state.t), kNaN};
}

RateResult WarpedRate::rate(const FlowState& state, const MetricModel& model) const {
  if (!model.has_fiber())
    throw PreconditionError("warped rate needs a metric with an S¹ factor");
  const DriveFrame fr = drive_frame(state);
  const int axis = model.fiber_axis();
  const double scale = model.fiber_scale(state.t);  // √g_θθ
  const double g_tt = scale * scale;
  const double pit2 = g_tt * fr.T[axis] * fr.T[axis];
  const double pin2 = fr.has_normal ? g_tt * fr.N[axis] * fr.N[axis] : 0.0;
  const double denom = 2.0 * pit2 - pin2;
  if (std::abs(denom) <= kDenomTol)
    throw DegenerateDenominatorError(
        fmt("warped-rate denominator 2|π_*T|² − |π_*N|² = ", denom, " at node ",
            fr.node, " is within ", kDenomTol, " of zero"));
  return {drive_numerator(fr, model, state.t) / denom, denom};
}

FlowState step_evolving(const FlowState& state, const MetricModel& model,
                        const EvolvingPolicy& policy, double dt) {
  const Family fam = model.family();
  if (fam != Family::ConformalEvolving && fam != Family::WarpedCircle)
    throw PreconditionError("step_evolving needs an evolving metric family");
  if (model.f().offset != 0.0 || model.f().rate != 0.0)
    throw PreconditionError("step_evolving needs the exponent to start at 0");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw PreconditionError("step_evolving needs dt > 0");

  const MetricModel eff = model.with_conformal_value(state.f_value);
  const RateResult drive = policy.rate(state, eff);
  const double f_next = state.f_value + dt * drive.rate;

  const MetricModel eff_next = model.with_conformal_value(f_next);
  FlowState stage = state;
  stage.f_value = f_next;
  stage.geom = geometry(state.curve, eff_next, state.t, state.geom.n_max);
  return step(stage, eff_next, dt);
}

MonitorReport monitor_max_curvature(const std::vector<Diagnostics>& trace) {
  MonitorReport rep;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const Diagnostics& prev = trace[i - 1];
    const Diagnostics& row = trace[i];
    if (row.max_k2 > prev.max_k2 * (1.0 + 1e-4) + 1e-12) {
      rep.ok = false;
      rep.detail = fmt("max k² rose from ", prev.max_k2, " to ", row.max_k2,
                       " between t = ", prev.t, " and t = ", row.t, " (step ",
                       row.step, ")");
      return rep;
    }
  }
  return rep;
}

}  // namespace geoflow
