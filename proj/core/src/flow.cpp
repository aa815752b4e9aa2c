#include "geoflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <sstream>
#include <utility>

namespace geoflow {

namespace {

// Backward differences over steps shorter than this are roundoff-dominated;
// the identity monitors sit out such (clamped final) steps.
constexpr double kMonitorDtFloor = 1e-10;

template <class... Ts>
std::string fmt(Ts&&... parts) {
  std::ostringstream os;
  os.precision(10);
  (os << ... << parts);
  return os.str();
}

double sq(double x) { return x * x; }

// "" when the row satisfies both short-window bounds.
std::string bernstein_row_violation(const Diagnostics& row, double t0, double m0,
                                    double eps) {
  const double m_cap = 2.0 * m0 * (1.0 + eps) + 1e-10;
  if (row.max_k2 > m_cap)
    return fmt("max k² = ", row.max_k2, " above the doubling cap ", m_cap,
               " at t = ", row.t);
  if (std::isfinite(row.sup_d2)) {
    const double lhs =
        (row.t - t0) * sq(row.sup_d2) + 3.0 * sq(row.sup_d1);
    const double cap = 16.0 * m0 * (1.0 + eps) + 1e-10;
    if (lhs > cap)
      return fmt("t·sup|D²T/∂s²|² + 3·sup|DT/∂s|² = ", lhs, " above ", cap,
                 " at t = ", row.t);
  }
  return {};
}

Diagnostics make_row(const FlowState& st, const MetricModel& eff, double l0) {
  Diagnostics d;
  d.step = st.step;
  d.t = st.t;
  d.L = st.geom.L;
  d.bending = st.geom.bending;
  d.max_k = st.geom.max_k();
  d.max_k2 = sq(d.max_k);
  d.sup_d1 = st.geom.sup_d(1);
  if (st.geom.n_max >= 2) {
    d.sup_d2 = st.geom.sup_d(2);
    d.bending2 = st.geom.bending2();
  }
  if (st.geom.n_max >= 3) d.sup_d3 = st.geom.sup_d(3);
  if (st.curve.dim() == 2) {
    const std::vector<double> ks = signed_curvature(st.curve, st.geom, eff, st.t);
    d.min_k_signed = *std::min_element(ks.begin(), ks.end());
  }
  if (eff.has_fiber()) d.mu = ramp_height(st.curve, st.geom, eff, st.t).mu;
  d.L0 = l0;
  return d;
}

void validate_params(const FlowParams& p) {
  std::string msg;
  auto need = [&msg](bool ok, const char* what) {
    if (ok) return;
    if (!msg.empty()) msg += "; ";
    msg += what;
  };
  need(p.t_max > 0.0, "t_max must be positive");
  need(p.tol_geo > 0.0, "tol_geo must be positive");
  need(p.geo_consecutive >= 1, "geo_consecutive must be at least 1");
  need(p.c_cfl > 0.0, "c_cfl must be positive");
  need(p.dt_min > 0.0 && p.dt_max >= p.dt_min, "need 0 < dt_min <= dt_max");
  need(p.resample_every >= 0, "resample_every must be non-negative");
  need(p.k2_max > 0.0, "k2_max must be positive");
  need(p.l_min_factor >= 0.0, "l_min_factor must be non-negative");
  need(p.n_max >= 1 && p.n_max <= 3, "n_max must be 1..3");
  need(p.snapshot_every >= 0, "snapshot_every must be non-negative");
  need(p.res1_max > 0.0 && p.res2_max > 0.0 && p.res3_max > 0.0,
       "residual thresholds must be positive");
  need(p.bernstein_eps >= 0.0, "bernstein_eps must be non-negative");
  if (!msg.empty()) throw PreconditionError("run: " + msg);
}

// Initial-data admission. Positively curved space-form charts get one chance
// to move data beyond the pole guard back by the inversion isometry.
DiscreteCurve prepare_initial(const MetricModel& model, DiscreteCurve curve) {
  auto first_outside = [&model](const DiscreteCurve& c) {
    for (int i = 0; i < c.n(); ++i)
      if (!c.nodes[static_cast<size_t>(i)].allFinite() ||
          !model.in_domain(c.nodes[static_cast<size_t>(i)]))
        return i;
    return -1;
  };
  int bad = first_outside(curve);
  if (bad < 0) return curve;
  if (model.family() == Family::SpaceForm && model.curvature_constant() > 0.0) {
    if (curve.loop_shift.norm() > 0.0)
      throw PreconditionError(
          "pole-avoiding inversion is undefined for lifted curves");
    for (Vec& p : curve.nodes) p /= p.squaredNorm();
    bad = first_outside(curve);
    if (bad < 0) return curve;
    throw PreconditionError(fmt(
        "initial node ", bad, " spans the chart beyond the pole guard even ",
        "after inversion"));
  }
  throw PreconditionError(fmt("initial node ", bad, " lies outside the chart domain"));
}

}  // namespace

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::GeodesicConverged: return "geodesic-converged";
    case StopReason::TMaxReached: return "t-max-reached";
    case StopReason::BlowupGuard: return "blowup-guard";
    case StopReason::LengthFloor: return "length-floor";
    case StopReason::MonitorViolation: return "monitor-violation";
    case StopReason::ResampleFailure: return "resample-failure";
  }
  return "unknown";
}

std::vector<Vec> velocity(const DiscreteCurve& curve, const MetricModel& model,
                          double t) {
  CurveGeometry g = geometry(curve, model, t, 1);
  return std::move(g.d_t.front());
}

double adaptive_dt(const CurveGeometry& geom, const FlowParams& params) {
  const double min_ds = *std::min_element(geom.ds.begin(), geom.ds.end());
  return std::clamp(params.c_cfl * min_ds * min_ds, params.dt_min, params.dt_max);
}

FlowState step(const FlowState& state, const MetricModel& model, double dt) {
  if (!(dt > 0.0)) throw PreconditionError("step: dt must be positive");
  const size_t n = state.curve.nodes.size();
  if (state.geom.d_t.empty() || state.geom.d_t.front().size() != n)
    throw PreconditionError("step: geometry cache does not match the curve");

  FlowState next;
  next.curve.loop_shift = state.curve.loop_shift;
  next.curve.nodes.resize(n);
  const std::vector<Vec>& vel = state.geom.d_t.front();
  for (size_t i = 0; i < n; ++i)
    next.curve.nodes[i] = state.curve.nodes[i] + dt * vel[i];
  next.t = state.t + dt;
  next.step = state.step + 1;
  next.f_value = state.f_value;

  for (size_t i = 0; i < n; ++i) {
    const Vec& p = next.curve.nodes[i];
    if (!p.allFinite())
      throw DegenerateCurveError(fmt("node ", i, " turned non-finite at t = ", next.t));
    if (!model.in_domain(p))
      throw DomainError(fmt("node ", i, " left the chart domain at t = ", next.t));
  }
  next.geom = geometry(next.curve, model, next.t, state.geom.n_max);
  return next;
}

IdentityResiduals monitor_identities(const FlowState& prev, const FlowState& next,
                                     const MetricModel& model, double df_dt) {
  const double dt = next.t - prev.t;
  if (!(dt > 0.0))
    throw PreconditionError("monitor_identities: states must be dt > 0 apart");
  if (prev.curve.n() != next.curve.n())
    throw PreconditionError("monitor_identities: node counts differ");
  const int n = prev.curve.n();
  const double du = prev.curve.du();
  const bool warped = model.family() == Family::WarpedCircle;

  IdentityResiduals out;

  // Metric-variation weight w: |π_*T|² on warped families, 1 otherwise.
  std::vector<double> w(static_cast<size_t>(n), 1.0);
  if (df_dt != 0.0 && warped) {
    const RampContext rc = ramp_height(prev.curve, prev.geom, model, prev.t);
    for (size_t i = 0; i < w.size(); ++i) w[i] = rc.h[i] * rc.h[i];
  }

  // Length law: dL/dt = −∫k²ds + ½·df·∫w ds.
  double weighted = 0.0;
  for (size_t i = 0; i < w.size(); ++i) weighted += w[i] * prev.geom.v[i] * du;
  const double defect1 = (next.geom.L - prev.geom.L) / dt + prev.geom.bending -
                         0.5 * df_dt * weighted;
  out.res1 = std::abs(defect1) / std::max(prev.geom.bending, 1e-12);

  // Speed law: ∂v/∂t = −k²v + ½·df·w·v. The defect at a node carries O(Δu²)
  // truncation sourced by the whole stencil, so the sup of the defects is
  // scaled by the sup of the k²v terms, not nodewise (a straightening node
  // with k ≈ 0 between curved arcs would otherwise divide noise by the floor).
  double worst2 = 0.0;
  double scale2 = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    const double kv = sq(prev.geom.k[i]) * prev.geom.v[i];
    const double defect = (next.geom.v[i] - prev.geom.v[i]) / dt + kv -
                          0.5 * df_dt * w[i] * prev.geom.v[i];
    worst2 = std::max(worst2, std::abs(defect));
    scale2 = std::max(scale2, kv);
  }
  out.res2 = worst2 / std::max(scale2, 1e-8);

  // Tangent law: ∇_t T = (k² − ½·df)T + D²T/∂s². The warped analogue mixes
  // fiber projections into the T-coefficient, so it is not checked here.
  if (prev.geom.n_max >= 2 && !(warped && df_dt != 0.0)) {
    double sup_defect = 0.0;
    double scale = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
      const Vec& p = prev.curve.nodes[i];
      const Mat g = metric_at(model, p, prev.t);
      const Christoffels gamma = christoffel(model, p, prev.t);
      Vec lhs = (next.geom.T[i] - prev.geom.T[i]) / dt;
      if (!gamma.zero) lhs += gamma.apply(prev.geom.d_t[0][i], prev.geom.T[i]);
      const double coef = sq(prev.geom.k[i]) - 0.5 * df_dt;
      const Vec rhs = coef * prev.geom.T[i] + prev.geom.d_t[1][i];
      const Vec defect = lhs - rhs;
      sup_defect = std::max(sup_defect, std::sqrt(std::max(0.0, defect.dot(g * defect))));
      scale = std::max({scale, std::abs(coef), prev.geom.d_norm[1][i]});
    }
    out.res3 = sup_defect / std::max(scale, 1e-5);
  }
  return out;
}

BernsteinReport bernstein_monitor(const std::vector<Diagnostics>& trace,
                                  const MetricModel& model, double eps) {
  if (trace.empty())
    throw PreconditionError("bernstein_monitor: trace is empty");
  BernsteinReport rep;
  rep.m0 = trace.front().max_k2;
  rep.lambda = std::max(model.lambda_bound(), 1e-6);
  rep.window =
      std::log1p(rep.lambda / (4.0 * rep.m0 + rep.lambda + 1.0)) / (2.0 * rep.lambda);
  const double t0 = trace.front().t;
  for (const Diagnostics& row : trace) {
    if (row.t - t0 > rep.window) break;
    ++rep.checked;
    std::string v = bernstein_row_violation(row, t0, rep.m0, eps);
    if (!v.empty()) {
      rep.ok = false;
      rep.detail = std::move(v);
      break;
    }
  }
  return rep;
}

RunResult run(const MetricModel& model, const DiscreteCurve& initial,
              const FlowParams& params, const EvolvingPolicy* policy,
              const std::function<void(const FlowState&)>& snapshot) {
  validate_params(params);

  const Family fam = model.family();
  const bool evolving_family =
      fam == Family::ConformalEvolving || fam == Family::WarpedCircle;
  if (policy) {
    if (!evolving_family)
      throw PreconditionError("run: a conformal drive needs an evolving metric family");
    if (model.f().offset != 0.0 || model.f().rate != 0.0)
      throw PreconditionError("run: a conformal drive needs the exponent to start at 0");
  }
  const bool metric_static =
      !policy && (!evolving_family || model.f().rate == 0.0);

  FlowState state;
  state.curve = prepare_initial(model, initial);
  state.t = 0.0;
  state.step = 0;
  state.f_value = evolving_family ? (policy ? 0.0 : model.f()(0.0)) : 0.0;

  MetricModel eff = policy ? model.with_conformal_value(0.0) : model;
  state.geom = geometry(state.curve, eff, 0.0, params.n_max);

  const double l0 = state.geom.L;
  const double m0 = sq(state.geom.max_k());
  const double lambda = std::max(model.lambda_bound(), 1e-6);
  const double window =
      std::log1p(lambda / (4.0 * m0 + lambda + 1.0)) / (2.0 * lambda);
  const bool bernstein_active = params.bernstein && metric_static;

  RunResult out;
  {
    Diagnostics row0 = make_row(state, eff, l0);
    if (evolving_family) {
      row0.f_value = state.f_value;
      if (!policy) row0.df_dt = model.f().rate;
    }
    out.trace.push_back(std::move(row0));
  }
  long last_snap = -1;
  if (snapshot && params.snapshot_every > 0) {
    snapshot(state);
    last_snap = 0;
  }

  std::deque<double> recent;   // geodesic residuals of the last ≤ 10 steps
  int consec = 0;              // consecutive steps below tol_geo
  double base_L = state.geom.L;
  double base_M = m0;
  double base_mu = out.trace.front().mu;

  std::optional<StopReport> done;
  auto halt = [&](StopReason reason, std::string detail) {
    StopReport rep;
    rep.reason = reason;
    rep.detail = std::move(detail);
    rep.final = out.trace.back();
    rep.final_residual = out.trace.back().sup_d1;
    rep.last_residuals.assign(recent.begin(), recent.end());
    done = std::move(rep);
  };

  while (!done) {
    const double remaining = params.t_max - state.t;
    if (remaining <= 1e-15 * std::max(1.0, params.t_max)) {
      halt(StopReason::TMaxReached, "");
      break;
    }

    // Conformal drive for this step.
    RateResult drive;
    if (policy) {
      try {
        drive = policy->rate(state, eff);
      } catch (const DegenerateDenominatorError& err) {
        halt(StopReason::MonitorViolation, err.what());
        break;
      }
    } else if (evolving_family) {
      drive.rate = model.f().rate;
    }

    // Time step.
    const double min_ds =
        *std::min_element(state.geom.ds.begin(), state.geom.ds.end());
    const double raw_dt = params.c_cfl * min_ds * min_ds;
    if (raw_dt < params.dt_min) {
      halt(StopReason::BlowupGuard,
           fmt("time step underflow: cfl step ", raw_dt, " below dt_min = ",
               params.dt_min));
      break;
    }
    const double dt = std::min({raw_dt, params.dt_max, remaining});

    // Exponent update precedes the step; the step runs under the new metric.
    double f_next = state.f_value;
    if (policy)
      f_next = state.f_value + dt * drive.rate;
    else if (evolving_family)
      f_next = model.f()(state.t + dt);
    if (evolving_family && std::abs(f_next) > 50.0) {
      halt(StopReason::BlowupGuard,
           fmt("metric-singular: conformal exponent ", f_next, " exceeds ±50"));
      break;
    }

    FlowState next;
    MetricModel eff_next = eff;
    try {
      if (policy) {
        eff_next = model.with_conformal_value(f_next);
        FlowState stage;
        stage.curve = state.curve;
        stage.t = state.t;
        stage.step = state.step;
        stage.f_value = f_next;
        stage.geom = geometry(state.curve, eff_next, state.t, params.n_max);
        next = step(stage, eff_next, dt);
      } else {
        next = step(state, model, dt);
        next.f_value = f_next;
      }
    } catch (const DomainError& err) {
      halt(StopReason::ResampleFailure, err.what());
      break;
    } catch (const DegenerateCurveError& err) {
      halt(StopReason::BlowupGuard, err.what());
      break;
    }

    const double df_dt =
        policy ? drive.rate : (evolving_family ? model.f().rate : 0.0);

    IdentityResiduals res;
    if (params.monitor_identities && dt >= kMonitorDtFloor)
      res = monitor_identities(state, next, eff, df_dt);

    Diagnostics row = make_row(next, eff_next, l0);
    row.dL_dt = (row.L - base_L) / dt;
    row.res1 = res.res1;
    row.res2 = res.res2;
    row.res3 = res.res3;
    if (evolving_family) {
      row.f_value = next.f_value;
      row.df_dt = df_dt;
      row.rate_denom = drive.denom;
    }
    out.trace.push_back(row);

    recent.push_back(row.sup_d1);
    if (recent.size() > 10) recent.pop_front();
    consec = row.sup_d1 < params.tol_geo ? consec + 1 : 0;

    state = std::move(next);
    eff = std::move(eff_next);

    if (snapshot && params.snapshot_every > 0 &&
        state.step % params.snapshot_every == 0) {
      snapshot(state);
      last_snap = state.step;
    }

    // Stop checks, most severe first.
    if (row.max_k2 > params.k2_max) {
      halt(StopReason::BlowupGuard,
           fmt("curvature blow-up: max k² = ", row.max_k2, " above ", params.k2_max));
      break;
    }
    std::string violation;
    if (params.monitor_identities) {
      if (res.res1 > params.res1_max)
        violation = fmt("length-law residual ", res.res1, " above ", params.res1_max);
      else if (res.res2 > params.res2_max)
        violation = fmt("speed-law residual ", res.res2, " above ", params.res2_max);
      else if (res.res3 > params.res3_max)
        violation = fmt("tangent-law residual ", res.res3, " above ", params.res3_max);
    }
    if (violation.empty() && metric_static && row.L > base_L + 1e-12 * l0)
      violation = fmt("length increased by ", row.L - base_L, " in one step");
    if (violation.empty() && params.monitor_max_k2 &&
        row.max_k2 > base_M * (1.0 + 1e-4) + 1e-12)
      violation = fmt("max k² rose from ", base_M, " to ", row.max_k2);
    if (violation.empty() && params.monitor_mu && std::isfinite(base_mu) &&
        row.mu < base_mu - 1e-6 * dt)
      violation = fmt("fiber height dropped from ", base_mu, " to ", row.mu);
    if (violation.empty() && bernstein_active && state.t <= window)
      violation = bernstein_row_violation(row, 0.0, m0, params.bernstein_eps);
    if (!violation.empty()) {
      halt(StopReason::MonitorViolation, violation);
      break;
    }

    if (consec >= params.geo_consecutive) {
      halt(StopReason::GeodesicConverged,
           fmt("sup|DT/∂s| < ", params.tol_geo, " for ", consec,
               " consecutive steps"));
      break;
    }
    if (row.L < params.l_min_factor * l0) {
      halt(StopReason::LengthFloor,
           fmt("length ", row.L, " below floor ", params.l_min_factor * l0));
      break;
    }
    if (params.t_max - state.t <= 1e-15 * std::max(1.0, params.t_max)) {
      halt(StopReason::TMaxReached, "");
      break;
    }

    base_L = row.L;
    base_M = row.max_k2;
    base_mu = row.mu;

    // Periodic arclength redistribution; monitors never bridge it because the
    // baselines are refreshed from the redistributed state.
    if (params.resample_every > 0 && state.step % params.resample_every == 0) {
      try {
        DiscreteCurve redistributed = resample_arclength(state.curve, eff, state.t);
        for (int i = 0; i < redistributed.n(); ++i) {
          const Vec& p = redistributed.nodes[static_cast<size_t>(i)];
          if (!p.allFinite() || !eff.in_domain(p))
            throw DomainError(fmt("resampled node ", i, " left the chart domain"));
        }
        state.curve = std::move(redistributed);
        state.geom = geometry(state.curve, eff, state.t, params.n_max);
      } catch (const ResampleError& err) {
        halt(StopReason::ResampleFailure, err.what());
        break;
      } catch (const DomainError& err) {
        halt(StopReason::ResampleFailure, err.what());
        break;
      } catch (const DegenerateCurveError& err) {
        halt(StopReason::BlowupGuard, err.what());
        break;
      }
      base_L = state.geom.L;
      base_M = sq(state.geom.max_k());
      if (eff.has_fiber())
        base_mu = ramp_height(state.curve, state.geom, eff, state.t).mu;
    }
  }

  out.report = std::move(*done);
  if (snapshot && params.snapshot_every > 0 && state.step != last_snap)
    snapshot(state);
  out.final_state = std::move(state);
  return out;
}

}  // namespace geoflow
