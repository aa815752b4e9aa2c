#include "geoflow/ramp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "geoflow/curve.hpp"

namespace geoflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1.05;      // permissive factor on the envelopes
constexpr double kXiFloor = 1e-9;    // flat models: envelopes degrade to constants
constexpr double kSignTol = 1e-9;    // roundoff curvature does not activate a branch
constexpr double kMuSlack = 1e-6;    // per unit time, on the min-height monitor

std::vector<double> node_curvature(const FlowState& s, const MetricModel& model) {
  if (model.dim() == 2) return signed_curvature(s.curve, s.geom, model, s.t);
  return s.geom.k;
}

}  // namespace

RampRecorder::RampRecorder(MetricModel model) : model_(std::move(model)) {
  trace_.xi = model_.xi_bound();
}

void RampRecorder::record(const FlowState& s) {
  const RampContext ctx = ramp_height(s.curve, s.geom, model_, s.t);
  if (trace_.samples.empty() && !ctx.is_ramp) {
    for (int i = 0; i < s.curve.n(); ++i) {
      if (ctx.h[i] <= 0.0) {
        std::ostringstream msg;
        msg << "not a ramp: fiber height " << ctx.h[i] << " at node " << i
            << " is not positive";
        throw PreconditionError(msg.str());
      }
    }
  }
  const std::vector<double> k = node_curvature(s, model_);
  RampSample row;
  row.t = s.t;
  row.step = s.step;
  row.mu = ctx.mu;
  row.winding = ctx.winding;
  row.kappa = *std::min_element(k.begin(), k.end());
  row.lambda = *std::max_element(k.begin(), k.end());
  row.phi = k[0] / ctx.h[0];
  row.psi = row.phi;
  for (int i = 1; i < s.curve.n(); ++i) {
    const double r = k[i] / ctx.h[i];
    row.phi = std::min(row.phi, r);
    row.psi = std::max(row.psi, r);
  }
  if (trace_.samples.empty()) {
    if (row.phi < 0.0) trace_.c1 = row.phi;
    if (row.psi > 0.0) trace_.c2 = row.psi;
  }
  trace_.samples.push_back(row);
}

double height_law_residual(const FlowState& prev, const FlowState& next,
                           const MetricModel& model) {
  if (!model.has_fiber())
    throw PreconditionError("height_law_residual needs a model with an S¹ factor");
  const int n = prev.curve.n();
  if (next.curve.n() != n)
    throw PreconditionError("height_law_residual needs states on the same grid");
  const double dt = next.t - prev.t;
  if (!(dt > 0.0)) throw PreconditionError("height_law_residual needs next.t > prev.t");

  const std::vector<double> hp = ramp_height(prev.curve, prev.geom, model, prev.t).h;
  const std::vector<double> hn = ramp_height(next.curve, next.geom, model, next.t).h;
  const std::vector<double>& v = prev.geom.v;
  const double du = prev.curve.du();

  double worst = 0.0;
  double scale = 1.0;
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1) % n;
    const int im = (i + n - 1) % n;
    const double dsp = 0.5 * (v[i] + v[ip]) * du;
    const double dsm = 0.5 * (v[im] + v[i]) * du;
    const double hpp = ((hp[ip] - hp[i]) / dsp - (hp[i] - hp[im]) / dsm) / (0.5 * (dsp + dsm));
    const double rhs = hpp + prev.geom.k[i] * prev.geom.k[i] * hp[i];
    const double lhs = (hn[i] - hp[i]) / dt;
    worst = std::max(worst, std::abs(lhs - rhs));
    scale = std::max(scale, std::abs(rhs));
  }
  return worst / scale;
}

MonitorReport monitor_mu(const RampTrace& trace, int resample_every) {
  MonitorReport rep;
  if (trace.samples.empty()) return rep;
  if (!(trace.samples.front().mu > 0.0)) {
    std::ostringstream msg;
    msg << "monitor_mu needs a ramp at the first sample; mu = " << trace.samples.front().mu;
    throw PreconditionError(msg.str());
  }
  for (size_t i = 1; i < trace.samples.size(); ++i) {
    const RampSample& a = trace.samples[i - 1];
    const RampSample& b = trace.samples[i];
    if (resample_every > 0 && a.step > 0 && a.step % resample_every == 0)
      continue;  // the grid changed here; extrema are not comparable
    const double slack = kMuSlack * (b.t - a.t);
    if (b.mu < a.mu - slack) {
      rep.ok = false;
      std::ostringstream msg;
      msg << "min fiber height dropped from " << a.mu << " to " << b.mu << " between t = "
          << a.t << " and t = " << b.t << " (step " << b.step << ")";
      rep.detail = msg.str();
      return rep;
    }
  }
  return rep;
}

const char* to_string(BranchStatus s) {
  switch (s) {
    case BranchStatus::Holds: return "holds";
    case BranchStatus::Violated: return "violated";
    case BranchStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

GrowthBounds exponential_growth_bounds(const RampTrace& trace, double xi) {
  GrowthBounds out;
  if (trace.samples.empty()) {
    out.detail = "empty trace";
    return out;
  }
  const double rate = std::max(xi, kXiFloor);
  const double t0 = trace.samples.front().t;
  const double c1 = trace.samples.front().phi;
  const double c2 = trace.samples.front().psi;

  bool lower_applies = true;
  bool upper_applies = true;
  for (const RampSample& s : trace.samples) {
    if (!(s.kappa < -kSignTol)) lower_applies = false;
    if (!(s.lambda > kSignTol)) upper_applies = false;
  }

  std::ostringstream detail;
  if (lower_applies) {
    out.lower_margin = kInf;
    for (const RampSample& s : trace.samples) {
      const double envelope = kSlack * c1 * std::exp(rate * (s.t - t0));
      out.lower_margin = std::min(out.lower_margin, s.phi - envelope);
    }
    out.lower = out.lower_margin >= 0.0 ? BranchStatus::Holds : BranchStatus::Violated;
    if (out.lower == BranchStatus::Violated)
      detail << "lower envelope violated by " << -out.lower_margin << "; ";
  } else {
    detail << "lower branch: curvature minimum not negative throughout; ";
  }
  if (upper_applies) {
    out.upper_margin = kInf;
    for (const RampSample& s : trace.samples) {
      const double envelope = kSlack * c2 * std::exp(rate * (s.t - t0));
      out.upper_margin = std::min(out.upper_margin, envelope - s.psi);
    }
    out.upper = out.upper_margin >= 0.0 ? BranchStatus::Holds : BranchStatus::Violated;
    if (out.upper == BranchStatus::Violated)
      detail << "upper envelope violated by " << -out.upper_margin << "; ";
  } else {
    detail << "upper branch: curvature maximum not positive throughout; ";
  }
  out.detail = detail.str();
  if (!out.detail.empty()) out.detail.resize(out.detail.size() - 2);
  return out;
}

GeodesicCertificate find_geodesic(const MetricModel& model, const DiscreteCurve& initial,
                                  const FlowParams& params) {
  if (model.family() != Family::Product)
    throw PreconditionError("find_geodesic needs a static product model with an S¹ factor");

  // check the seed before any flow work so the error points at the input
  {
    const CurveGeometry geom = geometry(initial, model, 0.0, 1);
    const RampContext ctx = ramp_height(initial, geom, model, 0.0);
    if (!ctx.is_ramp) {
      for (int i = 0; i < initial.n(); ++i) {
        if (ctx.h[i] <= 0.0) {
          std::ostringstream msg;
          msg << "not a ramp: fiber height " << ctx.h[i] << " at node " << i
              << " is not positive";
          throw PreconditionError(msg.str());
        }
      }
    }
  }

  RampRecorder recorder(model);
  FlowParams p = params;
  p.snapshot_every = 1;
  const RunResult rr = run(model, initial, p, nullptr,
                           [&recorder](const FlowState& s) { recorder.record(s); });

  GeodesicCertificate cert;
  cert.converged = rr.report.reason == StopReason::GeodesicConverged;
  cert.report = rr.report;
  cert.geodesic = rr.final_state.curve;
  cert.trace = recorder.trace();
  cert.winding = cert.trace.samples.back().winding;
  cert.sup_d1 = rr.trace.back().sup_d1;
  cert.sup_d2 = rr.trace.back().sup_d2;
  cert.length = rr.trace.back().L;
  cert.length_floor =
      2.0 * M_PI * static_cast<double>(cert.winding) * model.fiber_radius();
  return cert;
}

}  // namespace geoflow
