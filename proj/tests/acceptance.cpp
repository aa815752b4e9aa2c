// End-to-end acceptance checks for the whole stack: engine, reductions,
// ramp certification, driven metrics, and the command-line tool. Each
// criterion prints one PASS/FAIL line with its measured numbers; the exit
// code is the number of failures, so the suite stays honest about any
// criterion the implementation cannot meet.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "geoflow/curve.hpp"
#include "geoflow/evolving_metric.hpp"
#include "geoflow/flow.hpp"
#include "geoflow/generators.hpp"
#include "geoflow/manifold.hpp"
#include "geoflow/ramp.hpp"
#include "geoflow/spaceform_ode.hpp"
#include "geoflow/trace_io.hpp"

namespace fs = std::filesystem;
using namespace geoflow;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%2d] %s  %s — %s\n", id, pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double mean_chart_radius(const DiscreteCurve& c) {
  double mean = 0.0;
  for (const Vec& p : c.nodes) mean += p.norm();
  return mean / static_cast<double>(c.nodes.size());
}

// --- 1: the speed-law residual stays small on a shrinking ellipse ----------

void criterion_1() {
  Timer w;
  FlowParams p;
  p.t_max = 0.12;  // comfortably more than 1000 steps at this resolution
  const RunResult r = run(MetricModel::euclidean(2), gen_ellipse(512, 2.0, 1.0), p);
  const bool enough = r.trace.size() > 1000;
  double worst = 0.0;
  const std::size_t upto = std::min<std::size_t>(1000, r.trace.size() - 1);
  for (std::size_t i = 1; i <= upto; ++i)
    if (!std::isnan(r.trace[i].res1)) worst = std::max(worst, r.trace[i].res1);
  const double wall = w.s();
  report(1, "ellipse speed-law residual", enough && worst < 1e-2 && wall < 10.0,
         "sup res1 = " + fmt(worst) + " over the first 1000 steps (limit 1e-2), wall " +
             fmt(wall) + " s (limit 10)");
}

// --- 2: circles follow r(t) = sqrt(1 - 2t) and converge at order >= log2(3) --

void criterion_2() {
  auto radius_err = [](int n) {
    FlowParams p;
    p.t_max = 0.375;
    const RunResult r = run(MetricModel::euclidean(2), gen_circle(n, 2), p);
    return std::abs(mean_chart_radius(r.final_state.curve) - 0.5);
  };
  const double e512 = radius_err(512);
  const double e256 = radius_err(256);
  const double ratio = e256 / e512;
  report(2, "circle radius law", e512 < 1e-3 && ratio >= 3.0,
         "|r - 0.5| = " + fmt(e512) + " at n = 512 (limit 1e-3), n = 256 error ratio " +
             fmt(ratio) + " (needs >= 3)");
}

// --- 3: curvature and gradient bounds hold on the sphere over the horizon ---

void criterion_3() {
  Timer w;
  const MetricModel m = MetricModel::space_form(3, 1.0);
  const DiscreteCurve c = gen_perturbed_circle(512, 3, 1.0, 0.1, 3);
  const CurveGeometry g0 = geometry(c, m, 0.0, 3);
  const double m0 = g0.max_k() * g0.max_k();
  FlowParams p;
  p.t_max = 0.5 * std::log1p(1.0 / (4.0 * m0 + 2.0));
  const RunResult r = run(m, c, p);
  double worst_m = 0.0, worst_g = 0.0;
  for (const Diagnostics& row : r.trace) {
    worst_m = std::max(worst_m, row.max_k2);
    worst_g = std::max(worst_g, row.t * row.sup_d2 * row.sup_d2 +
                                    3.0 * row.sup_d1 * row.sup_d1);
  }
  const double wall = w.s();
  const bool pass = r.report.reason == StopReason::TMaxReached &&
                    worst_m <= 2.0 * m0 * 1.05 && worst_g <= 16.0 * m0 * 1.05 &&
                    wall < 30.0;
  report(3, "curvature/gradient bounds on the sphere", pass,
         "horizon " + fmt(p.t_max) + ": sup M_t/(2 M_0) = " + fmt(worst_m / (2.0 * m0)) +
             ", sup (t|D2T|^2+3|DT|^2)/(16 M_0) = " + fmt(worst_g / (16.0 * m0)) +
             " (limits 1.05), stop " + to_string(r.report.reason) + ", wall " +
             fmt(wall) + " s (limit 30)");
}

// --- 4 and 5: a perturbed torus winding settles onto the straight geodesic --

void criteria_4_5() {
  Timer w;
  const MetricModel m = MetricModel::product(MetricModel::circle(1.0), 1.0);
  const DiscreteCurve c = gen_torus_winding(512, 1, 2, 0.1, 3);
  FlowParams p;
  p.t_max = 10.0;
  p.snapshot_every = 1;
  p.monitor_mu = true;
  RampRecorder rec(m);
  const RunResult r = run(m, c, p, nullptr, [&](const FlowState& s) { rec.record(s); });
  const Diagnostics& fin = r.report.final;

  // distance to the best straight (1,2) line: spread of x1 - 2 x0 over nodes
  double lo = 1e300, hi = -1e300;
  for (const Vec& node : r.final_state.curve.nodes) {
    const double d = node[1] - 2.0 * node[0];
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  const double dev = 0.5 * (hi - lo) / std::sqrt(5.0);
  const double wall = w.s();
  const bool pass4 = r.report.reason == StopReason::GeodesicConverged &&
                     fin.sup_d1 < 1e-4 && fin.sup_d2 < 1e-3 && dev < 1e-3 &&
                     wall < 60.0;
  report(4, "torus winding finds the straight geodesic", pass4,
         std::string("stop ") + to_string(r.report.reason) + " at t = " + fmt(fin.t) +
             ", sup|DT| = " + fmt(fin.sup_d1) + " (limit 1e-4), sup|D2T| = " +
             fmt(fin.sup_d2) + " (limit 1e-3), line deviation = " + fmt(dev) +
             " (limit 1e-3), wall " + fmt(wall) + " s (limit 60)");

  const RampTrace& tr = rec.trace();
  double mu_min = 1e300;
  for (const RampSample& s : tr.samples) mu_min = std::min(mu_min, s.mu);
  const MonitorReport mono = monitor_mu(tr, p.resample_every);
  const bool pass5 = mono.ok && mu_min > 0.0 && !tr.samples.empty();
  report(5, "minimum fiber height is monotone", pass5,
         "min height over the run = " + fmt(mu_min) + " > 0, per-step monotonicity " +
             (mono.ok ? "holds" : ("fails: " + mono.detail)));
}

// --- 6: the hyperbolic helix reduction reaches the golden-ratio torsion -----

void criterion_6() {
  Timer w;
  const HelixTrajectory tr = integrate_helix({1.0, 1.0, -1, 0.0}, 10.0);
  const HelixState& b = tr.back();
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  double inv_worst = 0.0, dia_worst = 0.0;
  for (const HelixState& s : tr.samples) {
    if (s.v() > 0.0)
      inv_worst = std::max(inv_worst, std::abs(s.u() - invariant_u_of_v(s.v(), 1.0)));
    if (s.t <= 2.5)
      dia_worst = std::max(dia_worst, std::abs(diamond_residual(s.tau, s.t, 1.0)));
  }
  const double wall = w.s();
  const bool pass = !tr.blew_up && std::abs(b.tau - phi) < 1e-4 && b.u() < 1e-6 &&
                    inv_worst < 1e-8 && dia_worst < 1e-7 && wall < 1.0;
  report(6, "hyperbolic helix limit", pass,
         "|tau(10) - phi| = " + fmt(std::abs(b.tau - phi)) + " (limit 1e-4), k^2 = " +
             fmt(b.u()) + " (limit 1e-6), first-integral drift " + fmt(inv_worst) +
             " (limit 1e-8), factorization defect " + fmt(dia_worst) +
             " over t <= 2.5 (limit 1e-7), wall " + fmt(wall) + " s (limit 1)");
}

// --- 7: the published spherical torsion limit for u0 = v0 = 1 ---------------
// The squared-variable integration is seeded at u = v = 1 on the sphere and
// compared against the published limit (3 + sqrt(13))/2 for this data. The
// measured trajectory instead settles on (3 + sqrt(5))/2, the root of the
// conserved quantity m = (u + K + v)/sqrt(v); the pinned target appears to
// carry a sign slip under the radical. The criterion is kept at its published
// value and reports the discrepancy rather than hiding it.

void criterion_7() {
  const std::vector<UVState> uv = integrate_uv({1.0, 1.0, 1, 0.0}, 10.0);
  const UVState& b = uv.back();
  const double target = 0.5 * (3.0 + std::sqrt(13.0));
  const double dev = std::abs(std::sqrt(b.v) - target);
  const bool pass = dev < 1e-4 && b.u < 1e-6;
  report(7, "spherical torsion limit (published value)", pass,
         "sqrt(v)(10) = " + fmt(std::sqrt(b.v)) + " vs pinned " + fmt(target) +
             " (dev " + fmt(dev) + ", limit 1e-4; conserved-quantity root is " +
             fmt(0.5 * (3.0 + std::sqrt(5.0))) + "), u = " + fmt(b.u) +
             " (limit 1e-6)");
}

// --- 8: the driven conformal circle holds k^2 = 1 while the chart shrinks ---

void criterion_8() {
  Timer w;
  const MetricModel m = MetricModel::conformal(MetricModel::euclidean(2), {0.0, 0.0});
  const DiscreteCurve c = gen_circle(512, 2);
  FlowParams p;
  p.t_max = 2.0;
  p.snapshot_every = 25;
  p.monitor_max_k2 = true;
  const ConformalRate policy;
  double rad_worst = 0.0;
  auto hook = [&](const FlowState& s) {
    const double want = std::exp(-s.t);
    rad_worst = std::max(rad_worst,
                         std::abs(mean_chart_radius(s.curve) - want) / want);
  };
  const RunResult r = run(m, c, p, &policy, hook);
  double f_worst = 0.0, k_worst = 0.0;
  for (const Diagnostics& row : r.trace) {
    if (!std::isnan(row.f_value))
      f_worst = std::max(f_worst, std::abs(row.f_value - 2.0 * row.t));
    k_worst = std::max(k_worst, std::abs(row.max_k2 - 1.0));
  }
  const MonitorReport mono = monitor_max_curvature(r.trace);
  const double wall = w.s();
  const bool pass = r.report.reason == StopReason::TMaxReached && k_worst < 1e-3 &&
                    f_worst < 1e-3 && rad_worst < 1e-3 && mono.ok;
  report(8, "driven conformal circle", pass,
         "sup|k^2 - 1| = " + fmt(k_worst) + ", sup|f - 2t| = " + fmt(f_worst) +
             ", sup chart-radius rel err vs e^{-t} = " + fmt(rad_worst) +
             " (limits 1e-3), max-curvature monotone: " + (mono.ok ? "yes" : "no") +
             ", stop " + to_string(r.report.reason) + ", wall " + fmt(wall) + " s");
}

// --- 9: the tool refuses to cross a degenerate warped denominator -----------

void criterion_9(const std::string& bin) {
  if (bin.empty()) {
    report(9, "degenerate denominator aborts the tool", false,
           "path to the geoflow binary was not provided (--geoflow-bin)");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "geoflow_acceptance_9";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // ellipse tilted by atan(sqrt 2) in the (x1, theta) plane: at its curvature
  // maximum 2|pi T|^2 exactly cancels |pi N|^2, so the drive has no denominator
  const double beta = std::atan(std::sqrt(2.0));
  const double cb = std::cos(beta), sb = std::sin(beta);
  std::vector<Vec> nodes;
  for (int i = 0; i < 64; ++i) {
    const double u = 2.0 * M_PI * i / 64;
    const double x = 2.0 * std::cos(u), th = std::sin(u);
    Vec p(3);
    p << x * cb - th * sb, 0.0, x * sb + th * cb;
    nodes.push_back(p);
  }
  const fs::path points = dir / "tilted.csv";
  write_points_csv(points.string(), make_curve(nodes, Vec::Zero(3)));

  const fs::path out = dir / "run";
  const std::string cmd = "\"" + bin + "\" conformal --out \"" + out.string() +
                          "\" --set manifold.family=warped-circle"
                          " --set manifold.base.family=euclidean"
                          " --set manifold.base.dim=2"
                          " --set curve.kind=file --set curve.file=\"" +
                          points.string() + "\" --set curve.n=64 > \"" +
                          (dir / "stdout.txt").string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  const int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;

  std::string report_text, trace_text;
  {
    std::ifstream is(out / "report.json");
    std::ostringstream os;
    os << is.rdbuf();
    report_text = os.str();
    std::ifstream ts(out / "trace.csv");
    std::ostringstream to;
    to << ts.rdbuf();
    trace_text = to.str();
  }
  const bool named = report_text.find("denominator") != std::string::npos;
  const bool no_nan = !trace_text.empty() &&
                      trace_text.find("nan") == std::string::npos &&
                      trace_text.find("inf") == std::string::npos;
  report(9, "degenerate denominator aborts the tool", code == 2 && named && no_nan,
         "exit code " + std::to_string(code) +
             " (wants 2), report names the denominator: " + (named ? "yes" : "no") +
             ", trace free of nan/inf: " + (no_nan ? "yes" : "no"));
}

// --- 10: the full flow tracks the constant-(k, tau) reduction on the sphere --

void criterion_10() {
  Timer w;
  const MetricModel m = MetricModel::space_form(3, 1.0);
  const int n = 256;
  const DiscreteCurve c = gen_clifford_helix(n, 1, 2, 0.8, 0.6);

  auto measure = [&](const FlowState& s) {
    double k = 0.0, tau = 0.0;
    long defined = 0;
    const FrenetFrame f = frenet(s.curve, s.geom, m, s.t);
    for (int i = 0; i < n; ++i) {
      k += s.geom.k[i];
      if (f.tau_defined[static_cast<std::size_t>(i)]) {
        tau += std::abs(f.tau[i]);
        ++defined;
      }
    }
    return std::pair<double, double>{k / n, defined ? tau / defined : kNaN};
  };

  FlowState s0;
  s0.curve = c;
  s0.geom = geometry(c, m, 0.0, 3);
  const auto [k0, tau0] = measure(s0);

  const HelixTrajectory ode = integrate_helix({k0, tau0, 1, 0.0}, 0.5);
  auto ode_at = [&](double t) {
    auto it = std::lower_bound(ode.samples.begin(), ode.samples.end(), t,
                               [](const HelixState& s, double x) { return s.t < x; });
    if (it == ode.samples.begin()) return std::pair<double, double>{it->k, it->tau};
    if (it == ode.samples.end()) --it;
    const HelixState& hi = *it;
    const HelixState& lo = *(it - 1);
    const double a = (t - lo.t) / (hi.t - lo.t);
    return std::pair<double, double>{lo.k + a * (hi.k - lo.k),
                                     lo.tau + a * (hi.tau - lo.tau)};
  };

  FlowParams p;
  p.t_max = 0.5;
  p.snapshot_every = 50;
  double worst = 0.0;
  auto hook = [&](const FlowState& s) {
    const auto [k, tau] = measure(s);
    const auto [ko, to] = ode_at(s.t);
    worst = std::max(worst, std::abs(k - ko) / std::abs(ko));
    worst = std::max(worst, std::abs(tau - std::abs(to)) / std::abs(to));
  };
  const RunResult r = run(m, c, p, nullptr, hook);
  const double wall = w.s();
  const bool pass = r.report.reason == StopReason::TMaxReached && worst < 0.02;
  report(10, "full flow vs helix reduction on the sphere", pass,
         "seed (k, |tau|) = (" + fmt(k0) + ", " + fmt(tau0) +
             "), max rel deviation over t <= 0.5 = " + fmt(worst) +
             " (limit 0.02), stop " + to_string(r.report.reason) + ", wall " +
             fmt(wall) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  std::string bin;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--geoflow-bin") bin = argv[i + 1];
  if (bin.empty())
    if (const char* env = std::getenv("GEOFLOW_BIN")) bin = env;

  std::printf("acceptance checks (tolerances pinned in tests/acceptance.cpp)\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criteria_4_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(bin);
  criterion_10();
  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures;
}
