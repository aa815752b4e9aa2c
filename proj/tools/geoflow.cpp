// geoflow — command-line front end for the curve flow engine.
//
//   geoflow <flow|helix|ramp|conformal> [--config file.json] [--set key=value ...]
//
// Every run writes a report.json with the fully resolved configuration, a
// content hash of its inputs, and the stop outcome. Flow-like runs add a
// trace.csv (one row per accepted step) and, at a positive snapshot cadence,
// numbered curve snapshots. Exit codes: 0 clean stop, 2 monitor violation,
// 3 configuration error, 4 numeric abort.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geoflow/config.hpp"
#include "geoflow/evolving_metric.hpp"
#include "geoflow/flow.hpp"
#include "geoflow/ramp.hpp"
#include "geoflow/spaceform_ode.hpp"
#include "geoflow/trace_io.hpp"

namespace fs = std::filesystem;
using namespace geoflow;

namespace {

int exit_code_for(StopReason reason) {
  switch (reason) {
    case StopReason::GeodesicConverged:
    case StopReason::TMaxReached:
    case StopReason::LengthFloor:
      return 0;
    case StopReason::MonitorViolation:
      return 2;
    default:  // BlowupGuard, ResampleFailure
      return 4;
  }
}

std::string slurp_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int run_flow_like(const RunConfig& cfg) {
  const MetricModel model = build_model(cfg);
  const DiscreteCurve seed = build_curve(cfg);
  const bool driven = cfg.subcommand == "conformal";
  const bool ramp_run = cfg.subcommand == "ramp";

  if (ramp_run) {
    const CurveGeometry g0 = geometry(seed, model, 0.0, 1);
    const RampContext rc = ramp_height(seed, g0, model, 0.0);
    if (!rc.is_ramp) {
      std::cerr << "geoflow: the seed curve is not a ramp: min fiber height "
                << rc.mu << '\n';
      return 3;
    }
  }

  FlowParams params = cfg.flow_params();
  const int cadence = cfg.output.snapshot_every;
  if (ramp_run) params.snapshot_every = 1;  // per-step height sampling

  const fs::path dir(cfg.output.dir);
  fs::create_directories(dir);
  if (cadence > 0) fs::create_directories(dir / "snapshots");

  std::optional<RampRecorder> recorder;
  if (ramp_run) recorder.emplace(model);

  // snapshots are numbered in write order; the final state is always included
  int snap_index = 0;
  long last_snap_step = -1;
  auto write_snap = [&](const FlowState& s) {
    if (cadence <= 0 || s.step == last_snap_step) return;
    last_snap_step = s.step;
    char name[16];
    std::snprintf(name, sizeof name, "%04d.csv", snap_index++);
    const MetricModel frame = driven ? model.with_conformal_value(s.f_value) : model;
    write_snapshot_csv((dir / "snapshots" / name).string(), s, frame);
  };

  std::function<void(const FlowState&)> hook;
  if (recorder || cadence > 0)
    hook = [&](const FlowState& s) {
      if (recorder) recorder->record(s);
      if (cadence > 0 && s.step % cadence == 0) write_snap(s);
    };

  std::unique_ptr<EvolvingPolicy> policy;
  if (driven) {
    if (model.family() == Family::WarpedCircle)
      policy = std::make_unique<WarpedRate>();
    else
      policy = std::make_unique<ConformalRate>();
  }

  const auto start = std::chrono::steady_clock::now();
  const RunResult res = run(model, seed, params, policy.get(), hook);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_snap(res.final_state);
  write_trace_csv((dir / "trace.csv").string(), res.trace);
  if (recorder) {
    write_ramp_csv((dir / "ramp.csv").string(), recorder->trace());
    if (res.report.reason == StopReason::GeodesicConverged)
      write_snapshot_csv((dir / "geodesic.csv").string(), res.final_state, model);
  }

  const int code = exit_code_for(res.report.reason);
  const Diagnostics& fin = res.report.final;

  RunReport rep;
  rep.subcommand = cfg.subcommand;
  rep.resolved_config = resolved_json(cfg);
  rep.overrides = cfg.overrides;
  std::string material = rep.resolved_config;
  if (cfg.curve.kind == "file") material += slurp_file(cfg.curve.file);
  rep.input_hash = git_blob_sha1(material);
  rep.wall_seconds = wall;
  rep.exit_code = code;
  rep.stop_reason = to_string(res.report.reason);
  rep.stop_detail = res.report.detail;
  rep.steps = fin.step;
  rep.final_t = fin.t;
  rep.summary = {{"L", fin.L},
                 {"bending", fin.bending},
                 {"max_k2", fin.max_k2},
                 {"sup_d1", fin.sup_d1}};
  if (driven) {
    rep.summary.emplace_back("f_value", fin.f_value);
    rep.summary.emplace_back("rate_denom", fin.rate_denom);
  }
  if (recorder && !recorder->trace().samples.empty()) {
    const RampSample& last = recorder->trace().samples.back();
    rep.summary.emplace_back("mu", last.mu);
    rep.summary.emplace_back("winding", static_cast<double>(last.winding));
    rep.summary.emplace_back(
        "length_floor", 2.0 * M_PI * static_cast<double>(std::labs(last.winding)) *
                            model.fiber_radius());
  }
  write_report_json((dir / "report.json").string(), rep);

  std::cout << cfg.subcommand << ": " << rep.stop_reason;
  if (!rep.stop_detail.empty()) std::cout << " (" << rep.stop_detail << ")";
  std::cout << " after " << rep.steps << " steps, t = " << fin.t << ", L = " << fin.L
            << '\n'
            << "wrote " << (dir / "report.json").string() << '\n';
  return code;
}

int run_helix(const RunConfig& cfg) {
  const fs::path dir(cfg.output.dir);
  fs::create_directories(dir);
  const HelixConfig& h = cfg.helix;

  const auto start = std::chrono::steady_clock::now();
  HelixTrajectory traj;
  if (h.variables == "uv") {
    // integrate in the squared variables, then report k = √u, τ = sgn(τ₀)√v
    const std::vector<UVState> uv =
        integrate_uv({h.k0 * h.k0, h.tau0 * h.tau0, h.K, 0.0}, h.t_end, h.dt);
    const double tau_sign = h.tau0 < 0.0 ? -1.0 : 1.0;
    traj.samples.reserve(uv.size());
    for (const UVState& s : uv)
      traj.samples.push_back({std::sqrt(std::max(s.u, 0.0)),
                              tau_sign * std::sqrt(std::max(s.v, 0.0)), s.K, s.t});
  } else {
    traj = integrate_helix({h.k0, h.tau0, h.K, 0.0}, h.t_end, h.dt);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_helix_csv((dir / "helix.csv").string(), traj);

  const HelixState& fin = traj.back();
  RunReport rep;
  rep.subcommand = "helix";
  rep.resolved_config = resolved_json(cfg);
  rep.overrides = cfg.overrides;
  rep.input_hash = git_blob_sha1(rep.resolved_config);
  rep.wall_seconds = wall;
  rep.exit_code = 0;  // a finite-time singularity is a result, not a failure
  rep.stop_reason = traj.blew_up ? "blow-up" : "completed";
  if (traj.blew_up) {
    std::ostringstream os;
    os << "curvature guard fired at t = " << traj.t_blowup;
    rep.stop_detail = os.str();
  }
  rep.steps = static_cast<long>(traj.samples.size()) - 1;
  rep.final_t = fin.t;
  rep.summary = {{"k", fin.k}, {"tau", fin.tau}, {"u", fin.u()}, {"v", fin.v()}};
  if (traj.blew_up) rep.summary.emplace_back("t_blowup", traj.t_blowup);
  write_report_json((dir / "report.json").string(), rep);

  std::cout << "helix: " << rep.stop_reason << " at t = " << fin.t << ", k = " << fin.k
            << ", tau = " << fin.tau << '\n'
            << "wrote " << (dir / "report.json").string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete curve shortening flows on model geometries"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir;

  CLI::App* sub_flow =
      app.add_subcommand("flow", "run the shortening flow on a fixed metric");
  CLI::App* sub_helix =
      app.add_subcommand("helix", "integrate the constant-(k,tau) curve reduction");
  CLI::App* sub_ramp =
      app.add_subcommand("ramp", "flow a ramp to its geodesic limit on a product");
  CLI::App* sub_conf = app.add_subcommand(
      "conformal", "flow while the metric drives its own conformal exponent");
  for (CLI::App* sub : {sub_flow, sub_helix, sub_ramp, sub_conf}) {
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--set", sets,
                    "override a configuration key: dotted.path=value (repeatable)");
    sub->add_option("--out", out_dir, "output directory (wins over output.dir)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;  // --help exits 0; usage errors are config errors
  }

  if (!out_dir.empty()) sets.push_back("output.dir=" + out_dir);
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    const RunConfig cfg = parse_config(sub, config_path, sets);
    return sub == "helix" ? run_helix(cfg) : run_flow_like(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "geoflow: " << e.what() << '\n';
    return 3;
  } catch (const PreconditionError& e) {
    std::cerr << "geoflow: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "geoflow: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "geoflow: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "geoflow: internal error: " << e.what() << '\n';
    return 1;
  }
}
