#ifndef GEOFLOW_TRACE_IO_HPP
#define GEOFLOW_TRACE_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "geoflow/curve.hpp"
#include "geoflow/flow.hpp"
#include "geoflow/ramp.hpp"
#include "geoflow/spaceform_ode.hpp"

namespace geoflow {

// All writers emit comma-separated values with 17-significant-digit decimals
// (so a rerun with the same configuration is byte-identical) and render NaN
// as an empty field: absent quantities stay machine-detectable. I/O failures
// throw Error with the path in the message.

// One decimal field: shortest-faithful %.17g, "" for NaN.
std::string format_field(double x);

// Per-step diagnostics, fixed column order:
//   step,t,L,dL_dt,bending,max_k2,min_k_signed,max_k,sup_d1,sup_d2,sup_d3,
//   bending2,mu,L0,res1,res2,res3,f_value,df_dt,rate_denom
// An empty trace yields a header-only file.
void write_trace_csv(const std::string& path, const std::vector<Diagnostics>& trace);

// Node-level snapshot of one state: node index, chart coordinates, speed,
// curvature; plus signed curvature (dim-2 charts), torsion (dim-3 charts,
// blank where the Frenet frame degenerates or the geometry was built with
// n_max < 2), and fiber height on models with an S¹ factor.
void write_snapshot_csv(const std::string& path, const FlowState& state,
                        const MetricModel& model);

// Plain node coordinates with the loop lift in a "# loop_shift:" header;
// read_points_csv accepts exactly this format (comma- or space-separated
// coordinates, # comments ignored, missing header = plainly closed curve).
void write_points_csv(const std::string& path, const DiscreteCurve& curve);
DiscreteCurve read_points_csv(const std::string& path);

// Ramp monitor trace: t,step,mu,kappa,lambda,phi,psi,winding.
void write_ramp_csv(const std::string& path, const RampTrace& trace);

// Reduced-system trajectory: t,k,tau,u,v,invariant_residual,diamond_residual.
// invariant_residual is the drift of the conserved combination
// (u + v + K)/√v from its initial value, blank where v vanishes;
// diamond_residual is the closed-form defect of the normalized K = −1
// torsion law, blank unless K = −1 and k₀ = 1 and the torsion lies inside
// its factor bracket.
void write_helix_csv(const std::string& path, const HelixTrajectory& traj);

// Run manifest companion to the CSVs.
struct RunReport {
  std::string subcommand;
  std::string resolved_config;        // canonical JSON text of the configuration
  std::vector<std::string> overrides; // key=value flags applied over the file
  std::string input_hash;             // git-blob SHA-1 of the resolved config
                                      // (and the points file, when one is read)
  double wall_seconds = 0.0;
  int exit_code = 0;
  std::string stop_reason;
  std::string stop_detail;
  long steps = 0;
  double final_t = kNaN;
  std::vector<std::pair<std::string, double>> summary;  // named end-state numbers
};

void write_report_json(const std::string& path, const RunReport& report);

// SHA-1 of "blob <size>\0<bytes>" in lowercase hex — the hash git itself
// assigns the same content, so artifacts can be checked against a checkout.
std::string git_blob_sha1(const std::string& bytes);

}  // namespace geoflow

#endif  // GEOFLOW_TRACE_IO_HPP
