#ifndef GEOFLOW_CONFIG_HPP
#define GEOFLOW_CONFIG_HPP

#include <string>
#include <vector>

#include "geoflow/curve.hpp"
#include "geoflow/flow.hpp"
#include "geoflow/manifold.hpp"

namespace geoflow {

// Base-manifold block consumed by the product / conformal / warped-circle
// families. `dim` and `curvature` apply to euclidean / space-form bases,
// `radius` to circle bases.
struct BaseConfig {
  std::string family = "euclidean";  // euclidean | space-form | circle
  int dim = 2;
  double curvature = 1.0;
  double radius = 1.0;
};

struct ManifoldConfig {
  // euclidean | circle | space-form | product | conformal | warped-circle
  std::string family = "euclidean";
  int dim = 2;             // euclidean, space-form
  double curvature = 1.0;  // space-form, ±1
  double radius = 1.0;     // circle
  double rho = 1.0;        // fiber radius (product, warped-circle)
  double f_offset = 0.0;   // clock-driven conformal exponent (flow runs only)
  double f_rate = 0.0;
  BaseConfig base;
};

struct CurveConfig {
  // circle | ellipse | perturbed-circle | random-circle | torus-winding |
  // s2xs1 | file
  std::string kind = "circle";
  int n = 256;              // power of two in [16, 4096]
  double radius = 1.0;      // circle, perturbed-circle, random-circle
  double a = 2.0;           // ellipse semi-axes
  double b = 1.0;
  double amp = 0.0;         // perturbation amplitude
  int mode = 1;             // perturbation mode
  long p = 1;               // torus-winding degrees
  long q = 1;
  long winding = 1;         // s2xs1 fiber degree
  double base_radius = 0.5; // s2xs1 base chart radius
  int random_modes = 0;     // random-circle: number of seeded Fourier modes
  std::string file;         // points file for kind = file
};

// Mirrors FlowParams; the snapshot cadence lives in the output block.
struct IntegratorConfig {
  double t_max = 1.0;
  double tol_geo = 1e-4;
  int geo_consecutive = 50;
  double c_cfl = 0.25;
  double dt_max = 1e-2;
  double dt_min = 1e-12;
  int resample_every = 25;
  double k2_max = 1e6;
  double l_min_factor = 1e-4;
  int n_max = 3;
  bool monitor_identities = true;
  double res1_max = 0.1;
  double res2_max = 0.25;
  double res3_max = 0.5;
  bool bernstein = true;
  double bernstein_eps = 0.05;
  bool monitor_mu = false;
  bool monitor_max_k2 = false;
};

struct OutputConfig {
  std::string dir = "out";
  int snapshot_every = 0;  // steps between curve snapshots; 0 = none
};

struct HelixConfig {
  int K = -1;
  double k0 = 1.0;
  double tau0 = 1.0;
  double dt = 1e-3;
  double t_end = 10.0;
  std::string variables = "ktau";  // ktau | uv
};

struct RunConfig {
  std::string subcommand = "flow";  // flow | helix | ramp | conformal
  ManifoldConfig manifold;
  CurveConfig curve;
  IntegratorConfig integrator;
  OutputConfig output;
  HelixConfig helix;
  long seed = 0;  // drives the random-circle generator

  // provenance: the key=value overrides applied on top of the file
  std::vector<std::string> overrides;

  FlowParams flow_params() const;
};

// Resolve a run configuration: start from the subcommand's defaults, merge
// the JSON config file (when `config_path` is non-empty), then apply
// `overrides` of the form "dotted.key=value" (flags win over file keys).
// Unknown keys are rejected by exact name and every violation — unknown
// keys, type mismatches, bad values — is listed in one ConfigError.
// Subcommand-adjusted defaults: ramp runs enable the min-height monitor and
// allot t_max = 30; conformal runs enable the max-curvature monitor and
// allot t_max = 2.
RunConfig parse_config(const std::string& subcommand, const std::string& config_path,
                       const std::vector<std::string>& overrides);

// Same resolution from in-memory JSON text ("" = defaults only).
RunConfig parse_config_text(const std::string& subcommand, const std::string& json_text,
                            const std::vector<std::string>& overrides);

// Canonical JSON serialization (sorted keys, 2-space indent). Reparsing it
// with parse_config_text yields an equivalent configuration; the overrides
// list is provenance, not content, and is not serialized.
std::string resolved_json(const RunConfig& config);

// Chart dimension implied by the manifold block.
int model_dim(const ManifoldConfig& m);

// Construct the metric model / initial curve the configuration describes.
// build_curve reads the points file for kind = file and checks its chart
// dimension against the manifold block.
MetricModel build_model(const RunConfig& config);
DiscreteCurve build_curve(const RunConfig& config);

}  // namespace geoflow

#endif  // GEOFLOW_CONFIG_HPP
