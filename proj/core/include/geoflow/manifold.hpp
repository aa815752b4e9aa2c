#ifndef GEOFLOW_MANIFOLD_HPP
#define GEOFLOW_MANIFOLD_HPP

#include <array>
#include <memory>

#include "geoflow/types.hpp"

namespace geoflow {

enum class Family {
  Euclidean,          // R^n, identity metric
  Circle,             // S¹ of radius r, angle chart, metric r²
  SpaceForm,          // constant curvature K = ±1, dim 2 or 3, conformally flat chart
  Product,            // base × S¹(ρ), block metric
  ConformalEvolving,  // exp(f(t)) · g_base, f spatially constant
  WarpedCircle        // g_base ⊕ exp(f(t)) ρ² dθ²
};

// Spatially constant conformal exponent, f(t) = offset + rate·t.
struct TimeScalar {
  double offset = 0.0;
  double rate = 0.0;
  double operator()(double t) const { return offset + rate * t; }
};

// Γ^a_{bc} at one point: comp[a](b,c).
struct Christoffels {
  int dim = 0;
  std::array<Mat, kMaxDim> comp{};
  // Γ(x, y)^a = Γ^a_{bc} x^b y^c
  Vec apply(const Vec& x, const Vec& y) const;
  bool zero = false;  // fast path for flat charts
};

class MetricModel {
 public:
  static MetricModel euclidean(int dim);
  static MetricModel circle(double radius = 1.0);
  // Stereographic chart for K = +1, Poincaré ball for K = -1. dim in {2, 3}.
  static MetricModel space_form(int dim, double K);
  static MetricModel product(MetricModel base, double fiber_radius);
  static MetricModel conformal(MetricModel base, TimeScalar f);
  static MetricModel warped_circle(MetricModel base, double fiber_radius, TimeScalar f);

  Family family() const;
  int dim() const;
  double curvature_constant() const;  // K (space forms only)
  double fiber_radius() const;        // ρ (Product / WarpedCircle)
  double circle_radius() const;       // r (Circle only)
  MetricModel base() const;           // inner model (Product / Conformal / Warped)
  const TimeScalar& f() const;        // conformal exponent (Conformal / Warped)

  // Snapshot with f frozen at a given value (rate 0); used by evolving-metric runs.
  MetricModel with_conformal_value(double f_value) const;

  double lambda_bound() const;  // Λ ≥ sup |R(X̃,Ỹ,Z̃,W̃)| over unit frames
  double xi_bound() const;      // Ξ ≥ sup of sectional curvature

  bool has_fiber() const;       // carries a distinguished S¹ factor
  int fiber_axis() const;       // chart index of the S¹ angle
  double fiber_scale(double t) const;  // sqrt(g_θθ): ρ, or ρ·exp(f(t)/2)

  // Period of a chart axis (2π for angle coordinates, 0 = aperiodic).
  double coord_period(int axis) const;
  bool in_domain(const Vec& p) const;
  void require_in_domain(const Vec& p) const;

 private:
  struct Impl;
  explicit MetricModel(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

Mat metric_at(const MetricModel& m, const Vec& p, double t);
Christoffels christoffel(const MetricModel& m, const Vec& p, double t);

// R(X,Y)Z with the sign fixed by the space-form identity
//   R(X,Y)Z = K (⟨X,Z⟩ Y − ⟨Y,Z⟩ X),
// so that R(T,N)T = K N and R(T,N)N = −K T on orthonormal pairs.
Vec riemann_apply(const MetricModel& m, const Vec& p, const Vec& X, const Vec& Y,
                  const Vec& Z, double t);

// ⟨R(X,Y)Z, W⟩
double riemann_component(const MetricModel& m, const Vec& p, const Vec& X,
                         const Vec& Y, const Vec& Z, const Vec& W, double t);

// ⟨R(X,Y)X, Y⟩ / (|X|²|Y|² − ⟨X,Y⟩²); throws DegeneratePlaneError on
// (numerically) parallel inputs.
double sectional(const MetricModel& m, const Vec& p, const Vec& X, const Vec& Y,
                 double t);

double inner(const MetricModel& m, const Vec& p, const Vec& X, const Vec& Y, double t);
double norm(const MetricModel& m, const Vec& p, const Vec& X, double t);

// Oriented volume of the chart frame: √det(g) · det[X | Y | ...], dim 2 or 3.
double oriented_volume(const MetricModel& m, const Vec& p, const Vec& X,
                       const Vec& Y, double t);
double oriented_volume(const MetricModel& m, const Vec& p, const Vec& X,
                       const Vec& Y, const Vec& Z, double t);

// Metric cross product in dim 3: ⟨X × Y, Z⟩ = vol(X, Y, Z) for all Z.
Vec metric_cross(const MetricModel& m, const Vec& p, const Vec& X, const Vec& Y,
                 double t);

// Rotation by +90° in dim 2: ⟨JX, Y⟩ = vol(X, Y); J maps T to the oriented
// unit normal when |T| = 1.
Vec metric_rot90(const MetricModel& m, const Vec& p, const Vec& X, double t);

}  // namespace geoflow

#endif  // GEOFLOW_MANIFOLD_HPP
