#ifndef GEOFLOW_CURVE_HPP
#define GEOFLOW_CURVE_HPP

#include <vector>

#include "geoflow/manifold.hpp"
#include "geoflow/types.hpp"

namespace geoflow {

inline constexpr double kCurvatureFloor = 1e-7;  // below this the Frenet frame is singular
inline constexpr double kSpeedFloor = 1e-10;     // immersion guard

// Closed discrete curve in chart coordinates, sampled at u_i = i·Δu with
// Δu = 2π/N. Lifted representation: γ(u + 2π) = γ(u) + loop_shift, so curves
// winding a periodic coordinate keep smooth (unwrapped) chart values. For a
// plainly closed curve loop_shift = 0.
struct DiscreteCurve {
  std::vector<Vec> nodes;
  Vec loop_shift;

  int n() const { return static_cast<int>(nodes.size()); }
  int dim() const { return nodes.empty() ? 0 : static_cast<int>(nodes.front().size()); }
  double du() const { return 2.0 * M_PI / static_cast<double>(n()); }
  // Periodic access: node(i ± N) = node(i) ± loop_shift.
  Vec node(long i) const;
};

DiscreteCurve make_curve(std::vector<Vec> nodes, Vec loop_shift);
DiscreteCurve make_curve(std::vector<Vec> nodes);  // loop_shift = 0

// Per-node intrinsic quantities. Index m of d_t holds (D^{m+1}T/∂s^{m+1});
// level m = 0 is projected g-orthogonal to T (the mean-curvature vector),
// higher levels iterate the covariant derivative on the projected field.
struct CurveGeometry {
  int n_max = 3;
  std::vector<double> v;                     // speed |∂γ/∂u|_g
  std::vector<double> ds;                    // arclength weight v_i·Δu
  std::vector<Vec> T;                        // unit tangent
  std::vector<std::vector<Vec>> d_t;         // d_t[m][i], m = 0 .. n_max-1
  std::vector<std::vector<double>> d_norm;   // |d_t[m][i]|_g
  std::vector<double> k;                     // curvature = d_norm[0]
  double L = 0.0;                            // Σ v_i Δu
  double bending = 0.0;                      // ∫ k² ds

  double sup_d(int order) const;             // sup_i |DᵒT/∂sᵒ|, order ≥ 1
  double max_k() const;                      // λ = max k
  double min_k() const;                      // min k (unsigned)
  double bending2() const;                   // ∫ |D²T/∂s²|² ds
};

CurveGeometry geometry(const DiscreteCurve& curve, const MetricModel& model,
                       double t, int n_max = 3);

// Frenet frame in dim 3. Where k ≤ kCurvatureFloor the normal/binormal are
// continued by discrete parallel transport from the nearest well-defined node
// and τ is NaN with tau_defined = false.
struct FrenetFrame {
  std::vector<Vec> N;
  std::vector<Vec> B;
  std::vector<double> tau;
  std::vector<char> tau_defined;
};

FrenetFrame frenet(const DiscreteCurve& curve, const CurveGeometry& geom,
                   const MetricModel& model, double t);

// Signed curvature in dim 2 against the oriented normal J·T:
// k_signed = ⟨DT/∂s, JT⟩; counterclockwise unit circle gives +1.
std::vector<double> signed_curvature(const DiscreteCurve& curve,
                                     const CurveGeometry& geom,
                                     const MetricModel& model, double t);

// S¹-factor data on Product / WarpedCircle models: h_i = ⟨π_*T_i, U⟩ with U
// the unit fiber vector; a ramp has h_i > 0 everywhere.
struct RampContext {
  std::vector<double> h;
  double mu = 0.0;        // min_i h_i
  bool is_ramp = false;   // mu > 0
  long winding = 0;       // integer S¹ degree from the lift
};

RampContext ramp_height(const DiscreteCurve& curve, const CurveGeometry& geom,
                        const MetricModel& model, double t);

// Arclength via periodic cubic interpolation of the chart coordinates and
// two-point Gauss quadrature on a 4N-fine grid; the oracle-grade length used
// to certify resampling.
double arclength_fine(const DiscreteCurve& curve, const MetricModel& model, double t);

// Redistribute the N nodes to uniform arclength spacing along the periodic
// cubic interpolant. Node 0 stays anchored at parameter u = 0. Throws
// ResampleError when the interpolant degenerates or the fine-grid length
// moves by more than 1e-6 relative.
DiscreteCurve resample_arclength(const DiscreteCurve& curve, const MetricModel& model,
                                 double t);

}  // namespace geoflow

#endif  // GEOFLOW_CURVE_HPP
