#ifndef GEOFLOW_SPACEFORM_ODE_HPP
#define GEOFLOW_SPACEFORM_ODE_HPP

#include <vector>

#include "geoflow/types.hpp"

namespace geoflow {

// Reduced evolution of a curve with spatially constant curvature and torsion
// in a space form of curvature K:
//   dk/dt = k³ − τ²k + Kk,   dτ/dt = 2τk².
// u = k² and v = τ² are derived views; v is non-decreasing whenever v(0) > 0.
struct HelixState {
  double k = 0.0;    // curvature, kept ≥ 0
  double tau = 0.0;  // torsion, any sign
  int K = 0;         // ambient curvature ∈ {−1, 0, +1}
  double t = 0.0;

  double u() const { return k * k; }
  double v() const { return tau * tau; }
};

struct HelixDeriv {
  double dk = 0.0;
  double dtau = 0.0;
};

// Right-hand side of the reduced system at `s`.
HelixDeriv helix_rhs(const HelixState& s);

struct HelixTrajectory {
  std::vector<HelixState> samples;  // initial state plus one row per step
  bool blew_up = false;
  double t_blowup = kNaN;  // time at which the blow-up guard fired

  const HelixState& back() const { return samples.back(); }
};

// Classical RK4 with fixed step dt, halving a step whenever it would move k
// by more than 1%·max(k,1). The trajectory ends early with a blow-up report
// once k exceeds 1e8, or once halving pushes the step below the clock's
// double-precision resolution (expected for τ = 0 data with K ≥ 0).
// Preconditions: K ∈ {−1,0,+1}, k ≥ 0, 0 < dt ≤ 1e−3, t_end ≥ 0 finite.
HelixTrajectory integrate_helix(HelixState s0, double t_end, double dt = 1e-3);

// The same reduction in the squared variables:
//   du/dt = 2u² + 2Ku − 2uv,   dv/dt = 4uv.
// Used to cross-check the (k, τ) integration through u = k², v = τ².
struct UVState {
  double u = 0.0;
  double v = 0.0;
  int K = 0;
  double t = 0.0;
};

std::vector<UVState> integrate_uv(UVState s0, double t_end, double dt = 1e-3);

// First integral of the K = −1 reduction normalized to u(v₀) = 1:
//   u(v) = 1 + √(v·v₀) − v.
// Nonpositive v or v₀ throws DomainError.
double invariant_u_of_v(double v, double v0);

// Defect of the closed-form first integral of the normalized K = −1 torsion
// magnitude τ̃ = √v, which obeys dτ̃/dt = 2τ̃(1 + τ̃₀τ̃ − τ̃²):
//   τ̃⁻¹·(r₊ − τ̃)^b·(τ̃ − r₋)^c − C₀·exp(−2t),
// where r± = (τ̃₀ ± √(τ̃₀²+4))/2, b = 1/2 − τ̃₀/(2√(τ̃₀²+4)),
// c = 1 − b, and C₀ makes the defect vanish at t = 0. The exponents satisfy
// b, c > 0. τ̃ outside (max(r₋,0), r₊) throws DomainError: the factor bases
// must stay positive.
//
// Resolution note: the solution approaches r₊ like exp(−2t/b), so by
// t ≈ 3.9 the gap r₊ − τ̃ falls below one double ulp and the defect of any
// representable τ̃ saturates around |C₀|·(ulp)^b ~ 5e−5. The residual is
// meaningful only while the gap is resolvable.
double diamond_residual(double tau_tilde, double t, double tau_tilde0);

// Attractor of √v for a trajectory with u₀, v₀ > 0. The reduction conserves
//   (u + v + K)/√v,
// so u(v) = −K + m√v − v with m = (u₀ + K + v₀)/√v₀, and u → 0 at
//   √v → (m + √(m² − 4K))/2.
// K = +1 data with τ = 0 never converges (blow-up instead); v₀ > 0 required.
double torsion_limit(int K, double u0, double v0);

}  // namespace geoflow

#endif  // GEOFLOW_SPACEFORM_ODE_HPP
