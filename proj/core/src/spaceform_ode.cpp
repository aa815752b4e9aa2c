#include "geoflow/spaceform_ode.hpp"

#include <cmath>
#include <sstream>

#include "geoflow/types.hpp"

namespace geoflow {

namespace {

constexpr double kBlowupK = 1e8;
constexpr double kHalvingFloor = 1e-18;  // smallest emergency sub-step

void validate(const HelixState& s, double t_end, double dt) {
  std::ostringstream bad;
  if (s.K != -1 && s.K != 0 && s.K != 1) bad << "K must be -1, 0, or +1; ";
  if (!(s.k >= 0.0) || !std::isfinite(s.k)) bad << "k must be finite and >= 0; ";
  if (!std::isfinite(s.tau)) bad << "tau must be finite; ";
  if (!(dt > 0.0) || dt > 1e-3) bad << "dt must lie in (0, 1e-3]; ";
  if (!std::isfinite(t_end) || t_end < 0.0) bad << "t_end must be finite and >= 0; ";
  const std::string msg = bad.str();
  if (!msg.empty()) throw PreconditionError(msg.substr(0, msg.size() - 2));
}

HelixDeriv rk4_increment(const HelixState& s, double h) {
  const auto eval = [&](double k, double tau) {
    HelixState q = s;
    q.k = k;
    q.tau = tau;
    return helix_rhs(q);
  };
  const HelixDeriv a1 = eval(s.k, s.tau);
  const HelixDeriv a2 = eval(s.k + 0.5 * h * a1.dk, s.tau + 0.5 * h * a1.dtau);
  const HelixDeriv a3 = eval(s.k + 0.5 * h * a2.dk, s.tau + 0.5 * h * a2.dtau);
  const HelixDeriv a4 = eval(s.k + h * a3.dk, s.tau + h * a3.dtau);
  return {h / 6.0 * (a1.dk + 2.0 * a2.dk + 2.0 * a3.dk + a4.dk),
          h / 6.0 * (a1.dtau + 2.0 * a2.dtau + 2.0 * a3.dtau + a4.dtau)};
}

struct UVDeriv {
  double du;
  double dv;
};

UVDeriv uv_rhs(const UVState& s) {
  return {2.0 * s.u * s.u + 2.0 * s.K * s.u - 2.0 * s.u * s.v, 4.0 * s.u * s.v};
}

UVDeriv uv_rk4_increment(const UVState& s, double h) {
  const auto eval = [&](double u, double v) {
    UVState q = s;
    q.u = u;
    q.v = v;
    return uv_rhs(q);
  };
  const UVDeriv a1 = eval(s.u, s.v);
  const UVDeriv a2 = eval(s.u + 0.5 * h * a1.du, s.v + 0.5 * h * a1.dv);
  const UVDeriv a3 = eval(s.u + 0.5 * h * a2.du, s.v + 0.5 * h * a2.dv);
  const UVDeriv a4 = eval(s.u + h * a3.du, s.v + h * a3.dv);
  return {h / 6.0 * (a1.du + 2.0 * a2.du + 2.0 * a3.du + a4.du),
          h / 6.0 * (a1.dv + 2.0 * a2.dv + 2.0 * a3.dv + a4.dv)};
}

}  // namespace

HelixDeriv helix_rhs(const HelixState& s) {
  return {s.k * s.k * s.k - s.tau * s.tau * s.k + static_cast<double>(s.K) * s.k,
          2.0 * s.tau * s.k * s.k};
}

HelixTrajectory integrate_helix(HelixState s0, double t_end, double dt) {
  validate(s0, t_end, dt);
  s0.t = 0.0;
  HelixTrajectory traj;
  traj.samples.push_back(s0);

  HelixState s = s0;
  if (s.k > kBlowupK) {
    traj.blew_up = true;
    traj.t_blowup = s.t;
    return traj;
  }
  while (s.t < t_end) {
    double h = std::min(dt, t_end - s.t);
    HelixDeriv inc = rk4_increment(s, h);
    // emergency halving keeps the relative curvature motion per step small
    bool halved = false;
    while (std::abs(inc.dk) > 0.01 * std::max(s.k, 1.0) && h > kHalvingFloor) {
      h *= 0.5;
      halved = true;
      inc = rk4_increment(s, h);
    }
    if (s.t + h <= s.t) {
      // the required step is below the clock's resolution; if halving forced
      // it there, the dynamics outruns double-precision time: blow-up
      if (halved) {
        traj.blew_up = true;
        traj.t_blowup = s.t;
      }
      break;
    }
    s.k = std::max(s.k + inc.dk, 0.0);
    s.tau += inc.dtau;
    s.t += h;
    traj.samples.push_back(s);
    if (s.k > kBlowupK) {
      traj.blew_up = true;
      traj.t_blowup = s.t;
      break;
    }
  }
  return traj;
}

std::vector<UVState> integrate_uv(UVState s0, double t_end, double dt) {
  std::ostringstream bad;
  if (s0.K != -1 && s0.K != 0 && s0.K != 1) bad << "K must be -1, 0, or +1; ";
  if (!(s0.u >= 0.0) || !std::isfinite(s0.u)) bad << "u must be finite and >= 0; ";
  if (!(s0.v >= 0.0) || !std::isfinite(s0.v)) bad << "v must be finite and >= 0; ";
  if (!(dt > 0.0) || dt > 1e-3) bad << "dt must lie in (0, 1e-3]; ";
  if (!std::isfinite(t_end) || t_end < 0.0) bad << "t_end must be finite and >= 0; ";
  const std::string msg = bad.str();
  if (!msg.empty()) throw PreconditionError(msg.substr(0, msg.size() - 2));

  s0.t = 0.0;
  std::vector<UVState> traj{s0};
  UVState s = s0;
  while (s.t < t_end && s.u <= kBlowupK * kBlowupK) {
    double h = std::min(dt, t_end - s.t);
    UVDeriv inc = uv_rk4_increment(s, h);
    while (std::abs(inc.du) > 0.01 * std::max(s.u, 1.0) && h > kHalvingFloor) {
      h *= 0.5;
      inc = uv_rk4_increment(s, h);
    }
    if (s.t + h <= s.t) break;  // sub-ulp step: the clock cannot advance
    s.u = std::max(s.u + inc.du, 0.0);
    s.v += inc.dv;
    s.t += h;
    traj.push_back(s);
  }
  return traj;
}

double invariant_u_of_v(double v, double v0) {
  if (!(v > 0.0) || !(v0 > 0.0))
    throw DomainError("invariant_u_of_v requires v > 0 and v0 > 0");
  return 1.0 + std::sqrt(v * v0) - v;
}

double diamond_residual(double tau_tilde, double t, double tau_tilde0) {
  if (!(tau_tilde0 > 0.0)) throw DomainError("diamond_residual requires tau_tilde0 > 0");
  const double s = std::sqrt(tau_tilde0 * tau_tilde0 + 4.0);
  const double r_plus = 0.5 * (tau_tilde0 + s);
  const double r_minus = 0.5 * (tau_tilde0 - s);
  const double b = 0.5 - tau_tilde0 / (2.0 * s);
  const double c = 0.5 + tau_tilde0 / (2.0 * s);
  if (!(tau_tilde > 0.0) || !(tau_tilde < r_plus) || !(tau_tilde > r_minus)) {
    std::ostringstream msg;
    msg << "tau_tilde = " << tau_tilde << " outside the bracket (" << std::max(r_minus, 0.0)
        << ", " << r_plus << ")";
    throw DomainError(msg.str());
  }
  const auto lhs = [&](double x) {
    return std::pow(x, -1.0) * std::pow(r_plus - x, b) * std::pow(x - r_minus, c);
  };
  return lhs(tau_tilde) - lhs(tau_tilde0) * std::exp(-2.0 * t);
}

double torsion_limit(int K, double u0, double v0) {
  if (K != -1 && K != 0 && K != 1) throw PreconditionError("K must be -1, 0, or +1");
  if (!(u0 > 0.0) || !(v0 > 0.0)) throw DomainError("torsion_limit requires u0, v0 > 0");
  const double m = (u0 + static_cast<double>(K) + v0) / std::sqrt(v0);
  const double disc = m * m - 4.0 * static_cast<double>(K);
  return 0.5 * (m + std::sqrt(disc));
}

}  // namespace geoflow
