#include "geoflow/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace geoflow {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

Vec DiscreteCurve::node(long i) const {
  const long N = n();
  long q = i / N;
  long r = i % N;
  if (r < 0) {
    r += N;
    q -= 1;
  }
  if (q == 0) return nodes[static_cast<size_t>(r)];
  return nodes[static_cast<size_t>(r)] + static_cast<double>(q) * loop_shift;
}

DiscreteCurve make_curve(std::vector<Vec> nodes, Vec loop_shift) {
  if (nodes.size() < 16) throw PreconditionError("curve needs at least 16 nodes");
  const auto dim = nodes.front().size();
  if (dim < 2 || dim > kMaxDim) throw PreconditionError("curve dimension must be 2..4");
  for (const auto& p : nodes)
    if (p.size() != dim) throw PreconditionError("curve nodes have mixed dimensions");
  if (loop_shift.size() != dim) throw PreconditionError("loop_shift dimension mismatch");
  DiscreteCurve c;
  c.nodes = std::move(nodes);
  c.loop_shift = std::move(loop_shift);
  return c;
}

DiscreteCurve make_curve(std::vector<Vec> nodes) {
  if (nodes.empty()) throw PreconditionError("curve needs at least 16 nodes");
  Vec zero = Vec::Zero(nodes.front().size());
  return make_curve(std::move(nodes), zero);
}

double CurveGeometry::sup_d(int order) const {
  if (order < 1 || order > n_max) throw PreconditionError("derivative order out of range");
  const auto& norms = d_norm[static_cast<size_t>(order - 1)];
  return *std::max_element(norms.begin(), norms.end());
}

double CurveGeometry::max_k() const { return *std::max_element(k.begin(), k.end()); }

double CurveGeometry::min_k() const { return *std::min_element(k.begin(), k.end()); }

double CurveGeometry::bending2() const {
  if (n_max < 2) throw PreconditionError("bending2 needs n_max >= 2");
  double acc = 0.0;
  for (size_t i = 0; i < ds.size(); ++i) acc += d_norm[1][i] * d_norm[1][i] * ds[i];
  return acc;
}

CurveGeometry geometry(const DiscreteCurve& curve, const MetricModel& model,
                       double t, int n_max) {
  if (n_max < 1 || n_max > 4) throw PreconditionError("n_max must be 1..4");
  const int N = curve.n();
  const double du = curve.du();

  CurveGeometry g;
  g.n_max = n_max;
  g.v.resize(N);
  g.ds.resize(N);
  g.T.resize(N);
  g.k.resize(N);
  g.d_t.assign(n_max, std::vector<Vec>(N));
  g.d_norm.assign(n_max, std::vector<double>(N));

  std::vector<Mat> met(N);
  std::vector<Christoffels> gam(N);
  for (int i = 0; i < N; ++i) {
    const Vec& p = curve.nodes[static_cast<size_t>(i)];
    met[i] = metric_at(model, p, t);
    gam[i] = christoffel(model, p, t);
    const Vec dgam = (curve.node(i + 1) - curve.node(i - 1)) / (2.0 * du);
    const double v = std::sqrt(dgam.dot(met[i] * dgam));
    if (!(v > kSpeedFloor))
      throw DegenerateCurveError("node speed underflow at node " + std::to_string(i));
    g.v[i] = v;
    g.ds[i] = v * du;
    g.T[i] = dgam / v;
    g.L += v * du;
  }

  // DT/∂s, projected g-orthogonal to T so ⟨DT/∂s, T⟩ = 0 holds exactly.
  for (int i = 0; i < N; ++i) {
    const int ip = (i + 1) % N, im = (i + N - 1) % N;
    Vec raw = (g.T[ip] - g.T[im]) / (2.0 * g.ds[i]);
    if (!gam[i].zero) raw += gam[i].apply(g.T[i], g.T[i]);
    const double along = raw.dot(met[i] * g.T[i]);
    Vec proj = raw - along * g.T[i];
    const double kk = std::sqrt(std::max(0.0, proj.dot(met[i] * proj)));
    g.d_t[0][i] = std::move(proj);
    g.d_norm[0][i] = kk;
    g.k[i] = kk;
    g.bending += kk * kk * g.ds[i];
  }

  for (int m = 1; m < n_max; ++m) {
    const auto& W = g.d_t[m - 1];
    for (int i = 0; i < N; ++i) {
      const int ip = (i + 1) % N, im = (i + N - 1) % N;
      Vec val = (W[ip] - W[im]) / (2.0 * g.ds[i]);
      if (!gam[i].zero) val += gam[i].apply(g.T[i], W[i]);
      g.d_norm[m][i] = std::sqrt(std::max(0.0, val.dot(met[i] * val)));
      g.d_t[m][i] = std::move(val);
    }
  }
  return g;
}

namespace {

// One discrete parallel-transport hop from node j toward node j+dir, second
// order via the midpoint connection.
Vec transport_hop(const DiscreteCurve& curve, const MetricModel& model, double t,
                  long j, int dir, const Vec& w) {
  const Vec a = curve.node(j);
  const Vec b = curve.node(j + dir);
  const Vec mid = 0.5 * (a + b);
  const Christoffels gam = christoffel(model, mid, t);
  if (gam.zero) return w;
  return w - gam.apply(w, Vec(b - a));
}

}  // namespace

FrenetFrame frenet(const DiscreteCurve& curve, const CurveGeometry& geom,
                   const MetricModel& model, double t) {
  if (curve.dim() != 3) throw PreconditionError("frenet needs dim 3");
  const int N = curve.n();
  std::vector<char> defined(N, 0);
  int n_defined = 0;
  for (int i = 0; i < N; ++i)
    if (geom.k[i] > kCurvatureFloor) {
      defined[i] = 1;
      ++n_defined;
    }
  if (n_defined == 0)
    throw FrameUndefinedError("curve is discretely geodesic; Frenet frame undefined");

  FrenetFrame f;
  f.N.resize(N);
  f.B.resize(N);
  f.tau.assign(N, std::numeric_limits<double>::quiet_NaN());
  f.tau_defined.assign(N, 0);

  for (int i = 0; i < N; ++i) {
    if (!defined[i]) continue;
    f.N[i] = geom.d_t[0][i] / geom.k[i];
    f.B[i] = metric_cross(model, curve.nodes[static_cast<size_t>(i)], geom.T[i], f.N[i], t);
  }

  // Continuation over k ≈ 0 gaps: parallel transport from the nearest
  // well-defined node, then re-orthonormalize against T at the target.
  for (int i = 0; i < N; ++i) {
    if (defined[i]) continue;
    int fwd = 1, bwd = 1;
    while (!defined[(i + fwd) % N]) ++fwd;
    while (!defined[((i - bwd) % N + N) % N]) ++bwd;
    const int dir = (bwd <= fwd) ? -1 : 1;
    const int hops = (dir == -1) ? bwd : fwd;
    const long src = i + dir * hops;
    Vec w = f.N[((src % N) + N) % N];
    for (long j = src; j != i; j -= dir) w = transport_hop(curve, model, t, j, -dir, w);
    const Vec& p = curve.nodes[static_cast<size_t>(i)];
    const Mat met = metric_at(model, p, t);
    w -= w.dot(met * geom.T[i]) * geom.T[i];
    double nw = std::sqrt(std::max(0.0, w.dot(met * w)));
    if (nw < 1e-12) {
      // transported normal collapsed onto T; complete the frame from the
      // chart axis least aligned with T
      int best = 0;
      double best_align = std::numeric_limits<double>::infinity();
      for (int a = 0; a < 3; ++a) {
        Vec e = Vec::Zero(3);
        e[a] = 1.0;
        const double align = std::abs(e.dot(met * geom.T[i]));
        if (align < best_align) {
          best_align = align;
          best = a;
        }
      }
      w = Vec::Zero(3);
      w[best] = 1.0;
      w -= w.dot(met * geom.T[i]) * geom.T[i];
      nw = std::sqrt(std::max(0.0, w.dot(met * w)));
    }
    f.N[i] = w / nw;
    f.B[i] = metric_cross(model, p, geom.T[i], f.N[i], t);
  }

  // τ = ⟨DN/∂s + kT, B⟩ wherever the frame is genuinely defined.
  for (int i = 0; i < N; ++i) {
    if (!defined[i]) continue;
    const int ip = (i + 1) % N, im = (i + N - 1) % N;
    const Vec& p = curve.nodes[static_cast<size_t>(i)];
    const Christoffels gam = christoffel(model, p, t);
    Vec dN = (f.N[ip] - f.N[im]) / (2.0 * geom.ds[i]);
    if (!gam.zero) dN += gam.apply(geom.T[i], f.N[i]);
    f.tau[i] = inner(model, p, Vec(dN + geom.k[i] * geom.T[i]), f.B[i], t);
    f.tau_defined[i] = 1;
  }
  return f;
}

std::vector<double> signed_curvature(const DiscreteCurve& curve,
                                     const CurveGeometry& geom,
                                     const MetricModel& model, double t) {
  if (curve.dim() != 2) throw PreconditionError("signed_curvature needs dim 2");
  const int N = curve.n();
  std::vector<double> ks(N);
  for (int i = 0; i < N; ++i) {
    const Vec& p = curve.nodes[static_cast<size_t>(i)];
    const Vec jt = metric_rot90(model, p, geom.T[i], t);
    ks[i] = inner(model, p, geom.d_t[0][i], jt, t);
  }
  return ks;
}

RampContext ramp_height(const DiscreteCurve& curve, const CurveGeometry& geom,
                        const MetricModel& model, double t) {
  if (!model.has_fiber())
    throw PreconditionError("ramp_height needs a model with an S¹ factor");
  const int axis = model.fiber_axis();
  const double scale = model.fiber_scale(t);
  RampContext rc;
  rc.h.resize(curve.n());
  double mu = std::numeric_limits<double>::infinity();
  for (int i = 0; i < curve.n(); ++i) {
    rc.h[i] = geom.T[i][axis] * scale;
    mu = std::min(mu, rc.h[i]);
  }
  rc.mu = mu;
  rc.is_ramp = mu > 0.0;
  rc.winding = std::lround(curve.loop_shift[axis] / kTwoPi);
  return rc;
}

// ---------------------------------------------------------------------------
// Periodic cubic interpolation and arclength resampling

namespace {

// Periodic cubic spline through (u_i, y_i), u_i = i·h, one scalar coordinate.
// Moments M solve the cyclic tridiagonal system M_{i-1} + 4M_i + M_{i+1} =
// 6(y_{i-1} - 2y_i + y_{i+1})/h².
std::vector<double> periodic_spline_moments(const std::vector<double>& y, double h) {
  const int N = static_cast<int>(y.size());
  std::vector<double> rhs(N);
  for (int i = 0; i < N; ++i) {
    const int ip = (i + 1) % N, im = (i + N - 1) % N;
    rhs[i] = 6.0 * (y[im] - 2.0 * y[i] + y[ip]) / (h * h);
  }
  // Sherman–Morrison reduction of the cyclic system to two Thomas solves.
  const double b = 4.0, corner = 1.0, gamma = -b;
  std::vector<double> diag(N, b);
  diag[0] = b - gamma;
  diag[N - 1] = b - corner * corner / gamma;
  auto thomas = [&](std::vector<double> d, std::vector<double> r) {
    for (int i = 1; i < N; ++i) {
      const double mlt = 1.0 / d[i - 1];
      d[i] -= mlt;
      r[i] -= mlt * r[i - 1];
    }
    r[N - 1] /= d[N - 1];
    for (int i = N - 2; i >= 0; --i) r[i] = (r[i] - r[i + 1]) / d[i];
    return r;
  };
  std::vector<double> u(N, 0.0);
  u[0] = gamma;
  u[N - 1] = corner;
  const std::vector<double> x1 = thomas(diag, rhs);
  const std::vector<double> x2 = thomas(diag, u);
  const double vx1 = x1[0] + corner / gamma * x1[N - 1];
  const double vx2 = x2[0] + corner / gamma * x2[N - 1];
  const double factor = vx1 / (1.0 + vx2);
  std::vector<double> m(N);
  for (int i = 0; i < N; ++i) m[i] = x1[i] - factor * x2[i];
  return m;
}

struct PeriodicSpline {
  int N = 0;
  double h = 0.0;
  int dim = 0;
  Vec shift;                            // lift: γ(u) = S(u) + shift·u/2π
  std::vector<std::vector<double>> y;   // per coordinate, periodic part
  std::vector<std::vector<double>> M;   // per coordinate moments

  Vec eval(double u) const {
    double ur = u - kTwoPi * std::floor(u / kTwoPi);
    int j = std::min(static_cast<int>(ur / h), N - 1);
    const double th = ur - j * h;
    const int jp = (j + 1) % N;
    Vec out(dim);
    for (int d = 0; d < dim; ++d) {
      const double bj = (y[d][jp] - y[d][j]) / h - h * (2.0 * M[d][j] + M[d][jp]) / 6.0;
      const double cj = 0.5 * M[d][j];
      const double dj = (M[d][jp] - M[d][j]) / (6.0 * h);
      out[d] = y[d][j] + th * (bj + th * (cj + th * dj)) + shift[d] * u / kTwoPi;
    }
    return out;
  }

  Vec deriv(double u) const {
    double ur = u - kTwoPi * std::floor(u / kTwoPi);
    int j = std::min(static_cast<int>(ur / h), N - 1);
    const double th = ur - j * h;
    const int jp = (j + 1) % N;
    Vec out(dim);
    for (int d = 0; d < dim; ++d) {
      const double bj = (y[d][jp] - y[d][j]) / h - h * (2.0 * M[d][j] + M[d][jp]) / 6.0;
      const double cj = 0.5 * M[d][j];
      const double dj = (M[d][jp] - M[d][j]) / (6.0 * h);
      out[d] = bj + th * (2.0 * cj + th * 3.0 * dj) + shift[d] / kTwoPi;
    }
    return out;
  }
};

PeriodicSpline build_spline(const DiscreteCurve& curve) {
  PeriodicSpline s;
  s.N = curve.n();
  s.h = curve.du();
  s.dim = curve.dim();
  s.shift = curve.loop_shift;
  s.y.resize(s.dim);
  s.M.resize(s.dim);
  for (int d = 0; d < s.dim; ++d) {
    std::vector<double> yd(s.N);
    for (int i = 0; i < s.N; ++i)
      yd[i] = curve.nodes[static_cast<size_t>(i)][d] -
              curve.loop_shift[d] * (i * s.h) / kTwoPi;
    s.M[d] = periodic_spline_moments(yd, s.h);
    s.y[d] = std::move(yd);
  }
  return s;
}

// Cumulative arclength over a 4N-segment fine grid, Gauss-2 per segment.
std::vector<double> cumulative_arclength(const PeriodicSpline& s,
                                         const MetricModel& model, double t) {
  const int fine = 4 * s.N;
  const double df = kTwoPi / fine;
  const double off = df * 0.5 / std::sqrt(3.0);
  std::vector<double> acc(static_cast<size_t>(fine) + 1, 0.0);
  for (int j = 0; j < fine; ++j) {
    const double uc = (j + 0.5) * df;
    double seg = 0.0;
    for (const double uq : {uc - off, uc + off}) {
      const Vec p = s.eval(uq);
      const Vec dp = s.deriv(uq);
      const double speed = norm(model, p, dp, t);
      if (!std::isfinite(speed) || speed < 1e-14)
        throw ResampleError("degenerate interpolant speed at u = " + std::to_string(uq));
      seg += 0.5 * df * speed;
    }
    acc[static_cast<size_t>(j) + 1] = acc[static_cast<size_t>(j)] + seg;
  }
  return acc;
}

}  // namespace

double arclength_fine(const DiscreteCurve& curve, const MetricModel& model, double t) {
  const PeriodicSpline s = build_spline(curve);
  return cumulative_arclength(s, model, t).back();
}

DiscreteCurve resample_arclength(const DiscreteCurve& curve, const MetricModel& model,
                                 double t) {
  const PeriodicSpline s = build_spline(curve);
  std::vector<double> acc;
  try {
    acc = cumulative_arclength(s, model, t);
  } catch (const DomainError& e) {
    throw ResampleError(std::string("interpolant leaves the chart domain: ") + e.what());
  }
  const int N = curve.n();
  const int fine = 4 * N;
  const double df = kTwoPi / fine;
  const double total = acc.back();

  std::vector<Vec> fresh(static_cast<size_t>(N));
  fresh[0] = curve.nodes[0];  // anchor: u = 0 stays put
  int j = 0;
  for (int m = 1; m < N; ++m) {
    const double target = total * m / N;
    while (j + 1 < fine && acc[static_cast<size_t>(j) + 1] < target) ++j;
    const double a0 = acc[static_cast<size_t>(j)];
    const double a1 = acc[static_cast<size_t>(j) + 1];
    const double frac = (a1 > a0) ? (target - a0) / (a1 - a0) : 0.0;
    fresh[static_cast<size_t>(m)] = s.eval((j + frac) * df);
  }

  DiscreteCurve out;
  out.nodes = std::move(fresh);
  out.loop_shift = curve.loop_shift;

  double total_after = 0.0;
  try {
    total_after = arclength_fine(out, model, t);
  } catch (const DomainError& e) {
    throw ResampleError(std::string("resampled interpolant leaves the chart domain: ") + e.what());
  }
  if (std::abs(total_after - total) > 1e-6 * total)
    throw ResampleError("resampling moved the fine-grid length by " +
                        std::to_string(std::abs(total_after - total) / total) +
                        " relative (limit 1e-6)");
  return out;
}

}  // namespace geoflow
