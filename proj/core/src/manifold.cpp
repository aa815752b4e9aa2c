#include "geoflow/manifold.hpp"

#include <cmath>
#include <random>

namespace geoflow {

namespace {

// Pinned finite-difference steps: h for metric derivatives in chart
// coordinates, hR for differencing Christoffel symbols when assembling the
// curvature tensor.
constexpr double kGammaFdStep = 1e-4;

// Chart guard radius for the stereographic chart of the K=+1 space form: the
// excluded pole maps to infinity, so "near the pole" means |x| beyond this.
constexpr double kStereographicGuardRadius = 1e3;

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

struct MetricModel::Impl {
  Family family = Family::Euclidean;
  int dim = 0;
  double K = 0.0;       // space-form curvature
  double radius = 1.0;  // circle radius
  double rho = 1.0;     // fiber radius
  TimeScalar f{};
  std::shared_ptr<const Impl> base;
  double lambda = 0.0;
  double xi = 0.0;
};

MetricModel::MetricModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Family MetricModel::family() const { return impl_->family; }
int MetricModel::dim() const { return impl_->dim; }
double MetricModel::curvature_constant() const { return impl_->K; }
double MetricModel::fiber_radius() const { return impl_->rho; }
double MetricModel::circle_radius() const { return impl_->radius; }
const TimeScalar& MetricModel::f() const { return impl_->f; }
double MetricModel::lambda_bound() const { return impl_->lambda; }
double MetricModel::xi_bound() const { return impl_->xi; }

MetricModel MetricModel::base() const {
  if (!impl_->base) throw PreconditionError("model has no base factor");
  return MetricModel(impl_->base);
}

bool MetricModel::has_fiber() const {
  switch (impl_->family) {
    case Family::Product:
    case Family::WarpedCircle:
      return true;
    case Family::ConformalEvolving:
      return base().has_fiber();
    default:
      return false;
  }
}

int MetricModel::fiber_axis() const {
  if (!has_fiber()) throw PreconditionError("model has no S¹ fiber");
  if (impl_->family == Family::ConformalEvolving) return base().fiber_axis();
  return impl_->dim - 1;
}

double MetricModel::fiber_scale(double t) const {
  switch (impl_->family) {
    case Family::Product:
      return impl_->rho;
    case Family::WarpedCircle:
      return impl_->rho * std::exp(0.5 * impl_->f(t));
    case Family::ConformalEvolving:
      return std::exp(0.5 * impl_->f(t)) * base().fiber_scale(t);
    default:
      throw PreconditionError("model has no S¹ fiber");
  }
}

double MetricModel::coord_period(int axis) const {
  switch (impl_->family) {
    case Family::Euclidean:
    case Family::SpaceForm:
      return 0.0;
    case Family::Circle:
      return kTwoPi;
    case Family::Product:
    case Family::WarpedCircle:
      if (axis == impl_->dim - 1) return kTwoPi;
      return base().coord_period(axis);
    case Family::ConformalEvolving:
      return base().coord_period(axis);
  }
  return 0.0;
}

bool MetricModel::in_domain(const Vec& p) const {
  if (p.size() != impl_->dim || !p.allFinite()) return false;
  switch (impl_->family) {
    case Family::Euclidean:
    case Family::Circle:
      return true;
    case Family::SpaceForm:
      if (impl_->K < 0) return p.squaredNorm() < 1.0;
      return p.norm() <= kStereographicGuardRadius;
    case Family::Product:
    case Family::WarpedCircle:
      return base().in_domain(p.head(impl_->dim - 1));
    case Family::ConformalEvolving:
      return base().in_domain(p);
  }
  return false;
}

void MetricModel::require_in_domain(const Vec& p) const {
  if (!in_domain(p)) throw DomainError("chart point outside model domain");
}

Vec Christoffels::apply(const Vec& x, const Vec& y) const {
  Vec out = Vec::Zero(dim);
  if (zero) return out;
  for (int a = 0; a < dim; ++a) out[a] = x.dot(comp[a] * y);
  return out;
}

Mat metric_at(const MetricModel& m, const Vec& p, double t) {
  const int n = m.dim();
  m.require_in_domain(p);
  switch (m.family()) {
    case Family::Euclidean:
      return Mat::Identity(n, n);
    case Family::Circle: {
      Mat g(1, 1);
      g(0, 0) = m.circle_radius() * m.circle_radius();
      return g;
    }
    case Family::SpaceForm: {
      const double K = m.curvature_constant();
      const double s = 1.0 + K * p.squaredNorm();
      const double phi = 4.0 / (s * s);
      return phi * Mat::Identity(n, n);
    }
    case Family::Product: {
      Mat g = Mat::Zero(n, n);
      g.topLeftCorner(n - 1, n - 1) = metric_at(m.base(), p.head(n - 1), t);
      g(n - 1, n - 1) = m.fiber_radius() * m.fiber_radius();
      return g;
    }
    case Family::ConformalEvolving:
      return std::exp(m.f()(t)) * metric_at(m.base(), p, t);
    case Family::WarpedCircle: {
      Mat g = Mat::Zero(n, n);
      g.topLeftCorner(n - 1, n - 1) = metric_at(m.base(), p.head(n - 1), t);
      g(n - 1, n - 1) = std::exp(m.f()(t)) * m.fiber_radius() * m.fiber_radius();
      return g;
    }
  }
  throw Error("unreachable metric family");
}

Christoffels christoffel(const MetricModel& m, const Vec& p, double t) {
  const int n = m.dim();
  m.require_in_domain(p);
  Christoffels out;
  out.dim = n;
  switch (m.family()) {
    case Family::Euclidean:
    case Family::Circle:
      out.zero = true;
      return out;
    case Family::SpaceForm: {
      // Conformally flat g = e^{2σ} δ with σ = log 2 − log(1 + K|x|²):
      // Γ^a_{bc} = δ_ab ∂_c σ + δ_ac ∂_b σ − δ_bc ∂_a σ, ∂_a σ = c·x_a.
      const double K = m.curvature_constant();
      const double c = -2.0 * K / (1.0 + K * p.squaredNorm());
      for (int a = 0; a < n; ++a) {
        out.comp[a] = Mat::Zero(n, n);
        for (int b = 0; b < n; ++b)
          for (int cc = 0; cc < n; ++cc) {
            double val = 0.0;
            if (a == b) val += c * p[cc];
            if (a == cc) val += c * p[b];
            if (b == cc) val -= c * p[a];
            out.comp[a](b, cc) = val;
          }
      }
      return out;
    }
    case Family::Product: {
      const Christoffels inner_gamma = christoffel(m.base(), p.head(n - 1), t);
      if (inner_gamma.zero) {
        out.zero = true;
        return out;
      }
      for (int a = 0; a < n; ++a) out.comp[a] = Mat::Zero(n, n);
      for (int a = 0; a < n - 1; ++a)
        out.comp[a].topLeftCorner(n - 1, n - 1) = inner_gamma.comp[a];
      return out;
    }
    case Family::ConformalEvolving:
      // A spatially constant factor exp(f(t)) cancels in ½ g⁻¹ ∂g, so the
      // connection is the base connection at every instant.
      return christoffel(m.base(), p, t);
    case Family::WarpedCircle: {
      // Both blocks are spatially independent of the fiber angle and the
      // fiber block g_θθ = exp(f)ρ² is spatially constant, so the connection
      // is the padded base connection.
      const Christoffels inner_gamma = christoffel(m.base(), p.head(n - 1), t);
      if (inner_gamma.zero) {
        out.zero = true;
        return out;
      }
      for (int a = 0; a < n; ++a) out.comp[a] = Mat::Zero(n, n);
      for (int a = 0; a < n - 1; ++a)
        out.comp[a].topLeftCorner(n - 1, n - 1) = inner_gamma.comp[a];
      return out;
    }
  }
  throw Error("unreachable metric family");
}

namespace {

// Full (1,3) curvature tensor from Christoffel symbols, with the sign fixed
// by R(T,N)T = K N on space forms:
//   R^a_{bcd} = ∂_d Γ^a_{cb} − ∂_c Γ^a_{db} + Γ^a_{de} Γ^e_{cb} − Γ^a_{ce} Γ^e_{db}
//   (R(X,Y)Z)^a = R^a_{bcd} Z^b X^c Y^d
struct RiemannTensor {
  int dim = 0;
  double r[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};
};

RiemannTensor riemann_tensor_from_christoffel(const MetricModel& m, const Vec& p, double t) {
  const int n = m.dim();
  const double h = kGammaFdStep;
  const Christoffels g0 = christoffel(m, p, t);
  std::array<Christoffels, kMaxDim> dgamma;
  for (int d = 0; d < n; ++d) {
    Vec pp = p, pm = p;
    pp[d] += h;
    pm[d] -= h;
    const Christoffels gp = christoffel(m, pp, t);
    const Christoffels gm = christoffel(m, pm, t);
    dgamma[d].dim = n;
    for (int a = 0; a < n; ++a) {
      Mat cp = gp.zero ? Mat::Zero(n, n) : gp.comp[a];
      Mat cm = gm.zero ? Mat::Zero(n, n) : gm.comp[a];
      dgamma[d].comp[a] = (cp - cm) / (2.0 * h);
    }
  }
  auto gamma = [&](int a, int b, int c) -> double {
    return g0.zero ? 0.0 : g0.comp[a](b, c);
  };
  RiemannTensor out;
  out.dim = n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double val = dgamma[d].comp[a](c, b) - dgamma[c].comp[a](d, b);
          for (int e = 0; e < n; ++e)
            val += gamma(a, d, e) * gamma(e, c, b) - gamma(a, c, e) * gamma(e, d, b);
          out.r[a][b][c][d] = val;
        }
  return out;
}

Vec riemann_tensor_apply(const RiemannTensor& rt, const Vec& X, const Vec& Y, const Vec& Z) {
  const int n = rt.dim;
  Vec out = Vec::Zero(n);
  for (int a = 0; a < n; ++a) {
    double val = 0.0;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) val += rt.r[a][b][c][d] * Z[b] * X[c] * Y[d];
    out[a] = val;
  }
  return out;
}

}  // namespace

Vec riemann_apply(const MetricModel& m, const Vec& p, const Vec& X, const Vec& Y,
                  const Vec& Z, double t) {
  const int n = m.dim();
  switch (m.family()) {
    case Family::Euclidean:
    case Family::Circle:
      return Vec::Zero(n);
    case Family::SpaceForm: {
      // R(X,Y)Z = K (⟨X,Z⟩ Y − ⟨Y,Z⟩ X)
      const double K = m.curvature_constant();
      const Mat g = metric_at(m, p, t);
      const double xz = X.dot(g * Z);
      const double yz = Y.dot(g * Z);
      return K * (xz * Y - yz * X);
    }
    default: {
      const RiemannTensor rt = riemann_tensor_from_christoffel(m, p, t);
      return riemann_tensor_apply(rt, X, Y, Z);
    }
  }
}

double riemann_component(const MetricModel& m, const Vec& p, const Vec& X,
                         const Vec& Y, const Vec& Z, const Vec& W, double t) {
  const Vec rxyz = riemann_apply(m, p, X, Y, Z, t);
  return rxyz.dot(metric_at(m, p, t) * W);
}

double inner(const MetricModel& m, const Vec& p, const Vec& X, const Vec& Y, double t) {
  return X.dot(metric_at(m, p, t) * Y);
}

double norm(const MetricModel& m, const Vec& p, const Vec& X, double t) {
  return std::sqrt(std::max(0.0, inner(m, p, X, X, t)));
}

double oriented_volume(const MetricModel& m, const Vec& p, const Vec& X,
                       const Vec& Y, double t) {
  if (m.dim() != 2) throw PreconditionError("oriented_volume(X, Y) needs dim 2");
  const Mat g = metric_at(m, p, t);
  return std::sqrt(g.determinant()) * (X[0] * Y[1] - X[1] * Y[0]);
}

double oriented_volume(const MetricModel& m, const Vec& p, const Vec& X,
                       const Vec& Y, const Vec& Z, double t) {
  if (m.dim() != 3) throw PreconditionError("oriented_volume(X, Y, Z) needs dim 3");
  const Mat g = metric_at(m, p, t);
  Eigen::Matrix3d frame;
  frame.col(0) = X.head(3);
  frame.col(1) = Y.head(3);
  frame.col(2) = Z.head(3);
  return std::sqrt(g.determinant()) * frame.determinant();
}

Vec metric_cross(const MetricModel& m, const Vec& p, const Vec& X, const Vec& Y,
                 double t) {
  if (m.dim() != 3) throw PreconditionError("metric_cross needs dim 3");
  const Mat g = metric_at(m, p, t);
  // (X×Y)_a = √det(g) ε_abc X^b Y^c, then raise the index.
  Eigen::Vector3d low = std::sqrt(g.determinant()) *
                        Eigen::Vector3d(X.head(3)).cross(Eigen::Vector3d(Y.head(3)));
  Vec out(3);
  out = g.llt().solve(low.eval());
  return out;
}

Vec metric_rot90(const MetricModel& m, const Vec& p, const Vec& X, double t) {
  if (m.dim() != 2) throw PreconditionError("metric_rot90 needs dim 2");
  const Mat g = metric_at(m, p, t);
  Vec low(2);  // (JX)_a = √det(g) ε_ba X^b
  const double s = std::sqrt(g.determinant());
  low[0] = -s * X[1];
  low[1] = s * X[0];
  Vec out(2);
  out = g.llt().solve(low);
  return out;
}

double sectional(const MetricModel& m, const Vec& p, const Vec& X, const Vec& Y,
                 double t) {
  const Mat g = metric_at(m, p, t);
  const double xx = X.dot(g * X);
  const double yy = Y.dot(g * Y);
  const double xy = X.dot(g * Y);
  const double gram = xx * yy - xy * xy;
  if (!(gram > 1e-12 * xx * yy)) throw DegeneratePlaneError("vectors do not span a 2-plane");
  const Vec rxyx = riemann_apply(m, p, X, Y, X, t);
  return rxyx.dot(g * Y) / gram;
}

namespace {

// Λ estimate for generic families: sup |R(X̃,Ỹ,Z̃,W̃)| over sampled unit
// frames, inflated by 1.5. Ξ estimate: sup of sampled sectional curvature.
void estimate_curvature_bounds(const MetricModel& m, double* lambda, double* xi) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> coord(-0.6, 0.6);
  const int n = m.dim();
  double sup_abs = 0.0;
  double sup_sec = 0.0;
  int points = 0;
  while (points < 50) {
    Vec p(n);
    for (int i = 0; i < n; ++i) p[i] = coord(rng);
    if (!m.in_domain(p)) continue;
    ++points;
    const RiemannTensor rt = riemann_tensor_from_christoffel(m, p, 0.0);
    const Mat g = metric_at(m, p, 0.0);
    for (int trial = 0; trial < 20; ++trial) {
      Vec v[4];
      for (auto& vi : v) {
        vi = Vec(n);
        for (int i = 0; i < n; ++i) vi[i] = gauss(rng);
        const double len = std::sqrt(vi.dot(g * vi));
        vi /= len;
      }
      const Vec rxyz = riemann_tensor_apply(rt, v[0], v[1], v[2]);
      sup_abs = std::max(sup_abs, std::abs(rxyz.dot(g * v[3])));
      const double xx = v[0].dot(g * v[0]), yy = v[1].dot(g * v[1]),
                   xy = v[0].dot(g * v[1]);
      const double gram = xx * yy - xy * xy;
      if (gram > 1e-8) {
        const Vec rxyx = riemann_tensor_apply(rt, v[0], v[1], v[0]);
        sup_sec = std::max(sup_sec, rxyx.dot(g * v[1]) / gram);
      }
    }
  }
  *lambda = 1.5 * sup_abs;
  *xi = sup_sec;
}

}  // namespace

MetricModel MetricModel::euclidean(int dim) {
  if (dim < 1 || dim > kMaxDim) throw ConfigError("euclidean dimension out of range");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::Euclidean;
  impl->dim = dim;
  return MetricModel(impl);
}

MetricModel MetricModel::circle(double radius) {
  if (!(radius > 0)) throw ConfigError("circle radius must be positive");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::Circle;
  impl->dim = 1;
  impl->radius = radius;
  return MetricModel(impl);
}

MetricModel MetricModel::space_form(int dim, double K) {
  if (dim != 2 && dim != 3) throw ConfigError("space form dimension must be 2 or 3");
  if (K != 1.0 && K != -1.0) throw ConfigError("space form curvature must be ±1");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::SpaceForm;
  impl->dim = dim;
  impl->K = K;
  impl->lambda = std::abs(K);
  impl->xi = K;
  return MetricModel(impl);
}

MetricModel MetricModel::product(MetricModel base, double fiber_radius) {
  if (!(fiber_radius > 0)) throw ConfigError("fiber radius must be positive");
  if (base.dim() + 1 > kMaxDim) throw ConfigError("product dimension out of range");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::Product;
  impl->dim = base.dim() + 1;
  impl->rho = fiber_radius;
  impl->base = base.impl_;
  impl->lambda = base.lambda_bound();
  impl->xi = std::max(base.xi_bound(), 0.0);  // mixed planes are flat
  return MetricModel(impl);
}

MetricModel MetricModel::conformal(MetricModel base, TimeScalar f) {
  auto impl = std::make_shared<Impl>();
  impl->family = Family::ConformalEvolving;
  impl->dim = base.dim();
  impl->f = f;
  impl->base = base.impl_;
  MetricModel model(impl);
  estimate_curvature_bounds(model, &impl->lambda, &impl->xi);
  return model;
}

MetricModel MetricModel::warped_circle(MetricModel base, double fiber_radius, TimeScalar f) {
  if (!(fiber_radius > 0)) throw ConfigError("fiber radius must be positive");
  if (base.dim() + 1 > kMaxDim) throw ConfigError("warped product dimension out of range");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::WarpedCircle;
  impl->dim = base.dim() + 1;
  impl->rho = fiber_radius;
  impl->f = f;
  impl->base = base.impl_;
  MetricModel model(impl);
  estimate_curvature_bounds(model, &impl->lambda, &impl->xi);
  return model;
}

MetricModel MetricModel::with_conformal_value(double f_value) const {
  if (impl_->family != Family::ConformalEvolving && impl_->family != Family::WarpedCircle)
    throw PreconditionError("model has no conformal exponent");
  auto impl = std::make_shared<Impl>(*impl_);
  impl->f = TimeScalar{f_value, 0.0};
  return MetricModel(impl);
}

}  // namespace geoflow
