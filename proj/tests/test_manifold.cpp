#include <doctest.h>

#include <cmath>

#include "geoflow/manifold.hpp"
#include "support.hpp"

using namespace geoflow;
using testsupport::fd_christoffel_oracle;
using testsupport::make_rng;
using testsupport::random_orthonormal_pair;
using testsupport::random_point;
using testsupport::random_vec;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

std::vector<MetricModel> all_static_families() {
  return {
      MetricModel::euclidean(2),
      MetricModel::euclidean(3),
      MetricModel::space_form(3, 1.0),
      MetricModel::space_form(3, -1.0),
      MetricModel::product(MetricModel::circle(1.0), 1.0),
      MetricModel::product(MetricModel::space_form(2, 1.0), 0.7),
  };
}

}  // namespace

TEST_CASE("metric: euclidean chart is the identity") {
  auto m = MetricModel::euclidean(2);
  auto g = metric_at(m, vec2(0.3, -1.2), 0.0);
  CHECK((g - Mat::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("metric: hyperbolic ball at the origin is 4·I and flat-connection there") {
  auto m = MetricModel::space_form(3, -1.0);
  const Vec origin = Vec::Zero(3);
  auto g = metric_at(m, origin, 0.0);
  CHECK((g - 4.0 * Mat::Identity(3, 3)).norm() < 1e-15);
  auto gamma = christoffel(m, origin, 0.0);
  for (int a = 0; a < 3; ++a) CHECK(gamma.comp[a].norm() < 1e-15);
}

TEST_CASE("metric: conformal factor exp(f(t)) with f = 2t") {
  auto m = MetricModel::conformal(MetricModel::euclidean(2), TimeScalar{0.0, 2.0});
  const Vec p = vec2(0.4, 0.1);
  // f(0) = 0: the metric starts at the base metric.
  CHECK((metric_at(m, p, 0.0) - Mat::Identity(2, 2)).norm() < 1e-15);
  // ⟨e1,e1⟩ at t=1 equals e² = 7.38905609893065.
  Vec e1 = vec2(1.0, 0.0);
  CHECK(inner(m, p, e1, e1, 1.0) == doctest::Approx(7.38905609893065).epsilon(1e-12));
}

TEST_CASE("metric: warped fiber block carries exp(f(t))·ρ²") {
  auto m = MetricModel::warped_circle(MetricModel::circle(1.0), 0.5, TimeScalar{0.0, 2.0});
  const Vec p = vec2(0.3, 1.0);
  auto g1 = metric_at(m, p, 1.0);
  CHECK(g1(1, 1) == doctest::Approx(7.38905609893065 * 0.25).epsilon(1e-12));
  CHECK(g1(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g1(0, 1) == 0.0);
}

TEST_CASE("metric: symmetry and positive-definiteness at random chart points") {
  auto rng = make_rng(101);
  for (const auto& m : all_static_families()) {
    for (int trial = 0; trial < 10000; ++trial) {
      const Vec p = random_point(rng, m);
      const Mat g = metric_at(m, p, 0.0);
      REQUIRE((g - g.transpose()).norm() <= 1e-14 * g.norm());
      Eigen::SelfAdjointEigenSolver<Mat> es(g);
      REQUIRE(es.eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("metric: domain guards reject out-of-chart points") {
  auto h3 = MetricModel::space_form(3, -1.0);
  CHECK_THROWS_AS(metric_at(h3, vec3(1.2, 0.0, 0.0), 0.0), DomainError);
  auto s3 = MetricModel::space_form(3, 1.0);
  CHECK_THROWS_AS(metric_at(s3, vec3(2e3, 0.0, 0.0), 0.0), DomainError);
  CHECK(s3.in_domain(vec3(999.0, 0.0, 0.0)));
}

TEST_CASE("christoffel: flat families vanish identically") {
  auto rng = make_rng(7);
  auto m = MetricModel::euclidean(3);
  auto gamma = christoffel(m, random_point(rng, m), 0.0);
  CHECK(gamma.zero);
  auto torus = MetricModel::product(MetricModel::circle(1.0), 1.0);
  CHECK(christoffel(torus, random_point(rng, torus), 0.0).zero);
}

TEST_CASE("christoffel: sphere chart matches finite-difference oracle") {
  auto rng = make_rng(11);
  for (double K : {1.0, -1.0}) {
    auto m = MetricModel::space_form(3, K);
    for (int trial = 0; trial < 25; ++trial) {
      const Vec p = random_point(rng, m);
      double oracle[4][4][4];
      fd_christoffel_oracle(m, p, 0.0, 1e-5, oracle);
      auto gamma = christoffel(m, p, 0.0);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c)
            REQUIRE(std::abs(gamma.comp[a](b, c) - oracle[a][b][c]) < 1e-6);
    }
  }
}

TEST_CASE("christoffel: metric compatibility ∂g = Γ·g + g·Γ") {
  // ∂_c g_ab = Γ^d_{ca} g_db + Γ^d_{cb} g_ad, derivatives by finite difference.
  auto rng = make_rng(13);
  std::vector<MetricModel> models = {
      MetricModel::space_form(3, 1.0),
      MetricModel::space_form(3, -1.0),
      MetricModel::product(MetricModel::space_form(2, 1.0), 0.7),
      MetricModel::warped_circle(MetricModel::space_form(2, 1.0), 0.5, TimeScalar{0.1, 0.3}),
  };
  for (const auto& m : models) {
    const int n = m.dim();
    for (int trial = 0; trial < 10; ++trial) {
      const Vec p = random_point(rng, m);
      const double t = 0.4;
      auto gamma = christoffel(m, p, t);
      const Mat g = metric_at(m, p, t);
      for (int c = 0; c < n; ++c) {
        Vec pp = p, pm = p;
        pp[c] += 1e-5;
        pm[c] -= 1e-5;
        const Mat dg = (metric_at(m, pp, t) - metric_at(m, pm, t)) / 2e-5;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            double rhs = 0.0;
            for (int d = 0; d < n; ++d)
              rhs += gamma.comp[d](c, a) * g(d, b) + gamma.comp[d](c, b) * g(a, d);
            REQUIRE(std::abs(dg(a, b) - rhs) < 1e-5);
          }
      }
    }
  }
}

TEST_CASE("riemann: space-form identity R(T,N)T = K·N on orthonormal pairs") {
  auto rng = make_rng(17);
  for (double K : {1.0, -1.0}) {
    auto m = MetricModel::space_form(3, K);
    for (int trial = 0; trial < 50; ++trial) {
      const Vec p = random_point(rng, m);
      auto [T, N] = random_orthonormal_pair(rng, m, p, 0.0);
      const Vec rtnt = riemann_apply(m, p, T, N, T, 0.0);
      const Vec rtnn = riemann_apply(m, p, T, N, N, 0.0);
      REQUIRE(norm(m, p, Vec(rtnt - K * N), 0.0) < 1e-9);
      REQUIRE(norm(m, p, Vec(rtnn + K * T), 0.0) < 1e-9);
    }
  }
}

TEST_CASE("riemann: closed form agrees with the Christoffel route") {
  // Dual route: compare the space-form closed form against the generic
  // curvature assembly used for products and evolving metrics. The generic
  // route is exercised through a Product wrapper with a trivially flat fiber.
  auto rng = make_rng(19);
  for (double K : {1.0, -1.0}) {
    auto direct = MetricModel::space_form(2, K);
    auto wrapped = MetricModel::product(direct, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      const Vec pb = random_point(rng, direct);
      Vec p(3);
      p << pb[0], pb[1], 0.7;
      Vec X3 = random_vec(rng, 3), Y3 = random_vec(rng, 3), Z3 = random_vec(rng, 3);
      X3[2] = Y3[2] = Z3[2] = 0.0;
      const Vec r3 = riemann_apply(wrapped, p, X3, Y3, Z3, 0.0);
      const Vec r2 = riemann_apply(direct, pb, Vec(X3.head(2)), Vec(Y3.head(2)), Vec(Z3.head(2)), 0.0);
      REQUIRE((r3.head(2) - r2).norm() < 1e-6 * (1.0 + r2.norm()));
      REQUIRE(std::abs(r3[2]) < 1e-8);
    }
  }
}

TEST_CASE("riemann: first Bianchi identity on random frames") {
  auto rng = make_rng(23);
  std::vector<MetricModel> models = {
      MetricModel::space_form(3, 1.0),
      MetricModel::space_form(3, -1.0),
      MetricModel::product(MetricModel::space_form(2, 1.0), 0.7),
      MetricModel::conformal(MetricModel::euclidean(2), TimeScalar{0.0, 2.0}),
      MetricModel::warped_circle(MetricModel::circle(1.0), 0.8, TimeScalar{0.0, 1.0}),
  };
  for (const auto& m : models) {
    for (int trial = 0; trial < 10; ++trial) {
      const Vec p = random_point(rng, m);
      const Vec X = random_vec(rng, m.dim());
      const Vec Y = random_vec(rng, m.dim());
      const Vec Z = random_vec(rng, m.dim());
      const Vec sum = riemann_apply(m, p, X, Y, Z, 0.3) + riemann_apply(m, p, Y, Z, X, 0.3) +
                      riemann_apply(m, p, Z, X, Y, 0.3);
      REQUIRE(sum.norm() < 1e-6 * (1.0 + X.norm() * Y.norm() * Z.norm()));
    }
  }
}

TEST_CASE("riemann: locally symmetric families have ∇R = 0") {
  // ∇_X R(Y,Z,W,V) = X(R(Y,Z,W,V)) − ΣR(..∇_X slot..), coordinate frames.
  auto rng = make_rng(29);
  std::vector<MetricModel> models = {
      MetricModel::space_form(3, 1.0),
      MetricModel::product(MetricModel::space_form(2, 1.0), 0.7),
  };
  const double h = 1e-3;
  for (const auto& m : models) {
    const int n = m.dim();
    for (int trial = 0; trial < 4; ++trial) {
      const Vec p = random_point(rng, m, 0.4);
      auto gamma = christoffel(m, p, 0.0);
      auto basis = [&](int i) {
        Vec e = Vec::Zero(n);
        e[i] = 1.0;
        return e;
      };
      for (int x = 0; x < n; ++x) {
        // a handful of representative slots, not the full tensor
        const int idx[3][4] = {{0, 1, 0, 1}, {0, 1, 1, 0}, {1, 2 % n, 1, 2 % n}};
        for (const auto& s : idx) {
          auto component = [&](const Vec& q) {
            return riemann_component(m, q, basis(s[0]), basis(s[1]), basis(s[2]), basis(s[3]), 0.0);
          };
          Vec pp = p, pm = p;
          pp[x] += h;
          pm[x] -= h;
          double val = (component(pp) - component(pm)) / (2.0 * h);
          // subtract the connection corrections slot by slot
          for (int slot = 0; slot < 4; ++slot) {
            Vec corr = Vec::Zero(n);
            for (int a = 0; a < n; ++a) corr[a] = gamma.zero ? 0.0 : gamma.comp[a](x, s[slot]);
            Vec args[4] = {basis(s[0]), basis(s[1]), basis(s[2]), basis(s[3])};
            args[slot] = corr;
            val -= riemann_component(m, p, args[0], args[1], args[2], args[3], 0.0);
          }
          REQUIRE(std::abs(val) < 1e-4);
        }
      }
    }
  }
}

TEST_CASE("sectional: space forms give ±1, product mixed planes give 0") {
  auto rng = make_rng(31);
  auto s3 = MetricModel::space_form(3, 1.0);
  auto h3 = MetricModel::space_form(3, -1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const Vec ps = random_point(rng, s3);
    const Vec X = random_vec(rng, 3), Y = random_vec(rng, 3);
    CHECK(std::abs(sectional(s3, ps, X, Y, 0.0) - 1.0) < 1e-9);
    const Vec ph = random_point(rng, h3);
    CHECK(std::abs(sectional(h3, ph, X, Y, 0.0) + 1.0) < 1e-9);
  }
  auto flat = MetricModel::product(MetricModel::circle(1.0), 1.0);
  const Vec p = vec2(0.2, 1.1);
  CHECK(std::abs(sectional(flat, p, vec2(1.0, 0.0), vec2(0.0, 1.0), 0.0)) < 1e-12);
  // S² × S¹: base plane has curvature 1, mixed planes are flat.
  auto s2s1 = MetricModel::product(MetricModel::space_form(2, 1.0), 0.7);
  const Vec q = vec3(0.1, -0.2, 0.4);
  CHECK(sectional(s2s1, q, vec3(1, 0, 0), vec3(0, 1, 0), 0.0) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(sectional(s2s1, q, vec3(1, 0, 0), vec3(0, 0, 1), 0.0)) < 1e-5);
}

TEST_CASE("sectional: parallel vectors are rejected") {
  auto m = MetricModel::space_form(3, 1.0);
  const Vec p = vec3(0.1, 0.2, 0.0);
  const Vec X = vec3(1.0, 2.0, -0.5);
  CHECK_THROWS_AS(sectional(m, p, X, Vec(2.0 * X), 0.0), DegeneratePlaneError);
}

TEST_CASE("curvature bounds: Λ and Ξ per family") {
  CHECK(MetricModel::space_form(3, 1.0).lambda_bound() == 1.0);
  CHECK(MetricModel::space_form(3, -1.0).lambda_bound() == 1.0);
  CHECK(MetricModel::space_form(3, -1.0).xi_bound() == -1.0);
  CHECK(MetricModel::euclidean(2).lambda_bound() == 0.0);
  auto torus = MetricModel::product(MetricModel::circle(1.0), 1.0);
  CHECK(torus.lambda_bound() == 0.0);
  CHECK(torus.xi_bound() == 0.0);
  auto s2s1 = MetricModel::product(MetricModel::space_form(2, 1.0), 0.7);
  CHECK(s2s1.lambda_bound() == 1.0);
  CHECK(s2s1.xi_bound() == 1.0);
  // conformal over a flat base stays flat at every instant
  auto conf = MetricModel::conformal(MetricModel::euclidean(2), TimeScalar{0.0, 2.0});
  CHECK(conf.lambda_bound() < 1e-10);
}

TEST_CASE("with_conformal_value freezes the exponent") {
  auto m = MetricModel::conformal(MetricModel::euclidean(2), TimeScalar{0.0, 2.0});
  auto snap = m.with_conformal_value(0.7);
  const Vec p = vec2(0.0, 0.0);
  const double expect = std::exp(0.7);
  CHECK(metric_at(snap, p, 0.0)(0, 0) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(metric_at(snap, p, 123.0)(0, 0) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("fiber bookkeeping: axis, scale, periods") {
  auto torus = MetricModel::product(MetricModel::circle(1.0), 0.5);
  CHECK(torus.has_fiber());
  CHECK(torus.fiber_axis() == 1);
  CHECK(torus.fiber_scale(0.0) == 0.5);
  CHECK(torus.coord_period(0) == doctest::Approx(2.0 * M_PI));
  CHECK(torus.coord_period(1) == doctest::Approx(2.0 * M_PI));
  auto warped = MetricModel::warped_circle(MetricModel::circle(1.0), 0.5, TimeScalar{0.0, 2.0});
  CHECK(warped.fiber_scale(1.0) == doctest::Approx(0.5 * std::exp(1.0)).epsilon(1e-14));
  auto s3 = MetricModel::space_form(3, 1.0);
  CHECK(!s3.has_fiber());
  CHECK(s3.coord_period(0) == 0.0);
}
