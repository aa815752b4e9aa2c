#include "geoflow/generators.hpp"

#include <cmath>

namespace geoflow {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

DiscreteCurve gen_circle(int N, int dim, double radius) {
  if (dim < 2) throw PreconditionError("gen_circle needs dim >= 2");
  std::vector<Vec> nodes(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double u = kTwoPi * i / N;
    Vec p = Vec::Zero(dim);
    p[0] = radius * std::cos(u);
    p[1] = radius * std::sin(u);
    nodes[static_cast<size_t>(i)] = p;
  }
  return make_curve(std::move(nodes));
}

DiscreteCurve gen_ellipse(int N, double a, double b) {
  std::vector<Vec> nodes(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double u = kTwoPi * i / N;
    Vec p(2);
    p << a * std::cos(u), b * std::sin(u);
    nodes[static_cast<size_t>(i)] = p;
  }
  return make_curve(std::move(nodes));
}

DiscreteCurve gen_perturbed_circle(int N, int dim, double radius, double amp, int mode) {
  if (dim < 2) throw PreconditionError("gen_perturbed_circle needs dim >= 2");
  std::vector<Vec> nodes(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double u = kTwoPi * i / N;
    const double r = radius * (1.0 + amp * std::cos(mode * u));
    Vec p = Vec::Zero(dim);
    p[0] = r * std::cos(u);
    p[1] = r * std::sin(u);
    nodes[static_cast<size_t>(i)] = p;
  }
  return make_curve(std::move(nodes));
}

DiscreteCurve gen_torus_winding(int N, long p, long q, double amp, int mode) {
  std::vector<Vec> nodes(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double u = kTwoPi * i / N;
    Vec x(2);
    x << static_cast<double>(p) * u + amp * std::sin(mode * u),
        static_cast<double>(q) * u;
    nodes[static_cast<size_t>(i)] = x;
  }
  Vec shift(2);
  shift << kTwoPi * static_cast<double>(p), kTwoPi * static_cast<double>(q);
  return make_curve(std::move(nodes), shift);
}

DiscreteCurve gen_s2xs1(int N, long winding, double base_radius, double amp, int mode) {
  std::vector<Vec> nodes(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double u = kTwoPi * i / N;
    const double r = base_radius * (1.0 + amp * std::cos(mode * u));
    Vec x(3);
    x << r * std::cos(u), r * std::sin(u), static_cast<double>(winding) * u;
    nodes[static_cast<size_t>(i)] = x;
  }
  Vec shift = Vec::Zero(3);
  shift[2] = kTwoPi * static_cast<double>(winding);
  return make_curve(std::move(nodes), shift);
}

DiscreteCurve gen_helix(int N, double a, double b) {
  std::vector<Vec> nodes(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double u = kTwoPi * i / N;
    Vec x(3);
    x << a * std::cos(u), a * std::sin(u), b * u;
    nodes[static_cast<size_t>(i)] = x;
  }
  Vec shift = Vec::Zero(3);
  shift[2] = kTwoPi * b;
  return make_curve(std::move(nodes), shift);
}

DiscreteCurve gen_clifford_helix(int N, long p, long q, double r1, double r2) {
  if (std::abs(r1 * r1 + r2 * r2 - 1.0) > 1e-12)
    throw PreconditionError("clifford helix needs r1^2 + r2^2 = 1");
  std::vector<Vec> nodes(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double u = kTwoPi * i / N;
    const double g1 = r1 * std::cos(p * u), g2 = r1 * std::sin(p * u);
    const double g3 = r2 * std::cos(q * u), g4 = r2 * std::sin(q * u);
    Vec x(3);
    x << g1 / (1.0 + g4), g2 / (1.0 + g4), g3 / (1.0 + g4);
    nodes[static_cast<size_t>(i)] = x;
  }
  return make_curve(std::move(nodes));
}

}  // namespace geoflow
