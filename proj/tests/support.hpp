#ifndef GEOFLOW_TESTS_SUPPORT_HPP
#define GEOFLOW_TESTS_SUPPORT_HPP

// Shared test utilities and independent oracles. Everything here is written
// against first principles (finite differences, closed forms, fine
// quadrature) so that library results are checked by a second route, never
// against themselves.

#include <cmath>
#include <random>
#include <vector>

#include "geoflow/manifold.hpp"
#include "geoflow/types.hpp"

namespace testsupport {

using geoflow::Mat;
using geoflow::MetricModel;
using geoflow::Vec;

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

inline Vec random_vec(std::mt19937_64& rng, int dim, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = scale * gauss(rng);
  return v;
}

// Random point in the model's chart domain (kept well inside boundaries).
inline Vec random_point(std::mt19937_64& rng, const MetricModel& m, double box = 0.6) {
  std::uniform_real_distribution<double> u(-box, box);
  while (true) {
    Vec p(m.dim());
    for (int i = 0; i < m.dim(); ++i) p[i] = u(rng);
    if (m.in_domain(p)) return p;
  }
}

// g-orthonormal pair spanning a random 2-plane at p.
inline std::pair<Vec, Vec> random_orthonormal_pair(std::mt19937_64& rng,
                                                   const MetricModel& m, const Vec& p,
                                                   double t) {
  const Mat g = geoflow::metric_at(m, p, t);
  while (true) {
    Vec x = random_vec(rng, m.dim());
    Vec y = random_vec(rng, m.dim());
    const double xx = x.dot(g * x);
    if (xx < 1e-12) continue;
    x /= std::sqrt(xx);
    y -= (y.dot(g * x)) * x;
    const double yy = y.dot(g * y);
    if (yy < 1e-8) continue;
    y /= std::sqrt(yy);
    return {x, y};
  }
}

// Independent Christoffel oracle: centered finite differences of metric_at,
// assembled from the compatibility formula. (The library's space-form path is
// analytic, so this is a genuinely different route.)
inline void fd_christoffel_oracle(const MetricModel& m, const Vec& p, double t,
                                  double h, double gamma[4][4][4]) {
  const int n = m.dim();
  Mat dg[4];
  for (int d = 0; d < n; ++d) {
    Vec pp = p, pm = p;
    pp[d] += h;
    pm[d] -= h;
    dg[d] = (geoflow::metric_at(m, pp, t) - geoflow::metric_at(m, pm, t)) / (2.0 * h);
  }
  const Mat ginv = geoflow::metric_at(m, p, t).inverse();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double sum = 0.0;
        for (int d = 0; d < n; ++d)
          sum += ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        gamma[a][b][c] = 0.5 * sum;
      }
}

}  // namespace testsupport

#endif
