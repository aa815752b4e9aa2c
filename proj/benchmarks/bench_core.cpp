#include <benchmark/benchmark.h>

#include "geoflow/curve.hpp"
#include "geoflow/evolving_metric.hpp"
#include "geoflow/flow.hpp"
#include "geoflow/generators.hpp"
#include "geoflow/manifold.hpp"
#include "geoflow/spaceform_ode.hpp"

using namespace geoflow;

namespace {

void BM_geometry_flat(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DiscreteCurve c = gen_ellipse(n, 2.0, 1.0);
  const MetricModel m = MetricModel::euclidean(2);
  for (auto _ : state) benchmark::DoNotOptimize(geometry(c, m, 0.0, 3));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_geometry_flat)->Arg(256)->Arg(1024)->Arg(4096);

void BM_geometry_space_form(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DiscreteCurve c = gen_perturbed_circle(n, 3, 0.5, 0.1, 3);
  const MetricModel m = MetricModel::space_form(3, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(geometry(c, m, 0.0, 3));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_geometry_space_form)->Arg(256)->Arg(1024);

void BM_geometry_warped(benchmark::State& state) {
  // the warped block exercises the generic Christoffel/curvature fallback
  const int n = static_cast<int>(state.range(0));
  const DiscreteCurve c = gen_torus_winding(n, 1, 2);
  const MetricModel m =
      MetricModel::warped_circle(MetricModel::circle(1.0), 1.0, {0.0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(geometry(c, m, 0.0, 3));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_geometry_warped)->Arg(256)->Arg(1024);

void BM_flow_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MetricModel m = MetricModel::euclidean(2);
  FlowState s;
  s.curve = gen_ellipse(n, 2.0, 1.0);
  s.geom = geometry(s.curve, m, 0.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(step(s, m, 1e-6));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_flow_step)->Arg(256)->Arg(1024);

void BM_driven_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MetricModel m = MetricModel::conformal(MetricModel::euclidean(2), {0.0, 0.0});
  const ConformalRate policy;
  FlowState s;
  s.curve = gen_circle(n, 2);
  s.geom = geometry(s.curve, m, 0.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(step_evolving(s, m, policy, 1e-6));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_driven_step)->Arg(256);

void BM_riemann_component(benchmark::State& state) {
  const MetricModel m = MetricModel::space_form(3, 1.0);
  Vec p(3), t(3), nrm(3);
  p << 0.2, 0.1, 0.3;
  t << 1.0, 0.0, 0.0;
  nrm << 0.0, 1.0, 0.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(riemann_component(m, p, t, nrm, t, nrm, 0.0));
}
BENCHMARK(BM_riemann_component);

void BM_helix_rk4(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_helix({1.0, 1.0, -1, 0.0}, 1.0));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_helix_rk4);

void BM_short_run(benchmark::State& state) {
  const MetricModel m = MetricModel::euclidean(2);
  const DiscreteCurve c = gen_ellipse(256, 2.0, 1.0);
  FlowParams p;
  p.t_max = 1e-3;
  p.monitor_identities = false;
  for (auto _ : state) benchmark::DoNotOptimize(run(m, c, p));
}
BENCHMARK(BM_short_run);

}  // namespace

BENCHMARK_MAIN();
