#include <benchmark/benchmark.h>

#include <memory>

#include "cotube/dynamics.hpp"
#include "cotube/normal_form.hpp"
#include "cotube/tube.hpp"

using namespace cotube;

namespace {

LinearAction so3_action() {
  return LinearAction::standard(std::make_shared<LieGroupModel>(LieGroupModel::so3()));
}

VectorXd v3(double x, double y, double z) {
  VectorXd v(3);
  v << x, y, z;
  return v;
}

const TubeChart& first_tube() {
  static const TubeChart tc =
      build_tube_chart(build_slice_chart(so3_action(), VectorXd::Zero(3), v3(1, 0, 0)));
  return tc;
}

}  // namespace

static void BM_Exp(benchmark::State& state) {
  const auto model = LieGroupModel::so3();
  Rng rng(1);
  const AlgebraVector xi(rng.gaussian_vector(3));
  for (auto _ : state) benchmark::DoNotOptimize(model.exp(xi));
}
BENCHMARK(BM_Exp);

static void BM_AdStar(benchmark::State& state) {
  const auto model = LieGroupModel::so3();
  Rng rng(2);
  const GroupElement g = model.haar_sample(rng);
  const DualVector nu(rng.gaussian_vector(3));
  for (auto _ : state) benchmark::DoNotOptimize(model.Ad_star(g, nu));
}
BENCHMARK(BM_AdStar);

static void BM_BuildSliceChart(benchmark::State& state) {
  const LinearAction act = so3_action();
  for (auto _ : state)
    benchmark::DoNotOptimize(build_slice_chart(act, VectorXd::Zero(3), v3(1, 0, 0)));
}
BENCHMARK(BM_BuildSliceChart);

static void BM_SymplecticNormalSpace(benchmark::State& state) {
  const SliceChart chart = build_slice_chart(so3_action(), VectorXd::Zero(3), v3(1, 0, 0));
  for (auto _ : state) benchmark::DoNotOptimize(symplectic_normal_space(chart));
}
BENCHMARK(BM_SymplecticNormalSpace);

static void BM_TangentChain(benchmark::State& state) {
  const SliceChart chart = build_slice_chart(so3_action(), VectorXd::Zero(3), v3(1, 0, 0));
  for (auto _ : state) benchmark::DoNotOptimize(tangent_level_chain(chart));
}
BENCHMARK(BM_TangentChain);

static void BM_GammaSolve(benchmark::State& state) {
  const TubeChart& tc = first_tube();
  Rng rng(3);
  VectorXd delta(1), nubar(2);
  delta << 0.2;
  nubar << 0.4, -0.1;
  for (auto _ : state) benchmark::DoNotOptimize(gamma_star(tc, delta, nubar));
}
BENCHMARK(BM_GammaSolve);

static void BM_TubeEvaluate(benchmark::State& state) {
  const TubeChart& tc = first_tube();
  Rng rng(4);
  const ModelPoint m{tc.chart.action.group().haar_sample(rng), rng.gaussian_vector(2),
                     0.3 * rng.gaussian_vector(1), 0.3 * rng.gaussian_vector(1)};
  for (auto _ : state) benchmark::DoNotOptimize(tube_evaluate(tc, m));
}
BENCHMARK(BM_TubeEvaluate);

static void BM_IntegrateModelStep(benchmark::State& state) {
  const TubeChart& tc = first_tube();
  const HamiltonianSpec H = HamiltonianSpec::catalog("free", {});
  const ModelPoint start{GroupElement(MatrixXd::Identity(3, 3)),
                         (VectorXd(2) << 0.1, -0.2).finished(),
                         (VectorXd(1) << 0.05).finished(),
                         (VectorXd(1) << 0.02).finished()};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_model(tc, H, start, 1e-3, 1));
}
BENCHMARK(BM_IntegrateModelStep);

BENCHMARK_MAIN();
