#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "rsphere/rsphere.hpp"

namespace {

using namespace rsphere;

void BM_GeodesicEval(benchmark::State &state) {
  Sampler rng(1);
  const TangentVector x{rng.block_with_norm(state.range(0), 1.3)};
  for (auto _ : state)
    benchmark::DoNotOptimize(geodesic_matrix(x, 0.7));
}
BENCHMARK(BM_GeodesicEval)->RangeMultiplier(2)->Range(2, 128);

void BM_LogGeneral(benchmark::State &state) {
  Sampler rng(2);
  const Eigen::Index n = state.range(0);
  // rotate an origin-based pair to a generic position
  const ComplexMatrix u = rng.unitary(2 * n);
  const TangentVector x{rng.block_with_norm(n, 0.6)};
  const SphereProjection p =
      SphereProjection::from_matrix(u * SphereProjection::origin(n).matrix() * u.adjoint());
  const SphereProjection q =
      SphereProjection::from_matrix(u * exp_p0(x).matrix() * u.adjoint());
  for (auto _ : state)
    benchmark::DoNotOptimize(log_general(p, q));
}
BENCHMARK(BM_LogGeneral)->RangeMultiplier(2)->Range(2, 64);

void BM_FinslerDist(benchmark::State &state) {
  Sampler rng(3);
  const Eigen::Index n = state.range(0);
  const TangentVector x{rng.block_with_norm(n, 1.0)};
  const SphereProjection p = SphereProjection::origin(n), q = exp_p0(x);
  for (auto _ : state)
    benchmark::DoNotOptimize(finsler_dist(p, q));
}
BENCHMARK(BM_FinslerDist)->RangeMultiplier(2)->Range(2, 64);

// crosses the switch from JacobiSVD to BDCSVD above n = 64
void BM_ProjGraph(benchmark::State &state) {
  Sampler rng(4);
  const ComplexMatrix t = rng.gaussian(state.range(0), state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(proj_graph(t));
}
BENCHMARK(BM_ProjGraph)->Arg(16)->Arg(64)->Arg(65)->Arg(128);

void BM_ParallelTransport(benchmark::State &state) {
  Sampler rng(5);
  const TangentVector x{rng.block_with_norm(4, 1.2)};
  const int steps = static_cast<int>(state.range(0));
  std::vector<SphereProjection> path;
  for (int k = 0; k <= 2 * steps; ++k)
    path.push_back(geodesic_eval(x, static_cast<double>(k) / (2 * steps)));
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel_transport(path, 1.0, steps));
}
BENCHMARK(BM_ParallelTransport)->Arg(50)->Arg(200)->Arg(400);

void BM_DiffopGap(benchmark::State &state) {
  const FourierTruncation trunc(static_cast<int>(state.range(0)));
  const Geodesic curve = diff_geodesic(trunc);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        op_norm(curve.matrix_at(0.5) - proj_graph(deformation_T(trunc, 0.5)).matrix()));
}
BENCHMARK(BM_DiffopGap)->Arg(8)->Arg(32)->Arg(128);

void BM_ConjugateIndex(benchmark::State &state) {
  Sampler rng(6);
  const Eigen::Index k = state.range(0), n = 8;
  const ComplexMatrix f = rng.gaussian(n, n - k) * rng.gaussian(n - k, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(conjugate_index(f));
}
BENCHMARK(BM_ConjugateIndex)->DenseRange(1, 3);

} // namespace

BENCHMARK_MAIN();
