// Serial reference kernels vs their OpenMP counterparts.
// Thread count follows OMP_NUM_THREADS.

#include <cmath>

#include <benchmark/benchmark.h>

#include "adaptopt/lp.hpp"
#include "adaptopt/problems.hpp"
#include "adaptopt/rng.hpp"
#include "adaptopt/validate.hpp"
#include "adaptopt/vi.hpp"

namespace {

using namespace adaptopt;

struct ValidationFixture {
  ProblemSpec p = generate_problem("quadratic", 50, 3);
  ProxSetup s = p.setup();
  ModelOracle o = make_oracle(p, s, NoiseSpec{}, ModelParams{0, 0, p.L, 0});
  ExactFunction f = [q = p](const Vector& x) { return q.objective.value(x); };
  ValidationOptions opt;
  ValidationFixture(int samples) { opt.samples = samples; }
};

void BM_ValidateModelSerial(benchmark::State& state) {
  const ValidationFixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::validate_model_serial(fx.s, fx.o, fx.f, fx.opt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ValidateModelParallel(benchmark::State& state) {
  const ValidationFixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_model(fx.s, fx.o, fx.f, fx.opt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// Epigraph LP of a max-affine function over a box: min t s.t. a_i.x + c_i <= t, |x_j| <= 1.
LinearProgram epigraph(int n, int m) {
  Rng rng(17);
  LinearProgram lp;
  lp.c = Vector::Unit(n + 1, n);
  lp.G = Matrix::Zero(m + 2 * n, n + 1);
  lp.h = Vector::Zero(m + 2 * n);
  for (int i = 0; i < m; ++i) {
    lp.G.row(i).head(n) = rng.uniform_vector(n, -1, 1).transpose();
    lp.G(i, n) = -1.0;
    lp.h[i] = -rng.uniform(-0.5, 0.5);
  }
  for (int j = 0; j < n; ++j) {
    lp.G(m + j, j) = 1.0;
    lp.h[m + j] = 1.0;
    lp.G(m + n + j, j) = -1.0;
    lp.h[m + n + j] = 1.0;
  }
  lp.E = Matrix(0, n + 1);
  lp.e = Vector(0);
  return lp;
}

void BM_VertexLPSerial(benchmark::State& state) {
  const LinearProgram lp = epigraph(static_cast<int>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(reference::solve_lp_vertices_serial(lp));
}

void BM_VertexLPParallel(benchmark::State& state) {
  const LinearProgram lp = epigraph(static_cast<int>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp_vertices(lp));
}

VIProblem rotating_field() {
  const ProxSetup s = ProxSetup::euclidean(FeasibleSet::box(Vector::Constant(2, -1), Vector::Constant(2, 1)));
  return VIProblem::general(
      s, [](const Vector& x) { return Vector((Vector(2) << std::sin(3 * x[0]) + x[1], x[0] * x[0]).finished()); },
      false);
}

void BM_GapMultistartSerial(benchmark::State& state) {
  const VIProblem vi = rotating_field();
  GapOptions opt;
  opt.starts = static_cast<int>(state.range(0));
  const Vector y = Vector::Constant(2, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::vi_gap_multistart_serial(vi, y, opt));
}

void BM_GapMultistartParallel(benchmark::State& state) {
  const VIProblem vi = rotating_field();
  GapOptions opt;
  opt.starts = static_cast<int>(state.range(0));
  const Vector y = Vector::Constant(2, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(vi_gap_certificate(vi, y, opt));
}

void BM_ValidateVIModelSerial(benchmark::State& state) {
  const ProblemSpec p = generate_problem("matrix-game", 6, 2);
  const SaddleProblem g = SaddleProblem::matrix_game(*p.game);
  const EquilibriumModel m = model_from_vi(g.to_vi(), p.L);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::validate_vi_model_serial(m, g.setup(), n, 5));
}

void BM_ValidateVIModelParallel(benchmark::State& state) {
  const ProblemSpec p = generate_problem("matrix-game", 6, 2);
  const SaddleProblem g = SaddleProblem::matrix_game(*p.game);
  const EquilibriumModel m = model_from_vi(g.to_vi(), p.L);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(validate_vi_model(m, g.setup(), n, 5));
}

BENCHMARK(BM_ValidateModelSerial)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ValidateModelParallel)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VertexLPSerial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VertexLPParallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GapMultistartSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapMultistartParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ValidateVIModelSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ValidateVIModelParallel)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
