#include <benchmark/benchmark.h>

#include <attodress/attodress.hpp>

using namespace attodress;

namespace {

const System& paper_system() {
  static const System sys = System::from_config(Config{});
  return sys;
}

void BM_CrankNicolsonStep(benchmark::State& state) {
  const System& sys = paper_system();
  CrankNicolson cn(sys.potential);
  Wavefunction psi = sys.basis.state(1);
  for (auto _ : state) {
    cn.step(psi.amplitudes(), 0.02, 0.01);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(psi.size()));
}
BENCHMARK(BM_CrankNicolsonStep);

void BM_Bisection(benchmark::State& state) {
  const Grid g = build_grid(0.1, static_cast<double>(state.range(0)) * 0.1);
  const SymmetricTridiagonal t = as_symmetric_tridiagonal(h0_tridiagonal(Potential(g, 0.3)));
  for (auto _ : state) benchmark::DoNotOptimize(bisect_eigenvalue(t, 1));
}
BENCHMARK(BM_Bisection)->Arg(2048)->Arg(8192);

void BM_BoundStates(benchmark::State& state) {
  const Grid g = build_grid(0.1, 819.2);
  const Potential v(g, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(bound_states(v, 5));
}
BENCHMARK(BM_BoundStates)->Unit(benchmark::kMillisecond);

void BM_DynamicFamily(benchmark::State& state) {
  const System& sys = paper_system();
  const Pulse laser(0.02, 0.06, 126.78);
  std::vector<double> ts;
  for (int k = 0; k <= 1000; ++k) ts.push_back(-50.0 + 0.1 * k);
  const auto integrator = state.range(0) ? DynamicIntegrator::rk4 : DynamicIntegrator::magnus4;
  for (auto _ : state) benchmark::DoNotOptimize(dynamic_family(sys.basis, laser, ts, 0.02, integrator));
  state.SetLabel(state.range(0) ? "rk4" : "magnus4");
}
BENCHMARK(BM_DynamicFamily)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FinalProbability(benchmark::State& state) {
  const System& sys = paper_system();
  std::vector<double> ts;
  for (int k = 0; k <= 400; ++k) ts.push_back(-20.0 + 0.1 * k);
  DressedTrajectory u = unperturbed_family(sys.basis, ts);
  for (double t : ts) {
    Eigen::VectorXcd a(5);
    for (int n = 0; n < 5; ++n) a(n) = std::exp(cplx{0.0, -sys.basis.energy(n) * t});
    u.amplitudes.push_back(a);
  }
  const ProbeModel model(u, sys.basis);
  const Pulse probe(1e-3, 1.34, 10.84);
  for (auto _ : state) benchmark::DoNotOptimize(model.final_probability(1, 0, probe));
}
BENCHMARK(BM_FinalProbability);

}  // namespace

BENCHMARK_MAIN();
