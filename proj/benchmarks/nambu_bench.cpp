#include <benchmark/benchmark.h>

#include "nambu/brackets.hpp"
#include "nambu/dynamics.hpp"
#include "nambu/system.hpp"
#include "nambu/transform.hpp"
#include "nambu/verify.hpp"

using namespace nambu;

namespace {

const SystemSpec& fixture(const std::string& name) {
  static std::map<std::string, SystemSpec> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    it = cache.emplace(name, load_system(std::string(NAMBU_FIXTURE_DIR) + "/" + name)).first;
  }
  return it->second;
}

void BM_NambuBracket(benchmark::State& state) {
  const auto& s = fixture("n4.sys");
  const auto& t = s.tensors.at("L1");
  const auto h = s.observables.at("H");
  const auto c1 = s.observables.at("C1");
  const auto a = (h * c1).pow(static_cast<std::uint32_t>(state.range(0)));
  const std::vector<Polynomial> args{a, h, c1};
  for (auto _ : state) benchmark::DoNotOptimize(nambu_bracket(t, args));
}
BENCHMARK(BM_NambuBracket)->Arg(1)->Arg(2)->Arg(4);

void BM_CondAlgebraic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t = levi_civita(n, {0, 1, n - 1}) + levi_civita(n, {1, 2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(check_cond_algebraic(t));
}
BENCHMARK(BM_CondAlgebraic)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_CondAlgebraicBlock(benchmark::State& state) {
  const auto& t = fixture("n6.sys").tensors.at("LBLOCK");
  for (auto _ : state) benchmark::DoNotOptimize(algebraic_violations(t));
}
BENCHMARK(BM_CondAlgebraicBlock)->Unit(benchmark::kMillisecond);

void BM_CondDifferential(benchmark::State& state) {
  const auto& t = fixture("n4.sys").tensors.at("L1");
  for (auto _ : state) benchmark::DoNotOptimize(check_cond_differential(t));
}
BENCHMARK(BM_CondDifferential);

void BM_FundamentalIdentityExhaustive(benchmark::State& state) {
  const auto& s = fixture("n4.sys");
  const auto basis = monomial_basis(4, 2, s.variables.names());
  const auto& t = s.tensors.at("L1");
  for (auto _ : state) benchmark::DoNotOptimize(check_fundamental_identity(t, basis));
  state.SetItemsProcessed(state.iterations() * 364 * 91);
}
BENCHMARK(BM_FundamentalIdentityExhaustive)->Unit(benchmark::kMillisecond);

void BM_GenericRank(benchmark::State& state) {
  const auto& j = fixture("n6.sys").matrices.at("J1");
  for (auto _ : state) benchmark::DoNotOptimize(generic_rank(j));
}
BENCHMARK(BM_GenericRank);

void BM_TransformPoisson(benchmark::State& state) {
  const auto& s = fixture("n6.sys");
  for (auto _ : state) {
    benchmark::DoNotOptimize(transform_poisson(s.matrices.at("J1"), s.maps.at("PHI1")));
  }
}
BENCHMARK(BM_TransformPoisson)->Unit(benchmark::kMillisecond);

void BM_Rk4Oscillator(benchmark::State& state) {
  const auto& s = fixture("n3.sys");
  FlowProblem f;
  const std::vector<Polynomial> gens{s.observables.at("H"), s.observables.at("C")};
  f.field = hamiltonian_vector_field(s.tensors.at("EPS"), gens);
  f.initial_state = {1.0, 0.0, 1.0};
  f.dt = 1e-3;
  f.horizon = static_cast<double>(state.range(0));
  f.invariants = {{"H", gens[0]}, {"C", gens[1]}};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_rk4(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(step_count(f.dt, f.horizon)));
}
BENCHMARK(BM_Rk4Oscillator)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
