#include <benchmark/benchmark.h>

#include <Eigen/Core>

#include "qaa/ec3.hpp"
#include "qaa/eigensolve.hpp"
#include "qaa/evolve.hpp"
#include "qaa/operators.hpp"
#include "qaa/path.hpp"
#include "qaa/rng.hpp"
#include "qaa/schedule.hpp"

namespace {

qaa::KLocalOperator mixed_field_model(int n, std::uint64_t seed) {
    qaa::Rng rng(seed);
    qaa::KLocalOperator h(n);
    for (int i = 0; i < n; ++i) {
        h.add_z({i}, rng.uniform(-1.0, 1.0));
        h.add_x(i, rng.uniform(-1.0, 1.0));
    }
    for (int i = 0; i + 1 < n; ++i) h.add_z({i, i + 1}, rng.uniform(-1.0, 1.0));
    return h;
}

void BM_Matvec(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const qaa::KLocalOperator h = mixed_field_model(n, 7);
    Eigen::VectorXd psi = Eigen::VectorXd::Random(static_cast<long>(h.dim()));
    psi.normalize();
    for (auto _ : state) {
        Eigen::VectorXd out = h.apply(psi);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(h.dim()));
}
BENCHMARK(BM_Matvec)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMicrosecond);

void BM_LowestK(benchmark::State& state) {
    const qaa::KLocalOperator h = mixed_field_model(10, 11);
    qaa::SolverOptions opts;
    opts.dense_threshold = 1;  // exercise the Krylov path
    for (auto _ : state) {
        const qaa::SpectrumSlice s = qaa::lowest_k(h, 4, opts, false);
        benchmark::DoNotOptimize(s.energies.data());
    }
}
BENCHMARK(BM_LowestK)->Unit(benchmark::kMillisecond);

void BM_EvolveShortAnneal(benchmark::State& state) {
    const qaa::Ec3Cost ec = qaa::ec3_to_cost(qaa::random_ec3(8, 0.62, 5));
    const qaa::OperatorFamily fam = qaa::build_annealing_path(ec.cost).family_s();
    for (auto _ : state) {
        const qaa::EvolutionResult r = qaa::evolve(fam, qaa::AnnealSchedule::linear(4.0));
        benchmark::DoNotOptimize(r.success_probability);
    }
}
BENCHMARK(BM_EvolveShortAnneal)->Unit(benchmark::kMillisecond);

void BM_DiagonalEnergies(benchmark::State& state) {
    const qaa::Ec3Cost ec = qaa::ec3_to_cost(qaa::random_ec3(18, 0.62, 9));
    const qaa::KLocalOperator h = ec.cost.to_operator();
    for (auto _ : state) {
        const std::vector<double> d = h.diagonal_energies();
        benchmark::DoNotOptimize(d.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(h.dim()));
}
BENCHMARK(BM_DiagonalEnergies)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
