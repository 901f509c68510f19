#include <random>

#include <benchmark/benchmark.h>

#include "hyperflux/catalog.hpp"
#include "hyperflux/kz.hpp"
#include "hyperflux/transforms.hpp"
#include "hyperflux/verify.hpp"
#include "hyperflux/weyl.hpp"

namespace {

using namespace hyperflux;

void BM_ApplyK(benchmark::State& st)
{
    const int n = int(st.range(0)), D = int(st.range(1));
    const auto u = elementary_factor(FactorKind::binomial_sum, {0.7}, n, D);
    std::vector<cplx> lam(n, cplx(0.4, 0.2));
    const auto spec = TransformSpec::full(1.3, lam);
    for (auto _ : st) benchmark::DoNotOptimize(apply_K(u, spec));
    st.counters["coeffs"] = double(u.size());
}
BENCHMARK(BM_ApplyK)->Args({2, 20})->Args({2, 40})->Args({3, 20});

void BM_BuildDirectF1(benchmark::State& st)
{
    const SeriesId id{SeriesKind::F1, int(st.range(0)), {{"a", {0.3}}, {"b", {0.7}}, {"bp", {0.4}}, {"c", {1.9}}}};
    for (auto _ : st) benchmark::DoNotOptimize(build_direct(id));
}
BENCHMARK(BM_BuildDirectF1)->Arg(20)->Arg(60);

void BM_WeylCompose(benchmark::State& st)
{
    const int n = 2;
    const auto t = WeylOperator::theta(n, 0) + WeylOperator::theta(n, 1) + WeylOperator::constant(n, 0.5);
    WeylOperator p = t;
    for (int k = 1; k < st.range(0); ++k) p = p * t;
    for (auto _ : st) benchmark::DoNotOptimize(compose(p, p));
}
BENCHMARK(BM_WeylCompose)->Arg(2)->Arg(4)->Arg(6);

void BM_TransformAnnihilator(benchmark::State& st)
{
    const int n = 2;
    const auto dx = WeylOperator::d(n, 0), x = WeylOperator::x(n, 0), y = WeylOperator::x(n, 1);
    const auto one = WeylOperator::constant(n, 1.0);
    const auto p = (one - x - y) * dx - 0.7 * one;
    const auto dir = st.range(0) ? Direction::L : Direction::K;
    for (auto _ : st) benchmark::DoNotOptimize(transform_annihilator(p, 1.3, {0.4, 0.6}, dir));
}
BENCHMARK(BM_TransformAnnihilator)->Arg(0)->Arg(1);

void BM_KzPipeline(benchmark::State& st)
{
    std::mt19937_64 rng(42);
    const auto prm = verify::pqr_params(rng, int(st.range(0)), int(st.range(1)), int(st.range(2)));
    for (auto _ : st) benchmark::DoNotOptimize(pipeline_pqr(prm));
}
BENCHMARK(BM_KzPipeline)->Args({1, 1, 1})->Args({2, 1, 2})->Args({2, 2, 2});

void BM_RiemannScheme(benchmark::State& st)
{
    std::mt19937_64 rng(42);
    const auto f = pipeline_pqr(verify::pqr_params(rng, 2, 2, 2)).family;
    for (auto _ : st) benchmark::DoNotOptimize(riemann_scheme(f));
}
BENCHMARK(BM_RiemannScheme);

void BM_RigidityIndex(benchmark::State& st)
{
    std::mt19937_64 rng(42);
    const auto f = pipeline_pqr(verify::pqr_params(rng, 2, 2, 2)).family;
    for (auto _ : st) benchmark::DoNotOptimize(rigidity_index(f, 0));
}
BENCHMARK(BM_RigidityIndex);

} // namespace
BENCHMARK_MAIN();
