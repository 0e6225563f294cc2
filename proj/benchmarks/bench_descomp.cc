#include <descomp/complementation.hh>
#include <descomp/evaluator.hh>
#include <descomp/interpretations.hh>
#include <descomp/problems.hh>
#include <descomp/sat2col.hh>

#include <benchmark/benchmark.h>

using namespace descomp;

static void BM_EvalReach(benchmark::State &state)
{
    auto g = gnp_graph(static_cast<std::size_t>(state.range(0)), 0.2, 1);
    auto f = reach_formula();
    for (auto _ : state)
        benchmark::DoNotOptimize(eval(g, f));
}
BENCHMARK(BM_EvalReach)->Arg(8)->Arg(16)->Arg(32);

static void BM_EvalNonreach(benchmark::State &state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = gnp_graph(n, 0.15, 2);
    auto f = build_nonreach();
    Environment env;
    env.elements["x"] = n - 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(eval(g, f, env));
}
BENCHMARK(BM_EvalNonreach)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_ApplySat2col(benchmark::State &state)
{
    auto cnf = random_cnf(static_cast<std::size_t>(state.range(0)), 3);
    auto &interp = sat2col_interpretation();
    for (auto _ : state)
        benchmark::DoNotOptimize(apply(interp, cnf));
}
BENCHMARK(BM_ApplySat2col)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Decide3col(benchmark::State &state)
{
    auto g = build_gadget_graph(random_cnf(static_cast<std::size_t>(state.range(0)), 4));
    for (auto _ : state)
        benchmark::DoNotOptimize(decide_3col(g));
}
BENCHMARK(BM_Decide3col)->Arg(3)->Arg(5)->Arg(8);

static void BM_VerifyCertificate(benchmark::State &state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    // a path on all but the last vertex, which stays isolated
    StructureBuilder b(graph_vocabulary(), n);
    for (Element v = 0; v + 2 < n; ++v)
        b.add("E", {v, v + 1});
    auto g = std::move(b).build();
    auto text = serialize_certificate(make_certificate(g, n - 1));
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_certificate_text(g, n - 1, text));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_VerifyCertificate)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
