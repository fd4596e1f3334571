#include <benchmark/benchmark.h>

#include "pcaforge/gadgets.hpp"
#include "pcaforge/realize.hpp"
#include "pcaforge/sexpr.hpp"
#include "pcaforge/stdlib.hpp"
#include "pcaforge/syntax.hpp"

using namespace pcaforge;

namespace {

void BM_SuccChain(benchmark::State& state) {
    Term t = numeral(0);
    for (int i = 0; i < state.range(0); ++i) {
        t = Term::app(stdlib::succ(), t);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(default_engine().red(t, 1'000'000));
    }
}
BENCHMARK(BM_SuccChain)->Arg(4)->Arg(16)->Arg(64);

// Divergence is paid in full up to the cap.
void BM_ExhaustOmega(benchmark::State& state) {
    Term omega = parse("S I I (S I I)");
    for (auto _ : state) {
        benchmark::DoNotOptimize(default_engine().red(omega, static_cast<std::uint64_t>(state.range(0))));
    }
}
BENCHMARK(BM_ExhaustOmega)->Arg(1'000)->Arg(10'000)->Arg(100'000);

void BM_GadgetV(benchmark::State& state) {
    Gadgets gd(HaltingProfile::halts_at(static_cast<std::uint64_t>(state.range(0))), 0);
    Term v0 = Term::app(gd.v(), numeral(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(default_engine().red(v0, 1'000'000));
    }
}
BENCHMARK(BM_GadgetV)->Arg(0)->Arg(3)->Arg(10);

void BM_BracketAbstraction(benchmark::State& state) {
    Term body = parse("x0 (x1 x2) (x2 (x0 a1)) (K x1 x2)");
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda({0, 1, 2}, body));
    }
}
BENCHMARK(BM_BracketAbstraction);

void BM_CheckEqualityRealizer(benchmark::State& state) {
    std::vector<RSet> params{canonical_numeral(static_cast<std::uint32_t>(state.range(0))),
                             canonical_numeral(static_cast<std::uint32_t>(state.range(0)))};
    Formula phi = Formula::eq(SetExpr::param(0), SetExpr::param(1));
    const Term& ir = equality_realizers().ir;
    for (auto _ : state) {
        benchmark::DoNotOptimize(check(ir, phi, params, 100'000));
    }
}
BENCHMARK(BM_CheckEqualityRealizer)->Arg(2)->Arg(4)->Arg(6);

void BM_ReadDocument(benchmark::State& state) {
    const char* text = R"doc((define a (numeral 4))
(define b (rset (pair "#0" (numeral 0)) (pair "#3" (numeral 3))))
(check "$ir" (eq a a))
(check "$p #3 $ir" (mem (numeral 3) b))
)doc";
    // The named realizers are built on first use.
    read_document(text, 100'000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(read_document(text, 100'000));
    }
}
BENCHMARK(BM_ReadDocument);

}  // namespace

BENCHMARK_MAIN();
