#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "normlift/lattice.hpp"
#include "normlift/lifting.hpp"
#include "normlift/lossless.hpp"
#include "normlift/sl2split.hpp"
#include "normlift/transfer.hpp"

using namespace normlift;

namespace {

SubgroupLattice lat(const std::string& s) { return enumerate_subgroups(build_group(GroupSpec::parse(s))); }

void BM_LatticeEnumeration(benchmark::State& state, const std::string& spec) {
    const Group g = build_group(GroupSpec::parse(spec));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_subgroups(g).size());
}

void BM_GEnumeration(benchmark::State& state, const std::string& spec, EnumerationStrategy strategy) {
    const auto l = lat(spec);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_g_transfer_systems(l, strategy).size());
}

void BM_CatEnumeration(benchmark::State& state, const std::string& spec) {
    const auto l = lat(spec);
    const auto cp = quotient_poset(l);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_cat_transfer_systems(cp.poset).size());
}

void BM_LiftReport(benchmark::State& state, const std::string& spec) {
    const auto l = lat(spec);
    const auto cp = quotient_poset(l);
    for (auto _ : state) benchmark::DoNotOptimize(lift_report(l, cp).liftable);
}

void BM_GClosureFull(benchmark::State& state) {
    static const Sl2Frame f = build_frame(13);
    const SubgroupLattice& l = *f.lattice;
    std::vector<Arrow> seed;
    for (const auto& orbit : arrow_orbits(l)) seed.push_back(orbit.front());
    for (auto _ : state) benchmark::DoNotOptimize(g_closure(l, seed).arrow_count());
}

void BM_Lossless(benchmark::State& state, const std::string& spec) {
    const auto l = lat(spec);
    for (auto _ : state) benchmark::DoNotOptimize(is_lossless(l).lossless);
}

void BM_Frame(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_frame(static_cast<unsigned>(state.range(0))).checks_ok());
}

void BM_ConjectureHarness(benchmark::State& state) {
    static const Sl2Frame f = build_frame(13);
    for (auto _ : state) benchmark::DoNotOptimize(conjecture_check(f, static_cast<std::size_t>(state.range(0)), 1).passed);
}

} // namespace

BENCHMARK_CAPTURE(BM_LatticeEnumeration, C2xA4, std::string("prod(C2,A4)"));
BENCHMARK_CAPTURE(BM_LatticeEnumeration, AGL1_7, std::string("AGL1(7)"));
BENCHMARK_CAPTURE(BM_LatticeEnumeration, SL2_13, std::string("SL2(13)"))->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GEnumeration, D9_next_closure, std::string("D9"), EnumerationStrategy::next_closure);
BENCHMARK_CAPTURE(BM_GEnumeration, AGL1_7_next_closure, std::string("AGL1(7)"), EnumerationStrategy::next_closure)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GEnumeration, D9_subset_closure, std::string("D9"), EnumerationStrategy::subset_closure);
BENCHMARK_CAPTURE(BM_CatEnumeration, AGL1_7, std::string("AGL1(7)"));
BENCHMARK_CAPTURE(BM_LiftReport, AGL1_7, std::string("AGL1(7)"))->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GClosureFull)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Lossless, C2xA4, std::string("prod(C2,A4)"));
BENCHMARK_CAPTURE(BM_Lossless, SL2_7, std::string("SL2(7)"))->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Frame)->Arg(5)->Arg(13)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConjectureHarness)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
