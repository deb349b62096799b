#include "tempo/fixtures.h"
#include "tempo/graph.h"
#include "tempo/harness.h"
#include "tempo/oracle.h"
#include "tempo/planning.h"

#include <benchmark/benchmark.h>

using namespace tempo;

namespace {

const CompiledPlanning& blocks() {
	static const CompiledPlanning c = [] {
		auto g = load_golden("blocks3");
		return compile_planning(parse_domain(*g.domain_text), parse_instance(*g.instance_text));
	}();
	return c;
}

std::shared_ptr<const TemporalProgram> running_example() {
	static auto p = load_golden("pi1").program;
	return p;
}

void BM_InstantiateNogoods(benchmark::State& st) {
	auto psi = temporal_nogoods(blocks().program);
	const auto n = static_cast<Step>(st.range(0));
	for (auto _ : st) benchmark::DoNotOptimize(instantiate_nogoods(psi, 1, n));
}
BENCHMARK(BM_InstantiateNogoods)->Arg(5)->Arg(10)->Arg(20);

void BM_BlocksSingleShot(benchmark::State& st) {
	auto h = HarnessProblem::plain({blocks().program, blocks().init(), blocks().goal});
	RunConfig cfg;
	cfg.horizon = static_cast<Step>(st.range(0));
	cfg.top_k = 0;
	for (auto _ : st) benchmark::DoNotOptimize(solve_single_shot(h, cfg).status);
}
BENCHMARK(BM_BlocksSingleShot)->Arg(5)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

// Multi-shot over horizons 2..8; range(0) is top_k, 0 being the baseline without injection.
void BM_BlocksMultiShot(benchmark::State& st) {
	auto h = HarnessProblem::for_policy({blocks().program, blocks().init(), blocks().goal}, PolicyMode::lambda_all);
	RunConfig cfg;
	cfg.mode = RunMode::multi_shot;
	cfg.start = 2;
	cfg.stride = 1;
	cfg.max = 8;
	cfg.policy = PolicyMode::lambda_all;
	cfg.top_k = static_cast<std::size_t>(st.range(0));
	std::uint64_t conflicts = 0;
	for (auto _ : st) {
		auto r = solve_multi_shot(h, cfg);
		conflicts = 0;
		for (const auto& rec : r.horizons) conflicts += rec.stats.conflicts;
	}
	st.counters["conflicts"] = static_cast<double>(conflicts);
}
BENCHMARK(BM_BlocksMultiShot)->Arg(0)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_TransitionGraph(benchmark::State& st) {
	auto p = running_example();
	for (auto _ : st) benchmark::DoNotOptimize(build_graph(p).edges.size());
}
BENCHMARK(BM_TransitionGraph);

void BM_Entailment(benchmark::State& st) {
	auto p = running_example();
	const auto n = static_cast<Step>(st.range(0));
	auto base = instantiate_nogoods(temporal_nogoods(p), 1, n);
	Nogood q{SignedTerm::T(Term::atom(*p->atoms().find("a"), 2))};
	for (auto _ : st) benchmark::DoNotOptimize(oracle::entails({base, {}, q}));
}
BENCHMARK(BM_Entailment)->Arg(4)->Arg(8)->Arg(16);

} // namespace

BENCHMARK_MAIN();
