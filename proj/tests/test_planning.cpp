#include "support.h"

#include <gtest/gtest.h>

using namespace tempo;
using namespace tempo::test;

namespace {

struct Blocks {
	GoldenCase       golden = load_golden("blocks3");
	CompiledPlanning compiled =
	    compile_planning(parse_domain(*golden.domain_text), parse_instance(*golden.instance_text));
};

const Blocks& blocks() {
	static const Blocks b;
	return b;
}

// The blocks world over `names`, in the text format of the fixture domain.
std::string blocks_domain(const std::vector<std::string>& names, bool pairs) {
	std::string out;
	auto action = [&](const std::string& name, const std::string& pre, const std::string& add, const std::string& del) {
		out += "action " + name + "\npre: " + pre + "\nadd: " + add + "\ndel: " + del + "\n";
	};
	for (const auto& x : names) {
		action("pick_up(" + x + ")", "handempty, clear(" + x + "), ontable(" + x + ")", "holding(" + x + ")",
		       "handempty, clear(" + x + "), ontable(" + x + ")");
		action("put_down(" + x + ")", "holding(" + x + ")", "clear(" + x + "), handempty, ontable(" + x + ")",
		       "holding(" + x + ")");
		if (!pairs) continue;
		for (const auto& y : names) {
			auto on = "on(" + x + "," + y + ")";
			action("stack(" + x + "," + y + ")", "holding(" + x + "), clear(" + y + ")",
			       "clear(" + x + "), handempty, " + on, "holding(" + x + "), clear(" + y + ")");
			action("unstack(" + x + "," + y + ")", "handempty, clear(" + x + "), " + on,
			       "clear(" + y + "), holding(" + x + ")", on + ", handempty, clear(" + x + ")");
		}
	}
	return out;
}

HarnessProblem problem_of(const CompiledPlanning& c) { return HarnessProblem::plain({c.program, c.init(), c.goal}); }

SingleShotResult solve_at(const CompiledPlanning& c, Step n) {
	RunConfig cfg;
	cfg.horizon = n;
	cfg.top_k = 0;
	return solve_single_shot(problem_of(c), cfg);
}

State fluents_only(const State& s, const CompiledPlanning& c) {
	State out;
	for (auto a : s)
		if (c.fluent_of.count(a)) out.push_back(a);
	return out;
}

} // namespace

TEST(ParseDomain, ActionsAndFluents) {
	auto d = parse_domain("% comment\naction go\npre: at(x)\nadd: at(y)\ndel: at(x)\n\naction stay\npre: at(y)\n");
	ASSERT_EQ(d.actions.size(), 2u);
	EXPECT_EQ(d.actions[0].name, "go");
	EXPECT_EQ(d.actions[0].add, std::vector<std::string>{"at(y)"});
	EXPECT_TRUE(d.actions[1].add.empty());
	EXPECT_EQ(d.fluents(), (std::vector<std::string>{"at(x)", "at(y)"}));
}

TEST(ParseDomain, Errors) {
	EXPECT_THROW(parse_domain("pre: f\n"), ParseError);
	EXPECT_THROW(parse_domain("action go\nwhen: f\n"), ParseError);
	EXPECT_THROW(parse_domain("action go\naction go\n"), Error);
	EXPECT_THROW(parse_domain("action 1go\n"), ParseError);
	EXPECT_THROW(parse_instance("start: f\n"), ParseError);
}

TEST(Compile, BlocksCounts) {
	const auto& b = blocks();
	auto want = [&](const char* key) { return expected(b.golden, key); };
	EXPECT_EQ(b.compiled.occ.size(), want("action_count").get<std::size_t>());
	EXPECT_EQ(b.compiled.holds.size(), want("fluent_count").get<std::size_t>());
	EXPECT_EQ(is_tight(generator_program(b.compiled.program, 3)), want("tight").get<bool>());
	EXPECT_EQ(b.compiled.program->atom_count(), 24u + 19u);
	EXPECT_EQ(b.compiled.i1.size(), 24u);
	EXPECT_EQ(b.compiled.i2.size(), 19u);
}

TEST(Compile, FixtureProgramMatches) {
	const auto& b = blocks();
	EXPECT_EQ(format_program(*b.compiled.program), format_program(*b.golden.program));
	// Compare by name: the fixture program may number its atoms differently.
	auto named = [](const StateAssignment& a, const TemporalProgram& p) {
		std::set<std::string> out;
		for (auto [id, v] : a.values()) out.insert((v ? "T " : "F ") + p.atoms().name(id));
		return out;
	};
	EXPECT_EQ(named(b.compiled.init(), *b.compiled.program), named(b.golden.init, *b.golden.program));
	EXPECT_EQ(named(b.compiled.goal, *b.compiled.program), named(b.golden.goal, *b.golden.program));
}

TEST(Compile, EmptyProblemRefused) {
	EXPECT_THROW(compile_planning(PlanningDomain{}, PlanningInstance{}), Error);
}

TEST(Compile, InstanceOnlyFluentsAreInert) {
	// No actions: the goal holds at every horizon iff it holds initially.
	auto c = compile_planning(PlanningDomain{}, parse_instance("init: f\ngoal: f\n"));
	EXPECT_EQ(c.program->atom_count(), 1u);
	for (Step n = 1; n <= 4; ++n) {
		auto r = solve_at(c, n);
		EXPECT_EQ(r.status, SolveStatus::sat) << n;
		ASSERT_EQ(r.solutions.size(), 1u);
		EXPECT_EQ(decode_plan(c, r.solutions[0], n), std::vector<std::string>(n, "noop"));
	}
	auto unreachable = compile_planning(PlanningDomain{}, parse_instance("init: f\ngoal: g\n"));
	EXPECT_EQ(solve_at(unreachable, 3).status, SolveStatus::unsat);
}

TEST(Blocks, ShortestPlanHasSixSteps) {
	const auto& b = blocks();
	auto below = expected(b.golden, "unsat_below").get<Step>();
	EXPECT_EQ(solve_at(b.compiled, below - 1).status, SolveStatus::unsat);
	auto r = solve_at(b.compiled, below);
	ASSERT_EQ(r.status, SolveStatus::sat);
	ASSERT_EQ(r.solutions.size(), 1u);
	EXPECT_EQ(decode_plan(b.compiled, r.solutions[0], below),
	          expected(b.golden, "plan_n6").get<std::vector<std::string>>());
}

TEST(Blocks, LongerHorizonsIdle) {
	const auto& b = blocks();
	auto r = solve_at(b.compiled, 8);
	ASSERT_EQ(r.status, SolveStatus::sat);
	auto plan = decode_plan(b.compiled, r.solutions[0], 8);
	EXPECT_EQ(std::count(plan.begin(), plan.end(), "noop"), 2);
}

TEST(Blocks, PlansAreExecutable) {
	// Replays every plan found at n=7 against the domain semantics.
	const auto& b = blocks();
	auto d = parse_domain(*b.golden.domain_text);
	auto inst = parse_instance(*b.golden.instance_text);
	RunConfig cfg;
	cfg.horizon = 7;
	cfg.top_k = 0;
	cfg.enumerate = 200;
	auto r = solve_single_shot(problem_of(b.compiled), cfg);
	ASSERT_FALSE(r.solutions.empty());
	for (const auto& x : r.solutions) {
		std::set<std::string> s(inst.init.begin(), inst.init.end());
		for (const auto& name : decode_plan(b.compiled, x, 7)) {
			if (name == "noop") continue;
			auto a = std::find_if(d.actions.begin(), d.actions.end(), [&](const Action& a) { return a.name == name; });
			ASSERT_NE(a, d.actions.end());
			for (const auto& f : a->pre) ASSERT_TRUE(s.count(f)) << name << " needs " << f;
			for (const auto& f : a->del) s.erase(f);
			for (const auto& f : a->add) s.insert(f);
		}
		for (const auto& g : inst.goal) EXPECT_TRUE(s.count(g)) << g;
		// The final state of the solution matches the replay.
		for (const auto& [f, id] : b.compiled.holds) EXPECT_EQ(x.count(Term::atom(id, 7)) > 0, s.count(f) > 0) << f;
	}
}

TEST(DecodePlan, TwoActionsAtOneStepThrow) {
	const auto& c = blocks().compiled;
	std::set<Term> x{Term::atom(c.occ.at("pick_up(a)"), 1), Term::atom(c.occ.at("pick_up(b)"), 1)};
	EXPECT_THROW(decode_plan(c, x, 1), Error);
	EXPECT_EQ(decode_plan(c, {Term::atom(c.occ.at("pick_up(a)"), 2)}, 2),
	          (std::vector<std::string>{"noop", "pick_up(a)"}));
}

TEST(Cyclicity, OneBlockDomainWrtNoActionStart) {
	auto c = compile_planning(parse_domain(blocks_domain({"a"}, false)),
	                          parse_instance("init: clear(a), handempty, ontable(a)\ngoal: holding(a)\n"));
	auto g = build_graph(c.program);
	ASSERT_TRUE(g.complete);
	auto cert = certify_cyclic(c.program, c.i1);
	EXPECT_TRUE(cert.cyclic);
	ASSERT_TRUE(cert.report.wrt_init.has_value());
	EXPECT_TRUE(cert.report.wrt_init->condition_i);
	EXPECT_TRUE(cert.report.wrt_init->condition_ii);
	// Initial states omit every action.
	for (const auto& s : cert.report.wrt_init->initial)
		for (const auto& [id, _] : c.action_of) EXPECT_EQ(std::count(s.begin(), s.end(), id), 0);

	std::map<State, std::set<State>> succ;
	for (const auto& [x, y] : g.edges) succ[x].insert(y);
	for (const auto& x : g.nodes) {
		// Idling keeps the fluents; the actions of a state do not constrain its successors.
		EXPECT_TRUE(succ[x].count(fluents_only(x, c))) << format_state(x, c.program->atoms());
		EXPECT_EQ(succ[x], succ[fluents_only(x, c)]) << format_state(x, c.program->atoms());
	}
}

TEST(Cyclicity, BlocksNotCyclicWithoutStartCondition) {
	// A state with two actions is never entered, so it is a source of the full graph.
	auto c = compile_planning(parse_domain(blocks_domain({"a"}, false)),
	                          parse_instance("init: clear(a), handempty, ontable(a)\ngoal: holding(a)\n"));
	auto g = build_graph(c.program);
	auto r = is_cyclic(g);
	EXPECT_FALSE(r.cyclic);
	State both{c.occ.at("pick_up(a)"), c.occ.at("put_down(a)")};
	std::sort(both.begin(), both.end());
	EXPECT_TRUE(r.sources.count(both));
}
