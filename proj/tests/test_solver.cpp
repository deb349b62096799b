#include "support.h"

#include <gtest/gtest.h>

using namespace tempo;
using namespace tempo::test;

namespace {

struct Horizon {
	std::shared_ptr<const TemporalProgram> program;
	Step                                   n = 0;
	NogoodSet                              base;
	std::unique_ptr<Solver>                solver;
	std::optional<GroundProgram>           gen;
	std::optional<UnfoundedSetChecker>     checker;
};

/// Ψ[1..n] loaded with origins [s,s], plus a loop post-check for non-tight programs.
std::unique_ptr<Horizon> horizon(std::shared_ptr<const TemporalProgram> p, Step n, SolverOptions opts = {}) {
	auto h = std::make_unique<Horizon>();
	h->program = p;
	h->n = n;
	h->solver = std::make_unique<Solver>(horizon_domain(*p, n), opts);
	for (const auto& [d, s] : instantiate_nogoods_with_origin(temporal_nogoods(p), 1, n)) {
		h->base.insert(d);
		h->solver->add_nogood(d, NogoodKind::base, Interval{s, s});
	}
	h->gen.emplace(generator_program(p, n));
	if (!is_tight(*h->gen)) {
		h->checker.emplace(*h->gen);
		auto* hp = h.get();
		h->solver->set_post_check([hp](const std::function<bool(const Term&)>& value) {
			std::vector<CheckedNogood> out;
			for (auto& d : hp->checker->loop_nogoods(value)) {
				Step top = 0;
				for (const auto& l : d) top = std::max(top, l.term.step);
				out.push_back({std::move(d), Interval{top, top}});
			}
			return out;
		});
	}
	return h;
}

NogoodSet with_loops(const Horizon& h) {
	NogoodSet out = h.base;
	for (const auto& c : h.solver->loop_nogoods()) out.insert(c.nogood);
	return out;
}

std::vector<SignedTerm> random_assumptions(std::mt19937_64& rng, const TemporalProgram& p, Step n,
                                          bool every_step = false) {
	std::vector<SignedTerm> out;
	std::vector<Step> steps{0, n};
	if (every_step)
		for (Step s = 1; s < n; ++s) steps.push_back(s);
	for (AtomId a = 0; a < p.atom_count(); ++a)
		for (Step s : steps) {
			auto r = std::uniform_int_distribution<int>(0, 3)(rng);
			if (r < 2) out.push_back({Term::atom(a, s), r == 0});
		}
	return out;
}

/// Random temporal programs solved under random assumptions; returns horizons that learned something.
std::vector<std::unique_ptr<Horizon>> learning_runs(std::uint64_t seed, int count) {
	std::mt19937_64 rng(seed);
	std::vector<std::unique_ptr<Horizon>> out;
	while (static_cast<int>(out.size()) < count) {
		auto p = random_temporal_program(rng, {4, 8, 3});
		Step n = std::uniform_int_distribution<Step>(2, 4)(rng);
		auto h = horizon(p, n, SolverOptions{.seed = rng()});
		for (int k = 0; k < 4; ++k) h->solver->solve(random_assumptions(rng, *p, n));
		if (!h->solver->learned().empty()) out.push_back(std::move(h));
	}
	return out;
}

bool in_window(const Nogood& d, const NogoodSet& psi, Interval iv) {
	if (iv.lo < 1) return false;
	return instantiate_nogoods(psi, iv.lo, iv.hi).count(d) > 0;
}

} // namespace

TEST(Solver, EmptyNogoodSetIsSat) {
	Solver s({Term::atom(0, 0)});
	EXPECT_EQ(s.solve(), SolveStatus::sat);
	bool complete = false;
	EXPECT_EQ(s.enumerate({}, {Term::atom(0, 0)}, 10, &complete).size(), 2u);
	EXPECT_TRUE(complete);
}

TEST(Solver, UnsatInputEnumeratesNothing) {
	auto a = Term::atom(0, 0);
	Solver s({a});
	s.add_nogood(Nogood{SignedTerm::T(a)});
	s.add_nogood(Nogood{SignedTerm::F(a)});
	EXPECT_EQ(s.solve(), SolveStatus::unsat);
	bool complete = false;
	EXPECT_TRUE(s.enumerate({}, {a}, 10, &complete).empty());
	EXPECT_TRUE(complete);
}

TEST(Solver, DomainErrors) {
	Solver s({Term::atom(0, 0)});
	EXPECT_THROW(s.add_nogood(Nogood{SignedTerm::T(Term::atom(1, 0))}), Error);
	EXPECT_THROW(s.solve({SignedTerm::T(Term::atom(0, 3))}), Error);
}

TEST(Solver, RunningExampleSolveAndAssumptions) {
	auto p = pi1();
	auto h = horizon(p, 4);
	ASSERT_EQ(h->solver->solve(), SolveStatus::sat);
	std::set<Term> x;
	for (const auto& t : h->solver->model_true_terms())
		if (t.is_atom()) x.insert(t);
	EXPECT_TRUE(oracle_solutions(p, {}, {}, 4).count(x));
	// Every solution contains a@1.
	EXPECT_EQ(h->solver->solve({ng(*p, "{F a@1}").literals()[0]}), SolveStatus::unsat);
	EXPECT_EQ(h->solver->solve(), SolveStatus::sat);
}

TEST(Solver, EnumerationCounts) {
	auto p = pi1();
	auto tau = transition_program(p);
	Solver s(solving_domain(tau));
	for (const auto& d : program_nogoods(tau)) s.add_nogood(d);
	std::vector<Term> proj;
	for (std::uint32_t a = 0; a < tau.atoms().size(); ++a) proj.push_back(tau.atom_term(a));
	bool complete = false;
	EXPECT_EQ(s.enumerate({}, proj, 1000, &complete).size(), 19u);
	EXPECT_TRUE(complete);
	EXPECT_EQ(solver_stable_models(generator_program(p, 4)).size(), 3u);

	auto h = horizon(p, 4);
	std::vector<Term> atoms;
	for (const auto& t : horizon_domain(*p, 4))
		if (t.is_atom()) atoms.push_back(t);
	EXPECT_EQ(h->solver->enumerate({}, atoms, 2, &complete).size(), 2u);
	EXPECT_FALSE(complete);
}

TEST(Solver, AgreesWithOracleOn500RandomPrograms) {
	std::mt19937_64 rng(4242);
	std::size_t non_tight = 0;
	for (int it = 0; it < 500; ++it) {
		auto gp = random_ground_program(rng);
		non_tight += !is_tight(gp);
		EXPECT_EQ(solver_stable_models(gp), oracle::brute_force_stable_models(gp)) << "program " << it;
	}
	EXPECT_GE(non_tight, 100u);
	EXPECT_LE(non_tight, 250u);
}

TEST(Solver, ExampleTraceLearnsUnitWithInterval) {
	auto p = pi1();
	auto c = load_golden("pi1");
	auto want = expected(c, "learned_trace");
	SolverOptions opts;
	opts.initial_decisions = ng(*p, "{" + want.at("decision").get<std::string>() + "}").literals();
	auto h = horizon(p, 4, opts);
	ASSERT_EQ(h->solver->solve(), SolveStatus::sat);
	auto learned = h->solver->learned();
	auto it = std::find_if(learned.begin(), learned.end(), [&](const LearnedNogood& l) {
		return l.nogood == ng(*p, want.at("learned").get<std::string>());
	});
	ASSERT_NE(it, learned.end());
	ASSERT_TRUE(it->proof_interval.has_value());
	EXPECT_EQ(it->proof_interval->lo, want.at("proof_interval")[0].get<Step>());
	EXPECT_EQ(it->proof_interval->hi, want.at("proof_interval")[1].get<Step>());
	EXPECT_EQ(it->size, 1u);
	EXPECT_EQ(it->degree, 0);

	auto proof = h->solver->proof(it->record);
	std::set<Nogood> premises;
	for (const auto& s : proof)
		if (!s.from) premises.insert(s.nogood);
	std::set<Nogood> want_premises;
	for (const auto& s : want.at("premises")) want_premises.insert(ng(*p, s.get<std::string>()));
	EXPECT_EQ(premises, want_premises);
	EXPECT_TRUE(oracle::verify_resolution_proof(proof, instantiate_nogoods(temporal_nogoods(p), 2, 4)).ok);
}

TEST(Solver, LearnedNogoodsAreEntailed) {
	for (const auto& h : learning_runs(77, 60)) {
		auto base = with_loops(*h);
		for (const auto& l : h->solver->learned())
			EXPECT_TRUE(entails(base, l.nogood)) << format_program(*h->program);
	}
}

TEST(Solver, LearnedNogoodsIgnoreAssumptions) {
	// Learned under assumptions, yet entailed by the assumption-free nogoods alone.
	for (const auto& h : learning_runs(78, 40)) {
		auto base = with_loops(*h);
		oracle::EntailmentQuery q{base, {}, {}};
		for (const auto& l : h->solver->learned()) {
			q.query = l.nogood;
			EXPECT_TRUE(oracle::entails(q));
		}
	}
}

TEST(Solver, ProofIntervalsReplay) {
	std::size_t shifted_checks = 0;
	for (const auto& h : learning_runs(79, 60)) {
		auto psi = temporal_nogoods(h->program);
		auto base = with_loops(*h);
		for (const auto& l : h->solver->learned()) {
			ASSERT_TRUE(l.proof_interval.has_value());
			auto iv = *l.proof_interval;
			EXPECT_GE(iv.lo, 1);
			EXPECT_LE(iv.hi, h->n);
			auto proof = h->solver->proof(l.record);
			ASSERT_FALSE(proof.empty());
			EXPECT_EQ(proof.back().nogood, l.nogood);
			EXPECT_TRUE(oracle::verify_resolution_proof(proof, base).ok);

			bool only_psi = true;
			for (const auto& s : proof) {
				if (s.from) continue;
				if (h->base.count(s.nogood)) EXPECT_TRUE(in_window(s.nogood, psi, iv));
				else only_psi = false; // loop nogood
			}
			if (!only_psi) continue;
			// Replays shifted to every other window in a longer horizon.
			const Step far = h->n + 2;
			for (Step t = 1 - iv.lo; iv.hi + t <= far; ++t) {
				auto window = instantiate_nogoods(psi, iv.lo + t, iv.hi + t);
				auto moved = oracle::shift_proof(proof, t);
				EXPECT_TRUE(oracle::verify_resolution_proof(moved, window).ok);
				EXPECT_EQ(moved.back().nogood, shift_nogood(l.nogood, t));
				++shifted_checks;
			}
		}
	}
	EXPECT_GT(shifted_checks, 100u);
}

TEST(Solver, LambdaStepCoversProofInterval) {
	// After tr* and trb only dynamic constraints carry λ, and nothing resolves Tλ away.
	std::mt19937_64 rng(81);
	std::size_t checked = 0, spanning = 0;
	for (int it = 0; it < 200; ++it) {
		auto src = it < 40 ? (it % 2 ? pi1() : pi2()) : random_temporal_program(rng, {4, 8, 3});
		auto tr = pnf_trb_translate(*src);
		SolverOptions opts{.seed = rng()};
		if (it < 40) {
			auto a = std::uniform_int_distribution<AtomId>(0, static_cast<AtomId>(src->atom_count() - 1))(rng);
			opts.initial_decisions = {{Term::atom(a, std::uniform_int_distribution<Step>(1, 4)(rng)), true}};
		}
		auto h = horizon(tr.program, 4, opts);
		if (h->checker) continue; // lazily found loop nogoods do not cover the shifted windows
		if (it < 40) h->solver->solve(tr.schedule(4));
		else
			for (int k = 0; k < 8; ++k) h->solver->solve(random_assumptions(rng, *tr.program, 4, true));
		const auto& base = h->base;
		GeneralizationPolicy pol{PolicyMode::trb_step, 4, std::nullopt, tr.lambda, {}};
		for (const auto& l : h->solver->learned()) {
			if (l.nogood.empty()) continue;
			auto ls = lambda_step(l.nogood, *tr.lambda);
			EXPECT_LE(*ls.begin(), l.proof_interval->lo);
			EXPECT_GE(*ls.rbegin(), l.proof_interval->hi);
			spanning += l.proof_interval->hi > l.proof_interval->lo;
			for (const auto& g : generalize(l.nogood, pol)) EXPECT_TRUE(entails(base, g));
			++checked;
		}
	}
	EXPECT_GT(checked, 50u);
	EXPECT_GT(spanning, 5u);
}

TEST(Solver, PropagationReachesFixpoint) {
	std::mt19937_64 rng(83);
	std::size_t calls = 0;
	for (int it = 0; it < 40; ++it) {
		auto p = random_temporal_program(rng, {4, 8, 3});
		auto h = horizon(p, 3);
		h->solver->set_propagation_observer([&](const Solver& s) {
			++calls;
			EXPECT_FALSE(s.has_pending_propagation());
		});
		h->solver->solve(random_assumptions(rng, *p, 3));
	}
	EXPECT_GT(calls, 40u);
}

TEST(Solver, ExportFilterAndRank) {
	auto runs = learning_runs(85, 40);
	std::size_t ranked = 0;
	for (const auto& h : runs) {
		const auto& s = *h->solver;
		EXPECT_TRUE(s.export_learned({0, 10}, RankKey::lbd, 100).empty());
		auto all = s.export_learned({}, RankKey::lbd, 1000);
		for (const auto& l : all) {
			EXPECT_LE(l.size, 50u);
			EXPECT_LE(l.degree, 10);
			EXPECT_EQ(l.size, l.nogood.size());
			EXPECT_EQ(l.degree, nogood_degree(l.nogood));
			EXPECT_GE(l.lbd, 1u);
		}
		for (std::size_t i = 1; i < all.size(); ++i) {
			EXPECT_LE(all[i - 1].lbd, all[i].lbd);
			if (all[i - 1].lbd == all[i].lbd) EXPECT_LE(all[i - 1].size, all[i].size);
		}
		auto by_size = s.export_learned({}, RankKey::size, 1000);
		for (std::size_t i = 1; i < by_size.size(); ++i) EXPECT_LE(by_size[i - 1].size, by_size[i].size);
		if (all.size() >= 2) {
			auto top = s.export_learned({}, RankKey::lbd, 1);
			ASSERT_EQ(top.size(), 1u);
			std::uint32_t min_lbd = UINT32_MAX;
			for (const auto& l : all) min_lbd = std::min(min_lbd, l.lbd);
			EXPECT_EQ(top[0].lbd, min_lbd);
			++ranked;
		}
		auto small = s.export_learned({2, 10}, RankKey::size, 1000);
		for (const auto& l : small) EXPECT_LE(l.size, 2u);
		auto flat = s.export_learned({50, 0}, RankKey::size, 1000);
		for (const auto& l : flat) EXPECT_EQ(l.degree, 0);
	}
	EXPECT_GT(ranked, 5u);
}

TEST(Solver, BlockingAndInjectedDerivationsAreNotExported) {
	auto p = pi1();
	auto h = horizon(p, 4);
	std::vector<Term> atoms;
	for (const auto& t : horizon_domain(*p, 4))
		if (t.is_atom()) atoms.push_back(t);
	bool complete = false;
	EXPECT_EQ(h->solver->enumerate({}, atoms, 100, &complete).size(), 3u);
	for (const auto& l : h->solver->learned()) EXPECT_TRUE(entails(h->base, l.nogood));
	for (std::size_t r = 0; r < h->solver->record_count(); ++r)
		if (h->solver->record_kind(r) == NogoodKind::blocking) EXPECT_FALSE(entails(h->base, h->solver->record_nogood(r)));

	// An injected nogood that cuts a solution must not leak into exports.
	auto g = horizon(p, 4);
	g->solver->add_nogood(ng(*p, "{T b@3}"), NogoodKind::injected);
	g->solver->enumerate({}, atoms, 100, &complete);
	for (const auto& l : g->solver->learned()) EXPECT_TRUE(entails(g->base, l.nogood));
}

TEST(Solver, DeterministicForFixedSeed) {
	auto run = [](std::uint64_t seed, bool luby) {
		std::mt19937_64 rng(91);
		std::vector<std::string> out;
		for (int it = 0; it < 20; ++it) {
			auto p = random_temporal_program(rng, {4, 8, 3});
			auto h = horizon(p, 3, SolverOptions{.seed = seed, .luby_restarts = luby, .restart_unit = 4});
			auto f = TermFormatter::timed(*p);
			auto st = h->solver->solve(random_assumptions(rng, *p, 3));
			out.push_back(to_string(st) + " " + h->solver->stats().to_string());
			for (const auto& l : h->solver->learned()) out.push_back(f.nogood(l.nogood));
		}
		return out;
	};
	EXPECT_EQ(run(0, false), run(0, false));
	EXPECT_EQ(run(5, true), run(5, true));
}

TEST(Solver, StatsFormat) {
	auto h = horizon(pi1(), 4);
	h->solver->solve();
	auto text = h->solver->stats().to_string();
	for (auto key : {"conflicts=", "decisions=", "propagations=", "learned=", "restarts="})
		EXPECT_NE(text.find(key), std::string::npos) << key;
}

TEST(Solver, BudgetsStopWithUnknown) {
	// Pigeonhole: 5 pigeons, 4 holes; needs many conflicts.
	std::vector<Term> dom;
	for (std::uint32_t i = 0; i < 20; ++i) dom.push_back(Term::atom(i, 0));
	auto x = [](int p, int h) { return Term::atom(static_cast<AtomId>(p * 4 + h), 0); };
	auto build = [&](SolverOptions o) {
		auto s = std::make_unique<Solver>(dom, o);
		for (int p = 0; p < 5; ++p) {
			std::vector<SignedTerm> none;
			for (int h = 0; h < 4; ++h) none.push_back(SignedTerm::F(x(p, h)));
			s->add_nogood(Nogood(none));
		}
		for (int h = 0; h < 4; ++h)
			for (int p = 0; p < 5; ++p)
				for (int q = p + 1; q < 5; ++q) s->add_nogood(Nogood{SignedTerm::T(x(p, h)), SignedTerm::T(x(q, h))});
		return s;
	};
	EXPECT_EQ(build({})->solve(), SolveStatus::unsat);
	EXPECT_EQ(build({.conflict_budget = 3})->solve(), SolveStatus::unknown);
	EXPECT_EQ(build({.learned_budget = 2})->solve(), SolveStatus::unknown);
}
