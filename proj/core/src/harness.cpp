#include "tempo/harness.h"

#include <algorithm>

namespace tempo {

HarnessProblem HarnessProblem::plain(TemporalProblem p) { return translated(std::move(p), TranslationKind::none); }

HarnessProblem HarnessProblem::translated(TemporalProblem p, TranslationKind kind) {
	if (!p.program) throw Error("temporal problem without a program");
	HarnessProblem h;
	h.translation = translate(*p.program, kind);
	if (kind == TranslationKind::none) h.translation.program = p.program;
	h.source = std::move(p);
	return h;
}

HarnessProblem HarnessProblem::for_policy(TemporalProblem p, PolicyMode mode) {
	switch (mode) {
	case PolicyMode::lambda_all:
	case PolicyMode::lambda_to_original: return translated(std::move(p), TranslationKind::lambda);
	case PolicyMode::trb_step:
	case PolicyMode::trb_step_original: return translated(std::move(p), TranslationKind::pnf_trb);
	default: return plain(std::move(p));
	}
}

std::vector<SignedTerm> HarnessProblem::assumptions(Step n) const {
	auto out = source.init.at(0);
	for (const auto& l : source.final.at(n)) out.push_back(l);
	for (const auto& l : translation.schedule(n)) out.push_back(l);
	return out;
}

std::vector<Term> HarnessProblem::projection(Step n) const {
	std::vector<Term> out;
	for (Step i = 0; i <= n; ++i)
		for (AtomId a = 0; a < source.program->atom_count(); ++a) out.push_back(Term::atom(a, i));
	return out;
}

CyclicityCertificate certify_cyclic(std::shared_ptr<const TemporalProgram> p, const StateAssignment& init,
                                    std::size_t model_cap) {
	auto g = build_graph(std::move(p), model_cap);
	CyclicityCertificate c;
	c.init = init;
	c.report = is_cyclic_wrt(g, init);
	c.cyclic = c.report.cyclic;
	return c;
}

namespace {

struct Horizon {
	std::vector<Term>                    domain;
	std::map<Nogood, Step>               psi;
	std::shared_ptr<const GroundProgram> gen;
	std::shared_ptr<UnfoundedSetChecker> checker;
};

Horizon build_horizon(const HarnessProblem& problem, Step n) {
	Horizon h;
	auto p = problem.solving_program_ptr();
	h.domain = horizon_domain(*p, n);
	h.psi = instantiate_nogoods_with_origin(temporal_nogoods(p), 1, n);
	auto gen = std::make_shared<const GroundProgram>(generator_program(p, n));
	if (!is_tight(*gen)) {
		h.gen = gen;
		h.checker = std::make_shared<UnfoundedSetChecker>(*h.gen);
	}
	return h;
}

PostCheck loop_check(std::shared_ptr<UnfoundedSetChecker> checker) {
	return [checker](const std::function<bool(const Term&)>& value) {
		std::vector<CheckedNogood> out;
		for (auto& n : checker->loop_nogoods(value)) {
			Step i = n.empty() ? 0 : *nogood_steps(n).rbegin();
			out.push_back({std::move(n), Interval{i, i}});
		}
		return out;
	};
}

bool is_original_mode(PolicyMode m) {
	return m == PolicyMode::lambda_to_original || m == PolicyMode::trb_step_original;
}

} // namespace

NogoodSet horizon_nogoods(const HarnessProblem& problem, Step n) {
	return instantiate_nogoods(temporal_nogoods(problem.solving_program_ptr()), 1, n);
}

SingleShotResult solve_single_shot(const HarnessProblem& problem, const RunConfig& cfg, const NogoodSet& injected) {
	const Step n = cfg.horizon;
	if (n < 1) throw Error("horizon must be at least 1");
	auto h = build_horizon(problem, n);
	std::set<Term> in_domain(h.domain.begin(), h.domain.end());
	for (const auto& d : injected)
		for (const auto& l : d) {
			if (l.term.step < 0 || l.term.step > n)
				throw Error("injected nogood mentions step " + std::to_string(l.term.step) + " outside [0," +
				            std::to_string(n) + "]");
			if (!in_domain.count(l.term)) throw Error("injected nogood mentions a term outside the horizon domain");
		}

	Solver s(h.domain, cfg.solver);
	for (const auto& [d, step] : h.psi) s.add_nogood(d, NogoodKind::base, Interval{step, step});
	for (const auto& d : injected) s.add_nogood(d, NogoodKind::injected);
	if (h.checker) s.set_post_check(loop_check(h.checker));

	SingleShotResult r;
	r.horizon = n;
	r.injected = injected.size();
	auto assumptions = problem.assumptions(n);
	auto proj = problem.projection(n);
	if (cfg.enumerate > 0) {
		auto models = s.enumerate(assumptions, proj, cfg.enumerate, &r.complete);
		for (const auto& m : models) {
			std::set<Term> t;
			for (const auto& l : m)
				if (l.positive) t.insert(l.term);
			r.solutions.push_back(std::move(t));
		}
		r.status = !r.solutions.empty() ? SolveStatus::sat : r.complete ? SolveStatus::unsat : SolveStatus::unknown;
	} else {
		r.status = s.solve(assumptions);
		if (r.status == SolveStatus::sat) {
			std::set<Term> t;
			for (const auto& x : proj)
				if (s.model_value(x)) t.insert(x);
			r.solutions.push_back(std::move(t));
		}
		r.complete = r.status == SolveStatus::unsat;
	}
	r.stats = s.stats();
	r.learned = s.export_learned(cfg.filter, cfg.rank, cfg.top_k);
	for (const auto& [d, _] : h.psi) r.base.insert(d);
	for (const auto& l : s.loop_nogoods()) r.base.insert(l.nogood);
	return r;
}

void check_policy(const HarnessProblem& problem, const RunConfig& cfg) {
	const auto kind = problem.translation.kind;
	switch (cfg.policy) {
	case PolicyMode::basic: return;
	case PolicyMode::cyclic_all: {
		if (cfg.assume_cyclic) return;
		if (!cfg.certificate) throw Error("policy cyclic-all needs --assume-cyclic or a cyclicity certificate");
		if (!cfg.certificate->cyclic) throw Error("the cyclicity certificate is negative");
		for (const auto& [a, v] : cfg.certificate->init.values())
			if (problem.source.init.get(a) != v)
				throw Error("the cyclicity certificate's assignment is not part of the initial assignment");
		return;
	}
	case PolicyMode::lambda_all:
	case PolicyMode::lambda_to_original:
		if (kind != TranslationKind::lambda) throw Error("policy " + to_string(cfg.policy) + " needs the lambda translation");
		return;
	case PolicyMode::trb_step:
	case PolicyMode::trb_step_original:
		if (kind != TranslationKind::trb && kind != TranslationKind::pnf_trb)
			throw Error("policy " + to_string(cfg.policy) + " needs the trb or pnf+trb translation");
		return;
	}
}

GeneralizationPolicy policy_for(const HarnessProblem& problem, const RunConfig& cfg, Step n,
                                std::optional<Interval> proof_interval) {
	GeneralizationPolicy pol;
	pol.mode = cfg.policy;
	pol.horizon = n;
	pol.proof_interval = proof_interval;
	pol.lambda = problem.translation.lambda;
	pol.star_to_original = problem.translation.star_to_original;
	return pol;
}

NogoodSet generalize_all(const HarnessProblem& problem, const RunConfig& cfg, const std::vector<LearnedNogood>& learned,
                         Step n) {
	NogoodSet out;
	const bool original = is_original_mode(cfg.policy);
	for (const auto& l : learned) {
		if (original && std::any_of(l.nogood.begin(), l.nogood.end(), [](const SignedTerm& x) { return !x.term.is_atom(); }))
			continue;
		for (auto& g : generalize(l.nogood, policy_for(problem, cfg, n, l.proof_interval))) out.insert(g);
	}
	return out;
}

PreliminaryResult preliminary_learning(const HarnessProblem& learning, const RunConfig& cfg) {
	if (cfg.top_k > 0) check_policy(learning, cfg);
	RunConfig run = cfg;
	run.enumerate = 0;
	run.solver.time_budget_seconds = cfg.preliminary.seconds;
	run.solver.learned_budget = cfg.preliminary.nogoods;
	auto r = solve_single_shot(learning, run);
	PreliminaryResult out;
	out.learned = std::move(r.learned);
	out.stats = r.stats;
	if (cfg.top_k > 0) out.generalized = generalize_all(learning, cfg, out.learned, cfg.horizon);
	return out;
}

MultiShotResult solve_multi_shot(const HarnessProblem& problem, const RunConfig& cfg) {
	if (cfg.stride < 1) throw Error("stride must be at least 1");
	if (cfg.start < 1 || cfg.max < cfg.start) throw Error("multi-shot needs 1 <= start <= max");
	if (cfg.top_k > 0) {
		if (is_original_mode(cfg.policy))
			throw Error("policy " + to_string(cfg.policy) + " solves a different program than it learns on; use it with single-shot preliminary learning");
		check_policy(problem, cfg);
	}
	MultiShotResult out;
	std::vector<LearnedNogood> pool;
	std::set<Nogood> pooled;
	for (Step n = cfg.start; n <= cfg.max; n += cfg.stride) {
		NogoodSet injected;
		if (cfg.top_k > 0) injected = generalize_all(problem, cfg, pool, n);
		RunConfig run = cfg;
		run.horizon = n;
		auto r = solve_single_shot(problem, run, injected);
		HorizonRecord rec;
		rec.horizon = n;
		rec.status = r.status;
		rec.stats = r.stats;
		rec.injected = injected.size();
		rec.solutions = r.solutions.size();
		rec.complete = r.complete;
		if (r.status == SolveStatus::unsat)
			for (auto& l : r.learned)
				if (pooled.insert(l.nogood).second) {
					pool.push_back(std::move(l));
					++rec.exported;
				}
		out.horizons.push_back(rec);
		if (r.status == SolveStatus::sat) {
			out.plan_horizon = n;
			out.plan = r.solutions.front();
			break;
		}
		if (r.status == SolveStatus::unknown) break;
	}
	return out;
}

} // namespace tempo
