#include "tempo/asn.h"
#include "tempo/graph.h"
#include "tempo/harness.h"
#include "tempo/oracle.h"
#include "tempo/planning.h"
#include "tempo/translate.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace tempo;

constexpr int exit_sat = 10;
constexpr int exit_unsat = 20;
constexpr int exit_error = 1;

int exit_code(SolveStatus s) {
	switch (s) {
	case SolveStatus::sat: return exit_sat;
	case SolveStatus::unsat: return exit_unsat;
	default: return 0;
	}
}

// key=value statistics go to stderr unless a file is named; "-" means stdout.
class StatsSink {
public:
	explicit StatsSink(const std::string& path) {
		if (path == "-") out_ = &std::cout;
		else if (!path.empty()) {
			file_.open(path);
			if (!file_) throw Error("cannot write '" + path + "'");
			out_ = &file_;
		}
	}
	std::ostream& os() { return *out_; }

private:
	std::ofstream file_;
	std::ostream* out_ = &std::cerr;
};

std::string format_atoms(const std::set<Term>& ts, const AtomTable& names) {
	std::string s;
	for (const auto& t : ts) {
		if (!s.empty()) s += ' ';
		s += names.name(t.id) + "@" + std::to_string(t.step);
	}
	return s;
}

StateAssignment load_assignment(const std::string& path, const AtomTable& names) {
	if (path.empty()) return {};
	return parse_state_assignment(read_text_file(path), names);
}

struct CommonSolve {
	std::uint64_t seed = 0;
	bool          luby = false;
	std::string   stats;
	std::string   rank = "lbd";
	std::size_t   top_k = 500;
	std::string   policy = "cyclic-all";
	bool          assume_cyclic = false;
	bool          certify = false;
	std::size_t   enumerate = 0;
	std::string   dump_learned;

	void add_to(CLI::App* app) {
		app->add_option("--seed", seed, "Solver seed");
		app->add_flag("--luby", luby, "Enable Luby restarts");
		app->add_option("--stats", stats, "Write key=value statistics here (default: stderr, '-' for stdout)");
		app->add_option("--rank", rank, "Ranking of learned nogoods: lbd or size");
		app->add_option("--topk", top_k, "Number of learned nogoods to transfer (0: baseline)");
		app->add_option("--policy", policy,
		                "Generalization policy: basic, cyclic-all, lambda-all, lambda-to-original, trb-step, "
		                "trb-step-original");
		app->add_flag("--assume-cyclic", assume_cyclic, "Assert that the program is cyclic wrt the initial assignment");
		app->add_flag("--certify", certify, "Check cyclicity wrt the initial assignment on the transition graph");
		app->add_option("--enumerate", enumerate, "Enumerate up to K solutions");
		app->add_option("--dump-learned", dump_learned, "Write exported learned nogoods to this file");
	}

	RunConfig config() const {
		RunConfig c;
		c.solver.seed = seed;
		c.solver.luby_restarts = luby;
		c.rank = parse_rank_key(rank);
		c.top_k = top_k;
		c.policy = parse_policy_mode(policy);
		c.assume_cyclic = assume_cyclic;
		c.enumerate = enumerate;
		return c;
	}
};

void print_solutions(const SingleShotResult& r, const AtomTable& names) {
	std::cout << "status=" << to_string(r.status) << "\n";
	for (std::size_t k = 0; k < r.solutions.size(); ++k)
		std::cout << "solution " << (k + 1) << ": " << format_atoms(r.solutions[k], names) << "\n";
	if (!r.solutions.empty() || r.status == SolveStatus::unsat)
		std::cout << "solutions=" << r.solutions.size() << (r.complete ? "" : "+") << "\n";
}

void dump_learned(const std::string& path, const std::vector<LearnedNogood>& learned, const TemporalProgram& p) {
	if (path.empty()) return;
	auto fmt = TermFormatter::timed(p);
	std::string s;
	for (const auto& l : learned) {
		s += fmt.nogood(l.nogood) + "  % lbd=" + std::to_string(l.lbd) + " size=" + std::to_string(l.size) +
		     " degree=" + std::to_string(l.degree);
		if (l.proof_interval)
			s += " interval=" + std::to_string(l.proof_interval->lo) + ".." + std::to_string(l.proof_interval->hi);
		s += "\n";
	}
	write_text_file(path, s);
}

int run_solve(const std::string& prog, const std::string& init, const std::string& goal, Step n,
              const std::string& inject, const std::string& translation, bool learn, const CommonSolve& common) {
	auto p = std::make_shared<const TemporalProgram>(parse_temporal_program(read_text_file(prog)));
	TemporalProblem problem{p, load_assignment(init, p->atoms()), load_assignment(goal, p->atoms())};
	auto cfg = common.config();
	cfg.horizon = n;
	auto h = HarnessProblem::translated(problem, parse_translation_kind(translation));

	NogoodSet injected;
	if (!inject.empty()) injected = parse_nogood_list(read_text_file(inject), h.solving_program());
	StatsSink sink(common.stats);
	if (learn && cfg.top_k > 0) {
		if (common.certify) cfg.certificate = certify_cyclic(h.solving_program_ptr(), problem.init);
		// The *-original policies learn on the translation and solve the source program.
		auto learning = HarnessProblem::for_policy(problem, cfg.policy);
		if (learning.translation.kind == TranslationKind::none) learning = h;
		auto pre = preliminary_learning(learning, cfg);
		for (const auto& d : pre.generalized) injected.insert(d);
		sink.os() << "# preliminary\n" << pre.stats.to_string() << "learned_exported=" << pre.learned.size()
		          << "\ngeneralized=" << pre.generalized.size() << "\n";
	}
	auto r = solve_single_shot(h, cfg, injected);
	print_solutions(r, p->atoms());
	sink.os() << "# solve\nhorizon=" << n << "\n" << r.stats.to_string() << "injected=" << r.injected
	          << "\nexported=" << r.learned.size() << "\n";
	dump_learned(common.dump_learned, r.learned, h.solving_program());
	return exit_code(r.status);
}

int run_plan(const std::string& domain, const std::string& instance, Step n, Step start, Step stride, Step max,
             const std::string& emit_dir, const CommonSolve& common) {
	auto d = parse_domain(read_text_file(domain));
	auto inst = parse_instance(read_text_file(instance));
	auto c = compile_planning(d, inst);
	if (!emit_dir.empty()) {
		write_text_file(emit_dir + "/program.tlp", "% Compiled planning program.\n" + format_program(*c.program));
		write_text_file(emit_dir + "/init.asn", "% No action occurs at step 0; fluents as in the instance.\n" +
		                                            format_state_assignment(c.init(), c.program->atoms()));
		write_text_file(emit_dir + "/goal.asn",
		                "% Goal fluents.\n" + format_state_assignment(c.goal, c.program->atoms()));
	}
	TemporalProblem problem{c.program, c.init(), c.goal};
	auto cfg = common.config();
	auto h = HarnessProblem::for_policy(problem, cfg.policy);
	if (common.certify) cfg.certificate = certify_cyclic(h.solving_program_ptr(), c.i1);
	StatsSink sink(common.stats);

	std::optional<std::set<Term>> plan;
	Step plan_n = 0;
	SolveStatus final_status = SolveStatus::unknown;
	if (n > 0) {
		cfg.horizon = n;
		auto r = solve_single_shot(h, cfg);
		final_status = r.status;
		sink.os() << "# horizon " << n << "\n" << r.stats.to_string();
		std::cout << "horizon=" << n << " status=" << to_string(r.status) << "\n";
		if (!r.solutions.empty()) plan = r.solutions.front(), plan_n = n;
	} else {
		cfg.mode = RunMode::multi_shot;
		cfg.start = start;
		cfg.stride = stride;
		cfg.max = max;
		auto r = solve_multi_shot(h, cfg);
		for (const auto& rec : r.horizons) {
			std::cout << "horizon=" << rec.horizon << " status=" << to_string(rec.status) << " injected=" << rec.injected
			          << " exported=" << rec.exported << "\n";
			sink.os() << "# horizon " << rec.horizon << "\n" << rec.stats.to_string() << "injected=" << rec.injected
			          << "\nexported=" << rec.exported << "\n";
		}
		final_status = r.plan_horizon ? SolveStatus::sat : SolveStatus::unsat;
		if (r.plan) plan = r.plan, plan_n = *r.plan_horizon;
		if (!r.horizons.empty() && r.horizons.back().status == SolveStatus::unknown) final_status = SolveStatus::unknown;
	}
	if (plan) {
		std::cout << "plan:";
		for (const auto& a : decode_plan(c, *plan, plan_n)) std::cout << ' ' << a;
		std::cout << "\n";
	}
	return exit_code(final_status);
}

int run_analyze(const std::string& prog, const std::string& wrt, const std::string& dot, std::size_t cap) {
	auto p = std::make_shared<const TemporalProgram>(parse_temporal_program(read_text_file(prog)));
	auto g = build_graph(p, cap);
	if (!g.complete) throw Error("transition graph exceeds the model cap of " + std::to_string(cap));
	if (!dot.empty()) write_text_file(dot, to_dot(g));
	auto report = wrt.empty() ? is_cyclic(g) : is_cyclic_wrt(g, load_assignment(wrt, p->atoms()));
	std::cout << report_json(report, p->atoms()) << "\n";
	std::cerr << "nodes=" << g.nodes.size() << "\nedges=" << g.edges.size() << "\n";
	return 0;
}

int run_translate(const std::string& prog, const std::string& mode, const std::string& out, Step n) {
	auto p = parse_temporal_program(read_text_file(prog));
	auto t = translate(p, parse_translation_kind(mode));
	auto text = format_program(*t.program);
	std::string schedule = "% Assumption schedule for horizon n.\n";
	for (const auto& [a, v] : t.required_init.values())
		schedule += std::string(v ? "T " : "F ") + t.program->atoms().name(a) + "@0\n";
	if (t.lambda) schedule += "T " + t.program->atoms().name(*t.lambda) + "@1.." + (n > 0 ? std::to_string(n) : "n") + "\n";
	if (out.empty()) {
		std::cout << text;
		std::cerr << schedule;
	} else {
		write_text_file(out, text);
		auto base = out.size() > 4 && out.substr(out.size() - 4) == ".tlp" ? out.substr(0, out.size() - 4) : out;
		write_text_file(base + ".asn", schedule);
	}
	return 0;
}

int run_oracle(const std::string& prog, const std::string& init, const std::string& goal, Step n,
               const std::vector<std::string>& queries) {
	auto p = std::make_shared<const TemporalProgram>(parse_temporal_program(read_text_file(prog)));
	auto I = load_assignment(init, p->atoms());
	auto F = load_assignment(goal, p->atoms());
	if (!queries.empty()) {
		oracle::EntailmentQuery q;
		q.base = instantiate_nogoods(temporal_nogoods(p), 1, n);
		for (const auto& l : I.at(0)) q.extra_units.insert(Nogood{l.complement()});
		for (const auto& l : F.at(n)) q.extra_units.insert(Nogood{l.complement()});
		for (const auto& text : queries) {
			q.query = parse_nogood(text, *p);
			std::cout << text << " entailed=" << (oracle::entails(q) ? "true" : "false") << "\n";
		}
		return 0;
	}
	auto gen = generator_program(p, n);
	std::size_t count = 0;
	for (const auto& m : oracle::brute_force_stable_models(gen)) {
		std::set<Term> ts;
		for (auto idx : m) ts.insert(gen.atom_term(idx));
		bool ok = true;
		for (const auto& l : I.at(0)) ok = ok && (ts.count(l.term) > 0) == l.positive;
		for (const auto& l : F.at(n)) ok = ok && (ts.count(l.term) > 0) == l.positive;
		if (!ok) continue;
		std::cout << "solution " << ++count << ": " << format_atoms(ts, p->atoms()) << "\n";
	}
	std::cout << "solutions=" << count << "\n";
	return count > 0 ? exit_sat : exit_unsat;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Temporal answer-set solving with generalized learned nogoods"};
	app.require_subcommand(1);

	std::string prog, init, goal, inject, translation = "none", domain, instance, wrt, dot, out, mode, emit;
	Step n = 0, start = 5, stride = 5, max = 50;
	bool learn = false;
	std::size_t cap = default_model_cap;
	std::vector<std::string> queries;
	CommonSolve solve_opts, plan_opts;

	auto* solve = app.add_subcommand("solve", "Solve a temporal problem at a fixed horizon");
	solve->add_option("-p,--program", prog, "Temporal program (.tlp)")->required();
	solve->add_option("-i,--init", init, "Initial assignment (.asn)");
	solve->add_option("-f,--final", goal, "Final assignment (.asn)");
	solve->add_option("-n,--horizon", n, "Horizon")->required()->check(CLI::Range(1, 1000000));
	solve->add_option("--inject", inject, "File of timed nogoods to add");
	solve->add_option("--translate", translation, "Solve a translation: none, lambda, pnf, trb, pnf+trb");
	solve->add_flag("--learn", learn, "Run a preliminary learning step and inject its generalized nogoods");
	solve_opts.add_to(solve);

	auto* plan = app.add_subcommand("plan", "Compile and solve a planning problem");
	plan->add_option("-d,--domain", domain, "Domain file")->required();
	plan->add_option("-x,--instance", instance, "Instance file")->required();
	plan->add_option("-n,--horizon", n, "Single horizon (disables multi-shot)");
	plan->add_option("--start", start, "First horizon");
	plan->add_option("--stride", stride, "Horizon increment")->check(CLI::Range(1, 1000000));
	plan->add_option("--max", max, "Largest horizon");
	plan->add_option("--emit", emit, "Write program.tlp, init.asn and goal.asn into this directory");
	plan_opts.policy = "lambda-all";
	plan_opts.add_to(plan);

	auto* analyze = app.add_subcommand("analyze", "Transition graph and cyclicity analysis");
	analyze->add_option("-p,--program", prog, "Temporal program (.tlp)")->required();
	analyze->add_option("--wrt", wrt, "Check cyclicity with respect to this assignment (.asn)");
	analyze->add_option("--dot", dot, "Write the graph in DOT format");
	analyze->add_option("--cap", cap, "Model cap for the graph construction");

	auto* tr = app.add_subcommand("translate", "Translate a temporal program");
	tr->add_option("-p,--program", prog, "Temporal program (.tlp)")->required();
	tr->add_option("--mode", mode, "lambda, pnf, trb or pnf+trb")->required();
	tr->add_option("-o,--output", out, "Output .tlp; the schedule goes next to it as .asn");
	tr->add_option("-n,--horizon", n, "Horizon for the schedule (default: symbolic n)");

	auto* orc = app.add_subcommand("oracle", "Brute-force solutions or entailment checks");
	orc->add_option("-p,--program", prog, "Temporal program (.tlp)")->required();
	orc->add_option("-i,--init", init, "Initial assignment (.asn)");
	orc->add_option("-f,--final", goal, "Final assignment (.asn)");
	orc->add_option("-n,--horizon", n, "Horizon")->required()->check(CLI::Range(1, 1000000));
	orc->add_option("--entails", queries, "Timed nogood to check against the horizon's nogoods");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int rc = app.exit(e);
		return rc == 0 ? 0 : exit_error;
	}
	try {
		if (*solve) return run_solve(prog, init, goal, n, inject, translation, learn, solve_opts);
		if (*plan) return run_plan(domain, instance, n, start, stride, max, emit, plan_opts);
		if (*analyze) return run_analyze(prog, wrt, dot, cap);
		if (*tr) return run_translate(prog, mode, out, n);
		if (*orc) return run_oracle(prog, init, goal, n, queries);
	} catch (const ParseError& e) {
		std::cerr << "error: line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
		return exit_error;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_error;
	}
	return exit_error;
}
