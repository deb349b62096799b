#include "support.h"

#include <stdexcept>

namespace tempo::test {

std::shared_ptr<const TemporalProgram> program_from(std::string_view text) {
	return std::make_shared<const TemporalProgram>(parse_temporal_program(text));
}

std::shared_ptr<const TemporalProgram> pi1() {
	static auto p = load_golden("pi1").program;
	return p;
}

std::shared_ptr<const TemporalProgram> pi2() {
	static auto p = load_golden("pi2").program;
	return p;
}

Json expected(const GoldenCase& c, const std::string& key) { return Json::parse(c.expected_json).at(key).at("value"); }

Nogood ng(const TemporalProgram& p, std::string_view text, bool temporal) { return parse_nogood(text, p, temporal); }

State state(const TemporalProgram& p, const std::vector<std::string>& names) {
	State s;
	for (const auto& n : names) s.push_back(*p.atoms().find(n));
	std::sort(s.begin(), s.end());
	return s;
}

std::set<Term> atoms_at(const TemporalProgram& p, const std::vector<std::string>& names) {
	std::set<Term> out;
	for (const auto& n : names) {
		auto at = n.rfind('@');
		out.insert(Term::atom(*p.atoms().find(n.substr(0, at)), std::stoi(n.substr(at + 1))));
	}
	return out;
}

std::string show(const NogoodSet& ns, const TermFormatter& f) {
	std::string s;
	for (const auto& n : ns) s += f.nogood(n) + "\n";
	return s;
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
	return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

} // namespace

std::shared_ptr<const TemporalProgram> random_temporal_program(std::mt19937_64& rng, const RandomTemporalSpec& spec) {
	ProgramBuilder b;
	const std::size_t k = pick(rng, 1, spec.max_atoms);
	for (std::size_t a = 0; a < k; ++a) b.declare(std::string(1, static_cast<char>('a' + a)));
	const std::size_t rules = pick(rng, 0, spec.max_rules);
	for (std::size_t r = 0; r < rules; ++r) {
		Body body;
		std::set<std::pair<AtomId, bool>> used;
		const std::size_t len = pick(rng, 0, spec.max_body);
		for (std::size_t i = 0; i < len; ++i) {
			Literal l{static_cast<AtomId>(pick(rng, 0, k - 1)), coin(rng, 0.4), coin(rng, 0.6)};
			if (!used.insert({l.atom, l.primed}).second) continue;
			body.push_back(l);
		}
		double kind = std::uniform_real_distribution<double>(0, 1)(rng);
		if (kind < 0.4) {
			b.add_normal(static_cast<AtomId>(pick(rng, 0, k - 1)), std::move(body));
		} else if (kind < 0.7) {
			b.add_choice(static_cast<AtomId>(pick(rng, 0, k - 1)), std::move(body));
		} else {
			if (!has_current(body)) {
				AtomId a = static_cast<AtomId>(pick(rng, 0, k - 1));
				if (used.count({a, false})) continue;
				body.push_back({a, false, coin(rng)});
			}
			b.add_constraint(std::move(body));
		}
	}
	return std::make_shared<const TemporalProgram>(b.build());
}

GroundProgram random_ground_program(std::mt19937_64& rng, const RandomGroundSpec& spec) {
	GroundProgramBuilder b;
	const std::size_t k = pick(rng, 1, spec.max_atoms);
	std::vector<std::string> names;
	for (std::size_t a = 0; a < k; ++a) {
		names.push_back("x" + std::to_string(a));
		b.atom(names.back());
	}
	using Lits = std::vector<std::pair<std::string_view, bool>>;
	std::size_t rules = pick(rng, 0, spec.max_rules);
	if (k >= 2 && coin(rng, spec.loop_probability)) {
		// A positive cycle over 1..3 atoms, each edge optionally guarded by a negative literal.
		std::size_t len = pick(rng, 1, std::min<std::size_t>(3, k));
		std::vector<std::size_t> cyc;
		while (cyc.size() < len) {
			auto a = pick(rng, 0, k - 1);
			if (std::find(cyc.begin(), cyc.end(), a) == cyc.end()) cyc.push_back(a);
		}
		for (std::size_t i = 0; i < len; ++i) {
			Lits body{{names[cyc[(i + 1) % len]], true}};
			auto g = pick(rng, 0, k - 1);
			if (coin(rng, 0.3) && std::find(cyc.begin(), cyc.end(), g) == cyc.end()) body.push_back({names[g], false});
			b.normal(names[cyc[i]], body);
		}
		rules = rules > len ? rules - len : 0;
	}
	for (std::size_t r = 0; r < rules; ++r) {
		Lits body;
		std::set<std::size_t> used;
		double kind = std::uniform_real_distribution<double>(0, 1)(rng);
		const std::size_t len = pick(rng, kind >= 0.75 ? 1 : 0, 3);
		// Positive dependencies point to lower atoms, so only the planted cycle breaks tightness.
		const std::size_t head = pick(rng, 0, k - 1);
		for (std::size_t i = 0; i < len; ++i) {
			auto a = pick(rng, 0, k - 1);
			if (!used.insert(a).second) continue;
			bool positive = coin(rng, 0.6) && (kind >= 0.75 || a < head);
			body.push_back({names[a], positive});
		}
		if (kind < 0.5) b.normal(names[head], body);
		else if (kind < 0.75) b.choice(names[head], body);
		else b.constraint(body);
	}
	return b.build();
}

std::set<std::vector<std::uint32_t>> solver_stable_models(const GroundProgram& gp) {
	Solver s(solving_domain(gp));
	for (const auto& n : program_nogoods(gp)) s.add_nogood(n);
	std::optional<UnfoundedSetChecker> checker;
	if (!is_tight(gp)) {
		checker.emplace(gp);
		s.set_post_check([&](const std::function<bool(const Term&)>& value) {
			std::vector<CheckedNogood> out;
			for (auto& n : checker->loop_nogoods(value)) out.push_back({std::move(n), std::nullopt});
			return out;
		});
	}
	std::vector<Term> proj;
	for (std::uint32_t a = 0; a < gp.atoms().size(); ++a) proj.push_back(gp.atom_term(a));
	bool complete = false;
	auto models = s.enumerate({}, proj, 1u << 20, &complete);
	if (!complete) throw std::runtime_error("solver enumeration incomplete");
	std::set<std::vector<std::uint32_t>> out;
	for (const auto& m : models) {
		std::vector<std::uint32_t> v;
		for (std::uint32_t a = 0; a < m.size(); ++a)
			if (m[a].positive) v.push_back(*gp.find_atom({m[a].term.id, m[a].term.step}));
		std::sort(v.begin(), v.end());
		out.insert(std::move(v));
	}
	return out;
}

namespace {

bool consistent(const std::set<Term>& x, const StateAssignment& a, Step step) {
	for (const auto& l : a.at(step))
		if ((x.count(l.term) > 0) != l.positive) return false;
	return true;
}

} // namespace

std::set<std::set<Term>> oracle_solutions(std::shared_ptr<const TemporalProgram> p, const StateAssignment& I,
                                          const StateAssignment& F, Step n) {
	auto gen = generator_program(p, n);
	std::set<std::set<Term>> out;
	for (const auto& m : oracle::brute_force_stable_models(gen)) {
		std::set<Term> x;
		for (auto idx : m) x.insert(gen.atom_term(idx));
		if (consistent(x, I, 0) && consistent(x, F, n)) out.insert(std::move(x));
	}
	return out;
}

std::set<std::set<Term>> psi_solutions(std::shared_ptr<const TemporalProgram> p, const StateAssignment& I,
                                       const StateAssignment& F, Step n) {
	const std::size_t k = p->atom_count();
	const std::size_t atoms = k * static_cast<std::size_t>(n + 1);
	if (atoms > 22) throw std::runtime_error("psi_solutions: too many atoms");
	auto domain = horizon_domain(*p, n);
	std::map<Term, std::size_t> index;
	for (std::size_t i = 0; i < domain.size(); ++i) index[domain[i]] = i;
	auto atom_index = [&](AtomId a, Step s) { return static_cast<std::size_t>(s) * k + a; };

	struct Lits {
		std::vector<std::pair<std::size_t, bool>> lits;
	};
	std::vector<Lits> nogoods;
	for (const auto& d : instantiate_nogoods(temporal_nogoods(p), 1, n)) {
		Lits l;
		for (const auto& x : d) l.lits.push_back({index.at(x.term), x.positive});
		nogoods.push_back(std::move(l));
	}
	std::optional<GroundProgram> gen;
	std::optional<UnfoundedSetChecker> checker;
	gen.emplace(generator_program(p, n));
	if (!is_tight(*gen)) checker.emplace(*gen);

	std::vector<char> val(domain.size());
	std::set<std::set<Term>> out;
	for (std::uint64_t mask = 0; mask < (1ull << atoms); ++mask) {
		for (std::size_t i = 0; i < domain.size(); ++i) {
			const auto& t = domain[i];
			if (t.is_atom()) {
				val[i] = (mask >> atom_index(t.id, t.step)) & 1;
				continue;
			}
			bool holds = true;
			for (const auto& l : p->bodies()[t.id]) {
				Step s = l.primed ? t.step - 1 : t.step;
				bool v = (mask >> atom_index(l.atom, s)) & 1;
				if (v != l.positive) holds = false;
			}
			val[i] = holds;
		}
		bool ok = true;
		for (const auto& d : nogoods) {
			bool all = true;
			for (const auto& [i, pos] : d.lits)
				if (static_cast<bool>(val[i]) != pos) {
					all = false;
					break;
				}
			if (all) {
				ok = false;
				break;
			}
		}
		if (!ok) continue;
		std::set<Term> x;
		for (std::size_t i = 0; i < domain.size(); ++i)
			if (domain[i].is_atom() && val[i]) x.insert(domain[i]);
		if (!consistent(x, I, 0) || !consistent(x, F, n)) continue;
		if (checker) {
			auto value = [&](const Term& t) { return static_cast<bool>(val[index.at(t)]); };
			if (!checker->greatest_unfounded(value).empty()) continue;
		}
		out.insert(std::move(x));
	}
	return out;
}

std::set<std::set<Term>> harness_solutions(const HarnessProblem& h, Step n, const NogoodSet& injected, std::size_t cap) {
	RunConfig cfg;
	cfg.horizon = n;
	cfg.enumerate = cap;
	cfg.top_k = 0;
	auto r = solve_single_shot(h, cfg, injected);
	if (!r.complete) throw std::runtime_error("harness enumeration incomplete");
	return {r.solutions.begin(), r.solutions.end()};
}

std::set<std::set<Term>> path_solutions(const TransitionGraph& g, Step n, const StateAssignment& I,
                                        const StateAssignment& F) {
	std::set<std::set<Term>> out;
	for (const auto& path : paths_of_length(g, n, I, F)) {
		std::set<Term> x;
		for (Step i = 0; i <= n; ++i)
			for (auto a : path[i]) x.insert(Term::atom(a, i));
		out.insert(std::move(x));
	}
	return out;
}

bool entails(const NogoodSet& base, const Nogood& q, const std::vector<SignedTerm>& units) {
	oracle::EntailmentQuery e;
	e.base = base;
	for (const auto& u : units) e.extra_units.insert(Nogood{u.complement()});
	e.query = q;
	return oracle::entails(e);
}

} // namespace tempo::test
