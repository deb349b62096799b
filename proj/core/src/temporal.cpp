#include "tempo/temporal.h"

#include <algorithm>

namespace tempo {

void StateAssignment::set(AtomId a, bool value) {
	auto [it, fresh] = values_.emplace(a, value);
	if (!fresh && it->second != value) throw Error("assignment gives an atom both values");
}

std::optional<bool> StateAssignment::get(AtomId a) const {
	if (auto it = values_.find(a); it != values_.end()) return it->second;
	return std::nullopt;
}

std::vector<SignedTerm> StateAssignment::at(Step step) const {
	std::vector<SignedTerm> out;
	for (const auto& [a, v] : values_) out.push_back({Term::atom(a, step), v});
	return out;
}

bool StateAssignment::consistent_with(const State& s) const {
	for (const auto& [a, v] : values_)
		if (std::binary_search(s.begin(), s.end(), a) != v) return false;
	return true;
}

StateAssignment StateAssignment::merged(const StateAssignment& other) const {
	StateAssignment out = *this;
	for (const auto& [a, v] : other.values_) out.set(a, v);
	return out;
}

namespace {

void add_instance(GroundProgram& gp, const TemporalProgram& p, Step i) {
	auto rules = p.rules();
	for (std::size_t r = 0; r < rules.size(); ++r) {
		const auto& rule = rules[r];
		GroundRule g;
		g.kind = rule.kind;
		if (rule.kind != HeadKind::constraint) g.head = *gp.find_atom({rule.head, i});
		for (const auto& l : rule.body)
			g.body.push_back({*gp.find_atom({l.atom, l.primed ? i - 1 : i}), l.positive});
		g.tag = BodyTag{p.body_of(r), i};
		gp.add_rule(std::move(g));
	}
}

} // namespace

GroundProgram instantiate_program(std::shared_ptr<const TemporalProgram> p, Step m, Step n) {
	if (m < 1 || m > n) throw Error("instantiate_program requires 1 <= m <= n");
	GroundProgram gp(p->atom_table(), p);
	for (Step s = m - 1; s <= n; ++s)
		for (AtomId a = 0; a < p->atom_count(); ++a) gp.add_atom({a, s});
	for (Step i = m; i <= n; ++i) add_instance(gp, *p, i);
	return gp;
}

GroundProgram instantiate_program(const TemporalProgram& p, Step m, Step n) {
	return instantiate_program(std::make_shared<const TemporalProgram>(p), m, n);
}

GroundProgram generator_program(std::shared_ptr<const TemporalProgram> p, Step n) {
	if (n < 1) throw Error("generator_program requires n >= 1");
	GroundProgram gp(p->atom_table(), p);
	for (Step s = 0; s <= n; ++s)
		for (AtomId a = 0; a < p->atom_count(); ++a) gp.add_atom({a, s});
	for (AtomId a = 0; a < p->atom_count(); ++a)
		gp.add_rule({HeadKind::choice, *gp.find_atom({a, 0}), {}, std::nullopt});
	for (Step i = 1; i <= n; ++i) add_instance(gp, *p, i);
	return gp;
}

GroundProgram transition_program(std::shared_ptr<const TemporalProgram> p) {
	GroundProgram gp(p->atom_table(), p);
	for (Step s : {-1, 0})
		for (AtomId a = 0; a < p->atom_count(); ++a) gp.add_atom({a, s});
	for (AtomId a = 0; a < p->atom_count(); ++a)
		gp.add_rule({HeadKind::choice, *gp.find_atom({a, -1}), {}, std::nullopt});
	add_instance(gp, *p, 0);
	return gp;
}

NogoodSet temporal_nogoods(std::shared_ptr<const TemporalProgram> p) {
	return program_nogoods(transition_program(std::move(p)));
}

NogoodSet temporal_nogoods(const TemporalProgram& p) {
	return temporal_nogoods(std::make_shared<const TemporalProgram>(p));
}

Nogood shift_unchecked(const Nogood& d, Step t) {
	std::vector<SignedTerm> lits;
	lits.reserve(d.size());
	for (const auto& l : d) lits.push_back({l.term.shifted(t), l.positive});
	return Nogood(std::move(lits));
}

std::map<Nogood, Step> instantiate_nogoods_with_origin(const NogoodSet& ns, Step m, Step n) {
	if (m < 1 || m > n) throw Error("instantiate_nogoods requires 1 <= m <= n");
	std::map<Nogood, Step> out;
	for (Step i = m; i <= n; ++i)
		for (const auto& d : ns) out.emplace(shift_unchecked(d, i), i);
	return out;
}

NogoodSet instantiate_nogoods(const NogoodSet& ns, Step m, Step n) {
	NogoodSet out;
	for (auto& [d, _] : instantiate_nogoods_with_origin(ns, m, n)) out.insert(d);
	return out;
}

std::vector<Term> horizon_domain(const TemporalProgram& p, Step n) {
	std::vector<Term> out;
	for (Step s = 0; s <= n; ++s)
		for (AtomId a = 0; a < p.atom_count(); ++a) out.push_back(Term::atom(a, s));
	for (Step s = 1; s <= n; ++s)
		for (BodyId b = 0; b < p.bodies().size(); ++b)
			if (p.is_rule_body(b) && !p.bodies()[b].empty()) out.push_back(Term::body(b, s));
	return out;
}

std::vector<State> states_of(const std::set<Term>& true_atoms, Step n) {
	std::vector<State> out(static_cast<std::size_t>(n + 1));
	for (const auto& t : true_atoms)
		if (t.is_atom() && t.step >= 0 && t.step <= n) out[t.step].push_back(t.id);
	for (auto& s : out) std::sort(s.begin(), s.end());
	return out;
}

} // namespace tempo
