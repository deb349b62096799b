#include "tempo/completion.h"

#include <algorithm>
#include <map>

namespace tempo {

NogoodSet completion_nogoods(const GroundProgram& p) {
	NogoodSet out;
	std::map<Term, std::vector<SignedTerm>> bodies; // body term -> its literals
	std::vector<std::vector<Term>> all_bodies(p.atoms().size());
	std::vector<std::vector<Term>> normal_bodies(p.atoms().size());

	for (const auto& r : p.rules()) {
		if (r.kind == HeadKind::constraint) {
			std::vector<SignedTerm> lits;
			for (const auto& l : r.body) lits.push_back(p.literal_term(l));
			out.insert(Nogood(std::move(lits)));
			continue;
		}
		Term b = p.body_term(r);
		if (!bodies.count(b)) {
			std::vector<SignedTerm> lits;
			for (const auto& l : r.body) lits.push_back(p.literal_term(l));
			bodies.emplace(b, std::move(lits));
		}
		all_bodies[r.head].push_back(b);
		if (r.kind == HeadKind::normal) normal_bodies[r.head].push_back(b);
	}

	for (const auto& [b, lits] : bodies) {
		std::vector<SignedTerm> cl{SignedTerm::F(b)};
		for (const auto& l : lits) {
			cl.push_back(l);
			out.insert(Nogood{SignedTerm::T(b), l.complement()});
		}
		out.insert(Nogood(std::move(cl)));
	}

	for (std::uint32_t a = 0; a < p.atoms().size(); ++a) {
		Term at = p.atom_term(a);
		for (const auto& b : normal_bodies[a]) out.insert(Nogood{SignedTerm::F(at), SignedTerm::T(b)});
		std::vector<SignedTerm> cl{SignedTerm::T(at)};
		for (const auto& b : all_bodies[a]) cl.push_back(SignedTerm::F(b));
		out.insert(Nogood(std::move(cl)));
	}
	return out;
}

NogoodSet simplify_nogoods(const NogoodSet& ns) {
	NogoodSet out;
	const SignedTerm f_empty = SignedTerm::F(Term::empty());
	const SignedTerm t_empty = SignedTerm::T(Term::empty());
	for (const auto& n : ns) {
		if (n.contains(f_empty)) continue;
		if (!n.contains(t_empty)) {
			out.insert(n);
			continue;
		}
		std::vector<SignedTerm> rest;
		for (const auto& l : n)
			if (l != t_empty) rest.push_back(l);
		out.insert(Nogood(std::move(rest)));
	}
	return out;
}

NogoodSet program_nogoods(const GroundProgram& p) { return simplify_nogoods(completion_nogoods(p)); }

std::vector<Term> solving_domain(const GroundProgram& p) {
	std::set<Term> bodies;
	for (const auto& r : p.rules())
		if (r.kind != HeadKind::constraint && !r.body.empty()) bodies.insert(p.body_term(r));
	std::vector<Term> out;
	for (std::uint32_t a = 0; a < p.atoms().size(); ++a) out.push_back(p.atom_term(a));
	out.insert(out.end(), bodies.begin(), bodies.end());
	return out;
}

bool is_tight(const GroundProgram& p) {
	const std::size_t n = p.atoms().size();
	std::vector<std::vector<std::uint32_t>> succ(n);
	for (const auto& r : p.rules()) {
		if (r.kind == HeadKind::constraint) continue;
		for (const auto& l : r.body)
			if (l.positive) succ[r.head].push_back(l.atom);
	}
	// Iterative DFS cycle detection.
	std::vector<std::uint8_t> color(n, 0);
	for (std::uint32_t s = 0; s < n; ++s) {
		if (color[s]) continue;
		std::vector<std::pair<std::uint32_t, std::size_t>> stack{{s, 0}};
		color[s] = 1;
		while (!stack.empty()) {
			auto& [v, i] = stack.back();
			if (i < succ[v].size()) {
				std::uint32_t w = succ[v][i++];
				if (color[w] == 1) return false;
				if (color[w] == 0) {
					color[w] = 1;
					stack.emplace_back(w, 0);
				}
			} else {
				color[v] = 2;
				stack.pop_back();
			}
		}
	}
	return true;
}

Nogood loop_nogood(std::uint32_t a, const std::vector<std::uint32_t>& U, const GroundProgram& p) {
	if (std::find(U.begin(), U.end(), a) == U.end()) throw Error("loop_nogood: atom is not in the unfounded set");
	std::set<std::uint32_t> in(U.begin(), U.end());
	std::vector<SignedTerm> lits{SignedTerm::T(p.atom_term(a))};
	for (const auto& r : p.rules()) {
		if (r.kind == HeadKind::constraint || !in.count(r.head)) continue;
		bool external = std::none_of(r.body.begin(), r.body.end(),
		                             [&](const GroundLiteral& l) { return l.positive && in.count(l.atom); });
		if (external) lits.push_back(SignedTerm::F(p.body_term(r)));
	}
	return Nogood(std::move(lits));
}

UnfoundedSetChecker::UnfoundedSetChecker(const GroundProgram& p) : p_(p), supports_(p.atoms().size()) {
	for (const auto& r : p.rules()) {
		if (r.kind == HeadKind::constraint) continue;
		Support s{p.body_term(r), {}};
		for (const auto& l : r.body)
			if (l.positive) s.pos.push_back(l.atom);
		supports_[r.head].push_back(std::move(s));
	}
}

std::vector<std::uint32_t>
UnfoundedSetChecker::greatest_unfounded(const std::function<bool(const Term&)>& value) const {
	const std::size_t n = supports_.size();
	std::vector<bool> in(n, false);
	for (std::uint32_t a = 0; a < n; ++a) in[a] = value(p_.atom_term(a));
	auto body_true = [&](const Term& b) { return b.kind == TermKind::empty_body || value(b); };
	bool changed = true;
	while (changed) {
		changed = false;
		for (std::uint32_t a = 0; a < n; ++a) {
			if (!in[a]) continue;
			for (const auto& s : supports_[a]) {
				if (!body_true(s.body)) continue;
				if (std::none_of(s.pos.begin(), s.pos.end(), [&](std::uint32_t b) { return in[b]; })) {
					in[a] = false;
					changed = true;
					break;
				}
			}
		}
	}
	std::vector<std::uint32_t> out;
	for (std::uint32_t a = 0; a < n; ++a)
		if (in[a]) out.push_back(a);
	return out;
}

std::vector<Nogood> UnfoundedSetChecker::loop_nogoods(const std::function<bool(const Term&)>& value) const {
	auto U = greatest_unfounded(value);
	std::vector<Nogood> out;
	for (auto a : U) out.push_back(loop_nogood(a, U, p_));
	return out;
}

} // namespace tempo
