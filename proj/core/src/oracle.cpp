#include "tempo/oracle.h"

#include "tempo/temporal.h"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace tempo::oracle {

namespace {

bool body_holds(const GroundRule& r, const std::vector<bool>& in) {
	return std::all_of(r.body.begin(), r.body.end(), [&](const GroundLiteral& l) { return in[l.atom] == l.positive; });
}

} // namespace

bool is_stable_model(const GroundProgram& p, const std::vector<std::uint32_t>& model) {
	const std::size_t n = p.atoms().size();
	std::vector<bool> in(n, false);
	for (auto a : model) in.at(a) = true;
	for (const auto& r : p.rules())
		if (r.kind == HeadKind::constraint && body_holds(r, in)) return false;
	// Reduct rules (head, positive body).
	std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> reduct;
	for (const auto& r : p.rules()) {
		if (r.kind == HeadKind::constraint) continue;
		if (r.kind == HeadKind::choice && !in[r.head]) continue;
		bool blocked = std::any_of(r.body.begin(), r.body.end(),
		                           [&](const GroundLiteral& l) { return !l.positive && in[l.atom]; });
		if (blocked) continue;
		std::vector<std::uint32_t> pos;
		for (const auto& l : r.body)
			if (l.positive) pos.push_back(l.atom);
		reduct.emplace_back(r.head, std::move(pos));
	}
	std::vector<bool> least(n, false);
	bool changed = true;
	while (changed) {
		changed = false;
		for (const auto& [h, pos] : reduct) {
			if (least[h]) continue;
			if (std::all_of(pos.begin(), pos.end(), [&](std::uint32_t a) { return least[a]; })) {
				least[h] = true;
				changed = true;
			}
		}
	}
	return least == in;
}

std::set<std::vector<std::uint32_t>> brute_force_stable_models(const GroundProgram& p) {
	const std::size_t n = p.atoms().size();
	if (n > stable_model_atom_cap) throw Error("brute_force_stable_models: too many atoms");
	std::set<std::vector<std::uint32_t>> out;
	for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
		std::vector<std::uint32_t> m;
		for (std::uint32_t a = 0; a < n; ++a)
			if (mask >> a & 1) m.push_back(a);
		if (is_stable_model(p, m)) out.insert(std::move(m));
	}
	return out;
}

std::vector<std::set<Term>> brute_force_solutions(const NogoodSet& ns, const std::vector<Term>& domain) {
	if (domain.size() > brute_force_term_cap) throw Error("brute_force_solutions: domain too large");
	std::map<Term, std::size_t> idx;
	for (std::size_t i = 0; i < domain.size(); ++i) idx[domain[i]] = i;
	std::vector<std::vector<std::pair<std::size_t, bool>>> compiled;
	for (const auto& n : ns) {
		std::vector<std::pair<std::size_t, bool>> c;
		for (const auto& l : n) {
			auto it = idx.find(l.term);
			if (it == idx.end()) throw Error("brute_force_solutions: nogood term outside the domain");
			c.emplace_back(it->second, l.positive);
		}
		compiled.push_back(std::move(c));
	}
	std::vector<std::set<Term>> out;
	for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << domain.size()); ++mask) {
		bool ok = std::none_of(compiled.begin(), compiled.end(), [&](const auto& c) {
			return std::all_of(c.begin(), c.end(), [&](const auto& l) { return ((mask >> l.first) & 1) == l.second; });
		});
		if (!ok) continue;
		std::set<Term> s;
		for (std::size_t i = 0; i < domain.size(); ++i)
			if (mask >> i & 1) s.insert(domain[i]);
		out.push_back(std::move(s));
	}
	return out;
}

namespace {

class Dpll {
public:
	explicit Dpll(const std::vector<const NogoodSet*>& sets) {
		std::map<Term, std::uint32_t> idx;
		for (auto* s : sets)
			for (const auto& n : *s) {
				std::vector<std::pair<std::uint32_t, bool>> c;
				for (const auto& l : n) {
					auto [it, fresh] = idx.emplace(l.term, static_cast<std::uint32_t>(idx.size()));
					c.emplace_back(it->second, l.positive);
				}
				nogoods_.push_back(std::move(c));
			}
		index_ = std::move(idx);
		if (index_.size() > entailment_term_cap) throw Error("entails: domain too large");
		occ_.resize(index_.size());
		for (std::uint32_t k = 0; k < nogoods_.size(); ++k)
			for (const auto& [v, _] : nogoods_[k]) occ_[v].push_back(k);
		value_.assign(index_.size(), -1);
	}

	/// False if a literal mentions a term not occurring in any nogood; such literals are free.
	bool fix(const SignedTerm& l) {
		auto it = index_.find(l.term);
		if (it == index_.end()) return true;
		if (value_[it->second] >= 0) return value_[it->second] == l.positive;
		set(it->second, l.positive);
		return true;
	}

	bool solve() {
		for (std::uint32_t k = 0; k < nogoods_.size(); ++k) pending_.push_back(k);
		if (!propagate()) return false;
		return search();
	}

private:
	void set(std::uint32_t v, bool val) {
		value_[v] = val ? 1 : 0;
		trail_.push_back(v);
		for (auto k : occ_[v]) pending_.push_back(k);
	}

	bool propagate() {
		while (!pending_.empty()) {
			auto k = pending_.back();
			pending_.pop_back();
			const auto& c = nogoods_[k];
			std::size_t open = 0;
			std::pair<std::uint32_t, bool> last{};
			bool satisfied = false;
			for (const auto& l : c) {
				auto v = value_[l.first];
				if (v < 0) {
					++open;
					last = l;
				} else if ((v == 1) != l.second) {
					satisfied = true;
					break;
				}
			}
			if (satisfied || open > 1) continue;
			if (open == 0) {
				pending_.clear();
				return false;
			}
			set(last.first, !last.second);
		}
		return true;
	}

	void undo(std::size_t mark) {
		while (trail_.size() > mark) {
			value_[trail_.back()] = -1;
			trail_.pop_back();
		}
		pending_.clear();
	}

	bool search() {
		std::uint32_t v = 0;
		while (v < value_.size() && value_[v] >= 0) ++v;
		if (v == value_.size()) return true;
		for (bool val : {false, true}) {
			std::size_t mark = trail_.size();
			set(v, val);
			if (propagate() && search()) return true;
			undo(mark);
		}
		return false;
	}

	std::map<Term, std::uint32_t>                           index_;
	std::vector<std::vector<std::pair<std::uint32_t, bool>>> nogoods_;
	std::vector<std::vector<std::uint32_t>>                  occ_;
	std::vector<std::int8_t>                                 value_;
	std::vector<std::uint32_t>                               trail_;
	std::vector<std::uint32_t>                               pending_;
};

} // namespace

bool satisfiable(const NogoodSet& ns, const std::vector<SignedTerm>& assumed) {
	Dpll d({&ns});
	for (const auto& l : assumed)
		if (!d.fix(l)) return false;
	return d.solve();
}

bool entails(const EntailmentQuery& q) {
	Dpll d({&q.base, &q.extra_units});
	for (const auto& l : q.query)
		if (!d.fix(l)) return true;
	return !d.solve();
}

bool entails_brute_force(const EntailmentQuery& q) {
	NogoodSet all = q.base;
	all.insert(q.extra_units.begin(), q.extra_units.end());
	auto domain = terms_of(all);
	for (const auto& l : q.query)
		if (std::find(domain.begin(), domain.end(), l.term) == domain.end()) domain.push_back(l.term);
	for (const auto& s : brute_force_solutions(all, domain)) {
		bool contains = std::all_of(q.query.begin(), q.query.end(),
		                            [&](const SignedTerm& l) { return s.count(l.term) == (l.positive ? 1u : 0u); });
		if (contains) return false;
	}
	return true;
}

ProofCheck verify_resolution_proof(const ResolutionProof& proof, const NogoodSet& base) {
	for (std::size_t i = 0; i < proof.size(); ++i) {
		const auto& step = proof[i];
		bool ok = false;
		if (step.from) {
			auto [a, b] = *step.from;
			if (a < i && b < i) {
				auto r1 = resolve(proof[a].nogood, proof[b].nogood);
				auto r2 = resolve(proof[b].nogood, proof[a].nogood);
				ok = r1 && r2 && *r1 == step.nogood && *r2 == step.nogood;
			}
		} else if (base.count(step.nogood)) {
			ok = true;
		} else {
			for (std::size_t a = 0; a < i && !ok; ++a)
				for (std::size_t b = a + 1; b < i && !ok; ++b) {
					auto r = resolve(proof[a].nogood, proof[b].nogood);
					ok = r && *r == step.nogood;
				}
		}
		if (!ok) return {false, i};
	}
	return {};
}

ProofCheck verify_resolution_proof(const std::vector<Nogood>& proof, const NogoodSet& base) {
	ResolutionProof p;
	for (const auto& n : proof) p.push_back({n, std::nullopt});
	return verify_resolution_proof(p, base);
}

ResolutionProof shift_proof(const ResolutionProof& proof, Step t) {
	ResolutionProof out;
	out.reserve(proof.size());
	for (const auto& s : proof) out.push_back({shift_unchecked(s.nogood, t), s.from});
	return out;
}

} // namespace tempo::oracle
