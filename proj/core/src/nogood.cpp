#include "tempo/nogood.h"

#include "tempo/ground.h"

#include <algorithm>

namespace tempo {

namespace {

bool normalize(std::vector<SignedTerm>& lits) {
	std::sort(lits.begin(), lits.end());
	lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
	for (std::size_t i = 1; i < lits.size(); ++i)
		if (lits[i].term == lits[i - 1].term) return false;
	return true;
}

} // namespace

Nogood::Nogood(std::vector<SignedTerm> lits) : lits_(std::move(lits)) {
	if (!normalize(lits_)) throw Error("nogood contains a term with both signs");
}

std::optional<Nogood> Nogood::try_make(std::vector<SignedTerm> lits) {
	if (!normalize(lits)) return std::nullopt;
	Nogood n;
	n.lits_ = std::move(lits);
	return n;
}

bool Nogood::contains(const SignedTerm& l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

bool Nogood::mentions(const Term& t) const {
	return contains(SignedTerm::T(t)) || contains(SignedTerm::F(t));
}

std::optional<Nogood> resolve(const Nogood& a, const Nogood& b) {
	std::optional<Term> pivot;
	for (const auto& l : a) {
		if (b.contains(l.complement())) {
			if (pivot) return std::nullopt;
			pivot = l.term;
		}
	}
	if (!pivot) return std::nullopt;
	std::vector<SignedTerm> out;
	for (const auto& l : a)
		if (l.term != *pivot) out.push_back(l);
	for (const auto& l : b)
		if (l.term != *pivot) out.push_back(l);
	return Nogood::try_make(std::move(out));
}

TermFormatter TermFormatter::temporal(const TemporalProgram& p) {
	TermFormatter f;
	f.names_ = p.atom_table();
	f.program_ = &p;
	f.temporal_ = true;
	return f;
}

TermFormatter TermFormatter::timed(const TemporalProgram& p) {
	TermFormatter f;
	f.names_ = p.atom_table();
	f.program_ = &p;
	return f;
}

TermFormatter TermFormatter::ground(const GroundProgram& gp) {
	TermFormatter f;
	f.names_ = gp.name_table();
	f.program_ = gp.source();
	f.ground_ = &gp;
	return f;
}

TermFormatter TermFormatter::names_only(std::shared_ptr<const AtomTable> names) {
	TermFormatter f;
	f.names_ = std::move(names);
	return f;
}

std::string TermFormatter::atom_at(AtomId a, Step s) const {
	std::string n = a < names_->size() ? names_->name(a) : "#" + std::to_string(a);
	if (temporal_) {
		if (s == 0) return n;
		if (s == -1) return n + "'";
	}
	return n + "@" + std::to_string(s);
}

std::string TermFormatter::term(const Term& t) const {
	switch (t.kind) {
	case TermKind::atom: return atom_at(t.id, t.step);
	case TermKind::empty_body: return "{}";
	case TermKind::local_body: {
		if (!ground_) return "#lbody" + std::to_string(t.id);
		std::string s = "{";
		const auto& lits = ground_->local_body(t.id);
		for (std::size_t i = 0; i < lits.size(); ++i) {
			if (i) s += ",";
			if (!lits[i].positive) s += "not ";
			const auto& ga = ground_->atoms()[lits[i].atom];
			s += atom_at(ga.base, ga.step);
		}
		return s + "}";
	}
	case TermKind::body: {
		std::string s;
		if (program_ && t.id < program_->bodies().size()) {
			s = "{";
			const auto& b = program_->bodies()[t.id];
			for (std::size_t i = 0; i < b.size(); ++i) {
				if (i) s += ",";
				s += format_literal(b[i], *names_);
			}
			s += "}";
		} else {
			s = "#body" + std::to_string(t.id);
		}
		if (temporal_ && t.step == 0) return s;
		return s + "@" + std::to_string(t.step);
	}
	}
	return "?";
}

std::string TermFormatter::literal(const SignedTerm& l) const {
	return std::string(l.positive ? "T " : "F ") + term(l.term);
}

std::string TermFormatter::nogood(const Nogood& n) const {
	std::string s = "{";
	bool first = true;
	for (const auto& l : n) {
		if (!first) s += ", ";
		first = false;
		s += literal(l);
	}
	return s + "}";
}

std::vector<Term> terms_of(const NogoodSet& ns) {
	std::set<Term> ts;
	for (const auto& n : ns)
		for (const auto& l : n) ts.insert(l.term);
	return {ts.begin(), ts.end()};
}

} // namespace tempo
