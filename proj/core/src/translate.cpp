#include "tempo/translate.h"

namespace tempo {

std::string to_string(TranslationKind k) {
	switch (k) {
	case TranslationKind::none: return "none";
	case TranslationKind::lambda: return "lambda";
	case TranslationKind::pnf: return "pnf";
	case TranslationKind::trb: return "trb";
	case TranslationKind::pnf_trb: return "pnf+trb";
	}
	return "?";
}

TranslationKind parse_translation_kind(std::string_view s) {
	for (auto k : {TranslationKind::none, TranslationKind::lambda, TranslationKind::pnf, TranslationKind::trb,
	               TranslationKind::pnf_trb})
		if (to_string(k) == s) return k;
	throw Error("unknown translation mode '" + std::string(s) + "'");
}

std::vector<SignedTerm> TranslationResult::schedule(Step n) const {
	auto out = required_init.at(0);
	if (lambda)
		for (Step i = 1; i <= n; ++i) out.push_back(SignedTerm::T(Term::atom(*lambda, i)));
	return out;
}

std::string fresh_name(const AtomTable& names, std::string_view base) {
	std::string candidate(base);
	for (int k = 1; names.find(candidate); ++k) candidate = std::string(base) + "_" + std::to_string(k);
	return candidate;
}

TranslationResult lambda_translate(const TemporalProgram& p) {
	ProgramBuilder b;
	for (AtomId a = 0; a < p.atom_count(); ++a) b.declare(p.atoms().name(a));
	AtomId lam = b.declare(fresh_name(p.atoms(), "__lambda"));
	b.add_choice(lam, {});
	for (const auto& r : p.rules()) {
		Rule t = r;
		t.body.push_back({lam, false, true});
		b.add_rule(std::move(t));
	}
	for (AtomId a = 0; a < p.atom_count(); ++a) b.add_choice(a, {{lam, false, false}});
	TranslationResult out;
	out.kind = TranslationKind::lambda;
	out.program = std::make_shared<const TemporalProgram>(b.build());
	out.aux_atoms = {lam};
	out.required_init.set(lam, false);
	out.lambda = lam;
	return out;
}

bool is_pnf(const TemporalProgram& p) {
	for (const auto& r : p.rules())
		if (r.kind != HeadKind::constraint && has_primed(r.body)) return false;
	return true;
}

TranslationResult pnf_translate(const TemporalProgram& p) {
	ProgramBuilder b;
	for (AtomId a = 0; a < p.atom_count(); ++a) b.declare(p.atoms().name(a));
	TranslationResult out;
	out.kind = TranslationKind::pnf;
	for (AtomId a = 0; a < p.atom_count(); ++a) {
		// Check freshness against both the source names and already created stars.
		AtomTable taken = b.atoms();
		AtomId s = b.declare(fresh_name(taken, "__star_" + p.atoms().name(a)));
		out.star_to_original[s] = a;
		out.original_to_star[a] = s;
		out.aux_atoms.push_back(s);
		out.required_init.set(s, false);
	}
	for (const auto& r : p.rules()) {
		Rule t = r;
		for (auto& l : t.body)
			if (l.primed) l = {out.original_to_star.at(l.atom), false, l.positive};
		b.add_rule(std::move(t));
	}
	for (AtomId a = 0; a < p.atom_count(); ++a) {
		AtomId s = out.original_to_star.at(a);
		b.add_choice(s, {});
		b.add_constraint({{a, true, true}, {s, false, false}});
		b.add_constraint({{a, true, false}, {s, false, true}});
	}
	out.program = std::make_shared<const TemporalProgram>(b.build());
	return out;
}

namespace {

TranslationResult trb_over(const TemporalProgram& p, TranslationResult out) {
	if (!is_pnf(p)) throw Error("trb translation requires a program in previous normal form");
	ProgramBuilder b;
	for (AtomId a = 0; a < p.atom_count(); ++a) b.declare(p.atoms().name(a));
	AtomId lam = b.declare(fresh_name(p.atoms(), "__lambda"));
	b.add_choice(lam, {});
	for (const auto& r : p.rules()) {
		Rule t = r;
		if (t.kind == HeadKind::constraint && has_primed(t.body)) t.body.push_back({lam, false, true});
		b.add_rule(std::move(t));
	}
	out.program = std::make_shared<const TemporalProgram>(b.build());
	out.aux_atoms.push_back(lam);
	out.required_init.set(lam, false);
	out.lambda = lam;
	return out;
}

} // namespace

TranslationResult trb_translate(const TemporalProgram& p) {
	TranslationResult out;
	out.kind = TranslationKind::trb;
	return trb_over(p, std::move(out));
}

TranslationResult pnf_trb_translate(const TemporalProgram& p) {
	auto star = pnf_translate(p);
	auto out = trb_over(*star.program, star);
	out.kind = TranslationKind::pnf_trb;
	return out;
}

TranslationResult translate(const TemporalProgram& p, TranslationKind kind) {
	switch (kind) {
	case TranslationKind::none: {
		TranslationResult out;
		out.program = std::make_shared<const TemporalProgram>(p);
		return out;
	}
	case TranslationKind::lambda: return lambda_translate(p);
	case TranslationKind::pnf: return pnf_translate(p);
	case TranslationKind::trb: return trb_translate(p);
	case TranslationKind::pnf_trb: return pnf_trb_translate(p);
	}
	throw Error("unknown translation kind");
}

} // namespace tempo
