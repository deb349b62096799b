#include "tempo/shift.h"

#include <algorithm>

namespace tempo {

Nogood shift_nogood(const Nogood& d, Step t) {
	std::vector<SignedTerm> lits;
	lits.reserve(d.size());
	for (const auto& l : d) {
		if (l.term.step + t < 0) throw Error("shift produces a negative step");
		lits.push_back({l.term.shifted(t), l.positive});
	}
	return Nogood(std::move(lits));
}

std::set<Step> nogood_steps(const Nogood& d) {
	std::set<Step> out;
	for (const auto& l : d) out.insert(l.term.step);
	return out;
}

Step nogood_degree(const Nogood& d) {
	if (d.empty()) return 0;
	auto s = nogood_steps(d);
	return *s.rbegin() - *s.begin();
}

std::set<Step> lambda_step(const Nogood& d, AtomId lambda) {
	std::set<Step> out;
	for (const auto& l : d) {
		if (l.positive && l.term.is_atom() && l.term.id == lambda) {
			out.insert(l.term.step - 1);
			out.insert(l.term.step);
		}
	}
	return out.empty() ? nogood_steps(d) : out;
}

Nogood simp(const Nogood& d, std::optional<AtomId> lambda, const std::map<AtomId, AtomId>& star_to_original) {
	std::vector<SignedTerm> lits;
	for (const auto& l : d) {
		if (l.term.is_atom()) {
			if (lambda && l.term.id == *lambda) continue;
			if (auto it = star_to_original.find(l.term.id); it != star_to_original.end()) {
				if (l.term.step < 1) throw Error("simp maps a star atom to a negative step");
				lits.push_back({Term::atom(it->second, l.term.step - 1), l.positive});
				continue;
			}
		}
		lits.push_back(l);
	}
	return Nogood(std::move(lits));
}

std::string to_string(PolicyMode m) {
	switch (m) {
	case PolicyMode::basic: return "basic";
	case PolicyMode::cyclic_all: return "cyclic-all";
	case PolicyMode::lambda_all: return "lambda-all";
	case PolicyMode::lambda_to_original: return "lambda-to-original";
	case PolicyMode::trb_step: return "trb-step";
	case PolicyMode::trb_step_original: return "trb-step-original";
	}
	return "?";
}

PolicyMode parse_policy_mode(std::string_view s) {
	std::string k(s);
	std::replace(k.begin(), k.end(), '_', '-');
	for (auto m : {PolicyMode::basic, PolicyMode::cyclic_all, PolicyMode::lambda_all, PolicyMode::lambda_to_original,
	               PolicyMode::trb_step, PolicyMode::trb_step_original})
		if (to_string(m) == k) return m;
	throw Error("unknown generalization policy '" + std::string(s) + "'");
}

namespace {

bool inside(const Nogood& d, Step lo, Step n) {
	for (const auto& l : d) {
		Step min = l.term.is_atom() ? lo : std::max<Step>(lo, 1);
		if (l.term.step < min || l.term.step > n) return false;
	}
	return true;
}

bool set_inside(const std::set<Step>& s, Step lo, Step hi) {
	return s.empty() || (*s.begin() >= lo && *s.rbegin() <= hi);
}

} // namespace

NogoodSet generalize(const Nogood& d, const GeneralizationPolicy& pol) {
	const Step n = pol.horizon;
	if (n < 1) throw Error("generalize requires horizon >= 1");
	NogoodSet out;
	if (d.empty()) {
		out.insert(d);
		return out;
	}
	auto steps = nogood_steps(d);
	const Step lo = *steps.begin();
	const Step hi = *steps.rbegin();
	auto need_lambda = [&] {
		if (!pol.lambda) throw Error("policy " + to_string(pol.mode) + " needs the lambda atom");
		return *pol.lambda;
	};

	switch (pol.mode) {
	case PolicyMode::basic: {
		if (!pol.proof_interval) throw Error("basic generalization needs the proof interval");
		auto [i, j] = *pol.proof_interval;
		if (i < 1 || i > j) throw Error("basic generalization needs 1 <= i <= j");
		for (Step t = 1 - i; j + t <= n; ++t) {
			if (lo + t < 0) continue;
			auto s = shift_nogood(d, t);
			if (inside(s, 0, n)) out.insert(std::move(s));
		}
		break;
	}
	case PolicyMode::cyclic_all:
	case PolicyMode::lambda_all:
	case PolicyMode::lambda_to_original: {
		std::optional<AtomId> lam;
		if (pol.mode == PolicyMode::lambda_all) need_lambda();
		if (pol.mode == PolicyMode::lambda_to_original) lam = need_lambda();
		for (Step t = -lo; hi + t <= n; ++t) {
			auto s = shift_nogood(d, t);
			if (!inside(s, 0, n)) continue;
			if (lam) {
				if (s.contains(SignedTerm::T(Term::atom(*lam, 0)))) continue;
				out.insert(simp(s, lam));
			} else {
				out.insert(std::move(s));
			}
		}
		break;
	}
	case PolicyMode::trb_step:
	case PolicyMode::trb_step_original: {
		AtomId lam = need_lambda();
		for (Step t = -lo; hi + t <= n; ++t) {
			auto s = shift_nogood(d, t);
			if (!set_inside(lambda_step(s, lam), 1, n) || !inside(s, 0, n)) continue;
			if (pol.mode == PolicyMode::trb_step_original) {
				bool star_at_zero = std::any_of(s.begin(), s.end(), [&](const SignedTerm& l) {
					return l.term.is_atom() && l.term.step == 0 && pol.star_to_original.count(l.term.id);
				});
				if (star_at_zero) continue;
				out.insert(simp(s, lam, pol.star_to_original));
			} else {
				out.insert(std::move(s));
			}
		}
		break;
	}
	}
	return out;
}

std::string format_generalized(const NogoodSet& ns, const GeneralizationPolicy& policy, const TermFormatter& fmt) {
	std::string s = "# policy=" + to_string(policy.mode) + " horizon=" + std::to_string(policy.horizon) + "\n";
	for (const auto& n : ns) s += fmt.nogood(n) + "\n";
	return s;
}

} // namespace tempo
