#pragma once

#include "tempo/program.h"

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tempo {

using Step = std::int32_t;

enum class TermKind : std::uint8_t {
	atom,       // id = AtomId, step = time step (-1 for a' in temporal form)
	body,       // id = BodyId of a temporal program, step = instantiation step
	local_body, // id = index into a GroundProgram's untagged body table
	empty_body, // the empty body; only in unsimplified completion output
};

struct Term {
	Step     step = 0;
	TermKind kind = TermKind::atom;
	std::uint32_t id = 0;

	static Term atom(AtomId a, Step s) { return {s, TermKind::atom, a}; }
	static Term body(BodyId b, Step s) { return {s, TermKind::body, b}; }
	static Term local_body(std::uint32_t b) { return {0, TermKind::local_body, b}; }
	static Term empty() { return {0, TermKind::empty_body, 0}; }

	bool is_atom() const noexcept { return kind == TermKind::atom; }
	Term shifted(Step t) const noexcept { return {step + t, kind, id}; }

	friend auto operator<=>(const Term&, const Term&) = default;
};

struct TermHash {
	std::size_t operator()(const Term& t) const noexcept {
		std::uint64_t h = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.step)) << 32) ^
		                  (static_cast<std::uint64_t>(t.kind) << 29) ^ t.id;
		return std::hash<std::uint64_t>{}(h * 0x9E3779B97F4A7C15ull);
	}
};

struct SignedTerm {
	Term term;
	bool positive = true; // T when true, F otherwise

	static SignedTerm T(Term t) { return {t, true}; }
	static SignedTerm F(Term t) { return {t, false}; }
	SignedTerm complement() const noexcept { return {term, !positive}; }

	friend auto operator<=>(const SignedTerm&, const SignedTerm&) = default;
};

/// A set of signed terms, stored sorted and duplicate-free. Never contains a term with both signs.
class Nogood {
public:
	Nogood() = default;
	/// Throws Error if some term occurs with both signs.
	explicit Nogood(std::vector<SignedTerm> lits);
	Nogood(std::initializer_list<SignedTerm> lits) : Nogood(std::vector<SignedTerm>(lits)) {}

	/// Returns nullopt instead of throwing when the literals are contradictory.
	static std::optional<Nogood> try_make(std::vector<SignedTerm> lits);

	const std::vector<SignedTerm>& literals() const noexcept { return lits_; }
	std::size_t size() const noexcept { return lits_.size(); }
	bool empty() const noexcept { return lits_.empty(); }
	bool contains(const SignedTerm& l) const;
	bool mentions(const Term& t) const;
	auto begin() const noexcept { return lits_.begin(); }
	auto end() const noexcept { return lits_.end(); }

	friend auto operator<=>(const Nogood&, const Nogood&) = default;

private:
	std::vector<SignedTerm> lits_;
};

using NogoodSet = std::set<Nogood>;

/// Resolvent of two nogoods on the single term they assign oppositely; nullopt if they clash on
/// zero or more than one term.
std::optional<Nogood> resolve(const Nogood& a, const Nogood& b);

class GroundProgram;

/// Renders terms for logs and golden files. Atom names come from `names`; body literals come from
/// the temporal program or ground program when given.
class TermFormatter {
public:
	/// Temporal form: step 0 prints `a`, step -1 prints `a'`; bodies print `{...}`.
	static TermFormatter temporal(const TemporalProgram& p);
	/// Timed form: `a@2`; bodies print `{...}@2`.
	static TermFormatter timed(const TemporalProgram& p);
	/// Timed form for a ground program; local bodies print their ground literals.
	static TermFormatter ground(const GroundProgram& gp);
	/// Timed form with atom names only (body terms print as `#body<id>@step`).
	static TermFormatter names_only(std::shared_ptr<const AtomTable> names);

	std::string term(const Term& t) const;
	std::string literal(const SignedTerm& l) const;
	std::string nogood(const Nogood& n) const;

private:
	std::shared_ptr<const AtomTable> names_;
	const TemporalProgram*           program_ = nullptr;
	const GroundProgram*             ground_ = nullptr;
	bool                             temporal_ = false;
	std::string atom_at(AtomId a, Step s) const;
};

std::vector<Term> terms_of(const NogoodSet& ns);

} // namespace tempo
