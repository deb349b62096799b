#pragma once

#include "tempo/nogood.h"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace tempo {

struct GroundAtom {
	AtomId base = 0;
	Step   step = 0;
	friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

struct GroundLiteral {
	std::uint32_t atom = 0; // index into GroundProgram::atoms()
	bool          positive = true;
	friend auto operator<=>(const GroundLiteral&, const GroundLiteral&) = default;
};

/// Identifies a ground body as the instantiation of a temporal body at a step.
struct BodyTag {
	BodyId body = 0;
	Step   step = 0;
	friend auto operator<=>(const BodyTag&, const BodyTag&) = default;
};

struct GroundRule {
	HeadKind                   kind = HeadKind::constraint;
	std::uint32_t              head = 0;
	std::vector<GroundLiteral> body; // sorted, duplicate-free
	std::optional<BodyTag>     tag;
};

/// A propositional program. Every atom is declared explicitly, so atoms without rules are part of
/// the program's signature.
class GroundProgram {
public:
	explicit GroundProgram(std::shared_ptr<const AtomTable> names,
	                       std::shared_ptr<const TemporalProgram> source = nullptr);

	std::uint32_t add_atom(GroundAtom a);
	std::optional<std::uint32_t> find_atom(GroundAtom a) const;
	/// Throws Error on contradictory bodies or undeclared atom indices.
	void add_rule(GroundRule r);

	const std::vector<GroundAtom>& atoms() const noexcept { return atoms_; }
	const std::vector<GroundRule>& rules() const noexcept { return rules_; }
	const AtomTable& names() const noexcept { return *names_; }
	std::shared_ptr<const AtomTable> name_table() const noexcept { return names_; }
	const TemporalProgram* source() const noexcept { return source_.get(); }
	std::shared_ptr<const TemporalProgram> source_ptr() const noexcept { return source_; }

	Term atom_term(std::uint32_t idx) const { return Term::atom(atoms_[idx].base, atoms_[idx].step); }
	SignedTerm literal_term(const GroundLiteral& l) const { return {atom_term(l.atom), l.positive}; }
	/// The body term of a rule: empty, tagged, or local.
	Term body_term(const GroundRule& r) const;
	/// Literals of a local body.
	const std::vector<GroundLiteral>& local_body(std::uint32_t id) const { return local_bodies_.at(id); }

private:
	std::shared_ptr<const AtomTable>       names_;
	std::shared_ptr<const TemporalProgram> source_;
	std::vector<GroundAtom>                atoms_;
	std::map<GroundAtom, std::uint32_t>    index_;
	std::vector<GroundRule>                rules_;
	std::vector<std::vector<GroundLiteral>> local_bodies_;
	std::map<std::vector<GroundLiteral>, std::uint32_t> local_index_;
};

/// Convenience builder for plain (non-temporal) programs over named atoms at step 0.
class GroundProgramBuilder {
public:
	GroundProgramBuilder();
	std::uint32_t atom(std::string_view name);
	void normal(std::string_view head, std::vector<std::pair<std::string_view, bool>> body);
	void choice(std::string_view head, std::vector<std::pair<std::string_view, bool>> body);
	void constraint(std::vector<std::pair<std::string_view, bool>> body);
	GroundProgram build() const;

private:
	std::vector<GroundLiteral> lits(const std::vector<std::pair<std::string_view, bool>>& body);
	std::shared_ptr<AtomTable> names_;
	std::vector<GroundAtom>    atoms_;
	std::vector<GroundRule>    rules_;
};

} // namespace tempo
