#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tempo {

using AtomId = std::uint32_t;
using BodyId = std::uint32_t;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
	ParseError(std::size_t line, std::size_t col, const std::string& msg);
	std::size_t line() const noexcept { return line_; }
	std::size_t column() const noexcept { return col_; }

private:
	std::size_t line_;
	std::size_t col_;
};

/// Dense interning of atom names. Ids are assigned in order of first occurrence.
class AtomTable {
public:
	AtomId intern(std::string_view name);
	std::optional<AtomId> find(std::string_view name) const;
	const std::string& name(AtomId id) const { return names_.at(id); }
	std::size_t size() const noexcept { return names_.size(); }

private:
	std::vector<std::string> names_;
	std::unordered_map<std::string, AtomId> index_;
};

/// True if `name` is a valid atom name: `_*[a-z][a-zA-Z0-9_]*` optionally followed by
/// a balanced, opaque `(...)` argument text.
bool is_valid_atom_name(std::string_view name);

/// An atom occurrence in a temporal rule; `primed` refers to the previous step.
struct AtomSym {
	AtomId atom = 0;
	bool   primed = false;
	friend auto operator<=>(const AtomSym&, const AtomSym&) = default;
};

struct Literal {
	AtomId atom = 0;
	bool   primed = false;
	bool   positive = true;
	AtomSym sym() const noexcept { return {atom, primed}; }
	friend bool operator==(const Literal&, const Literal&) = default;
};

using Body = std::vector<Literal>;

enum class HeadKind : std::uint8_t { normal, choice, constraint };

struct Rule {
	HeadKind kind = HeadKind::constraint;
	AtomId   head = 0; // unused for constraints
	Body     body;     // canonical order
	friend bool operator==(const Rule&, const Rule&) = default;
};

/// A ground temporal program over A ∪ A'. Immutable once built; share freely.
class TemporalProgram {
public:
	TemporalProgram();

	const AtomTable&                  atoms() const noexcept { return *atoms_; }
	std::shared_ptr<const AtomTable>  atom_table() const noexcept { return atoms_; }
	std::size_t                       atom_count() const noexcept { return atoms_->size(); }
	std::span<const Rule>             rules() const noexcept { return rules_; }

	/// Deduplicated bodies in order of first occurrence (bdy(Π)); includes ∅ if used.
	std::span<const Body>             bodies() const noexcept { return bodies_; }
	BodyId                            body_of(std::size_t rule_index) const { return rule_body_.at(rule_index); }
	std::optional<BodyId>             find_body(const Body& canonical) const;
	/// True if some non-constraint rule has this body.
	bool                              is_rule_body(BodyId b) const { return rule_body_flag_.at(b); }

private:
	friend class ProgramBuilder;
	std::shared_ptr<AtomTable> atoms_;
	std::vector<Rule>          rules_;
	std::vector<Body>          bodies_;
	std::vector<BodyId>        rule_body_;
	std::vector<bool>          rule_body_flag_;
};

/// Builds and validates temporal programs.
class ProgramBuilder {
public:
	ProgramBuilder();
	/// Starts from a copy of `base` (atoms and rules).
	explicit ProgramBuilder(const TemporalProgram& base);

	AtomId declare(std::string_view name);
	const AtomTable& atoms() const noexcept { return *atoms_; }

	void add_normal(AtomId head, Body body);
	void add_choice(AtomId head, Body body);
	void add_constraint(Body body);
	void add_rule(Rule r);

	TemporalProgram build() const;

private:
	Body canonical(Body body) const;
	std::shared_ptr<AtomTable> atoms_;
	std::vector<Rule>          rules_;
};

/// Sorts a body into canonical order (positive first, then name, then primed flag) and
/// removes duplicates. Throws Error if an atom occurs with both signs.
Body canonical_body(Body body, const AtomTable& names);

/// Parses the `.tlp` text format. Extended choice rules are expanded per atom.
TemporalProgram parse_temporal_program(std::string_view text);

/// Prints in `.tlp` syntax; `parse(print(p))` yields the same rules.
std::string format_program(const TemporalProgram& p);
std::string format_literal(const Literal& l, const AtomTable& names);
std::string format_body(const Body& b, const AtomTable& names);

struct RuleClasses {
	std::vector<std::size_t> normal;
	std::vector<std::size_t> choice;
	std::vector<std::size_t> constraints;
};

/// Partitions rule indices by head kind.
RuleClasses classify_rules(const TemporalProgram& p);

/// bdy(Π) in canonical order of first occurrence.
std::vector<Body> program_bodies(const TemporalProgram& p);

bool has_primed(const Body& b) noexcept;
bool has_current(const Body& b) noexcept;

} // namespace tempo
