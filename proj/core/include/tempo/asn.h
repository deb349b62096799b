#pragma once

#include "tempo/temporal.h"

#include <optional>
#include <string>
#include <vector>

namespace tempo {

/// One line of an `.asn` file: `T a`, `F a@3`, `T a@1..4` or `T a@1..n` (n = horizon).
struct AsnEntry {
	AtomId              atom = 0;
	bool                positive = true;
	std::optional<Step> lo;              // absent for untimed entries
	std::optional<Step> hi;              // absent when the range runs to the horizon
	bool                timed() const noexcept { return lo.has_value(); }
};

struct AsnFile {
	std::vector<AsnEntry> entries;

	/// Untimed entries as an assignment over A.
	StateAssignment untimed() const;
	/// Timed entries expanded for horizon n.
	std::vector<SignedTerm> timed(Step n) const;
	bool has_timed() const;
};

/// Parses `.asn` text. Atom names must exist in `names`. `%` starts a comment.
AsnFile parse_asn(std::string_view text, const AtomTable& names);

/// An untimed-only assignment; throws ParseError on timed entries.
StateAssignment parse_state_assignment(std::string_view text, const AtomTable& names);

std::string format_state_assignment(const StateAssignment& a, const AtomTable& names);

/// Timed literals, merging consecutive steps of one atom into ranges.
std::string format_timed_assignment(const std::vector<SignedTerm>& lits, const AtomTable& names);

/// Parses the text form printed by TermFormatter: `{T a@2, F {b,not c'}@3}` (timed) or
/// `{T a', F b}` (temporal, when `temporal` is set). Bodies must be bodies of `p`.
Nogood parse_nogood(std::string_view text, const TemporalProgram& p, bool temporal = false);

/// One nogood per line; `%` starts a comment and lines starting with `#` are skipped.
NogoodSet parse_nogood_list(std::string_view text, const TemporalProgram& p, bool temporal = false);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace tempo
