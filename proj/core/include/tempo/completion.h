#pragma once

#include "tempo/ground.h"

#include <functional>
#include <vector>

namespace tempo {

/// Completion nogoods of a ground program, before simplification. Bodies of integrity constraints
/// are not introduced as terms; each constraint contributes its literal set directly.
NogoodSet completion_nogoods(const GroundProgram& p);

/// Drops nogoods containing F of the empty body and removes T of the empty body from the rest.
NogoodSet simplify_nogoods(const NogoodSet& ns);

/// simplify_nogoods(completion_nogoods(p)).
NogoodSet program_nogoods(const GroundProgram& p);

/// Atoms of p plus the nonempty bodies of its normal and choice rules.
std::vector<Term> solving_domain(const GroundProgram& p);

/// True iff the positive dependency graph over normal and choice rules is acyclic.
bool is_tight(const GroundProgram& p);

/// {Ta} ∪ {FB | B external body of U}. `a` and `U` are atom indices of p.
Nogood loop_nogood(std::uint32_t a, const std::vector<std::uint32_t>& U, const GroundProgram& p);

/// Detects unfounded sets among the true atoms of a total assignment.
class UnfoundedSetChecker {
public:
	explicit UnfoundedSetChecker(const GroundProgram& p);

	/// Greatest unfounded subset of the true atoms, given truth values for atom and body terms.
	std::vector<std::uint32_t> greatest_unfounded(const std::function<bool(const Term&)>& value) const;

	/// Loop nogoods for every atom of the greatest unfounded set; empty if the assignment is stable.
	std::vector<Nogood> loop_nogoods(const std::function<bool(const Term&)>& value) const;

private:
	struct Support {
		Term                       body;
		std::vector<std::uint32_t> pos; // positive body atoms
	};
	const GroundProgram&              p_;
	std::vector<std::vector<Support>> supports_; // per atom
};

} // namespace tempo
