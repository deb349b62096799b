#pragma once

#include "tempo/completion.h"

#include <map>
#include <memory>

namespace tempo {

/// A set of atoms of A, sorted by id.
using State = std::vector<AtomId>;

/// Partial assignment over the untimed atoms A.
class StateAssignment {
public:
	StateAssignment() = default;
	/// Throws Error when `a` is already assigned the opposite value.
	void set(AtomId a, bool value);
	std::optional<bool> get(AtomId a) const;
	const std::map<AtomId, bool>& values() const noexcept { return values_; }
	bool empty() const noexcept { return values_.empty(); }
	std::size_t size() const noexcept { return values_.size(); }

	/// The signed atom terms a@step.
	std::vector<SignedTerm> at(Step step) const;
	/// True iff no atom of the assignment disagrees with membership in `s`.
	bool consistent_with(const State& s) const;
	/// Union; throws Error on conflicting values.
	StateAssignment merged(const StateAssignment& other) const;

	friend bool operator==(const StateAssignment&, const StateAssignment&) = default;

private:
	std::map<AtomId, bool> values_;
};

struct TemporalProblem {
	std::shared_ptr<const TemporalProgram> program;
	StateAssignment                        init;
	StateAssignment                        final;
};

/// Π[m..n]: atoms a@(m-1)..a@n for every a ∈ A; rule bodies tagged by (body, step).
GroundProgram instantiate_program(const TemporalProgram& p, Step m, Step n);
GroundProgram instantiate_program(std::shared_ptr<const TemporalProgram> p, Step m, Step n);

/// gen(Π, n) = choice(A)@0 ∪ Π[1..n].
GroundProgram generator_program(std::shared_ptr<const TemporalProgram> p, Step n);

/// τ(Π) = choice(A') ∪ Π, with a' represented as a@-1 and a as a@0.
GroundProgram transition_program(std::shared_ptr<const TemporalProgram> p);

/// Ψ_Π: the simplified nogoods of τ(Π), over terms at steps -1 (primed) and 0.
NogoodSet temporal_nogoods(std::shared_ptr<const TemporalProgram> p);
NogoodSet temporal_nogoods(const TemporalProgram& p);

/// Ψ[m..n]. Requires 1 ≤ m ≤ n.
NogoodSet instantiate_nogoods(const NogoodSet& ns, Step m, Step n);

/// Ψ[m..n] with the smallest instantiation step that produces each nogood.
std::map<Nogood, Step> instantiate_nogoods_with_origin(const NogoodSet& ns, Step m, Step n);

/// Shift of every literal's step; no bounds check.
Nogood shift_unchecked(const Nogood& d, Step t);

/// Atoms a@0..a@n plus rule bodies β@1..β@n.
std::vector<Term> horizon_domain(const TemporalProgram& p, Step n);

/// The states X_0..X_n of a set of true timed atoms.
std::vector<State> states_of(const std::set<Term>& true_atoms, Step n);

} // namespace tempo
