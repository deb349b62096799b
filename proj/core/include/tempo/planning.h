#pragma once

#include "tempo/temporal.h"

#include <map>
#include <string>
#include <vector>

namespace tempo {

struct Action {
	std::string              name;
	std::vector<std::string> pre;
	std::vector<std::string> add;
	std::vector<std::string> del;
};

struct PlanningDomain {
	std::vector<Action> actions;
	/// Fluents mentioned by the actions, in order of first mention.
	std::vector<std::string> fluents() const;
};

struct PlanningInstance {
	std::vector<std::string> init;
	std::vector<std::string> goal;
};

/// Blocks of `action <name>` followed by `pre:`, `add:` and `del:` lines. `%` starts a comment.
PlanningDomain parse_domain(std::string_view text);
/// `init:` and `goal:` lines.
PlanningInstance parse_instance(std::string_view text);

struct CompiledPlanning {
	std::shared_ptr<const TemporalProgram> program;
	StateAssignment                        i1;   // no action occurs
	StateAssignment                        i2;   // the initial state, complete over the fluents
	StateAssignment                        goal; // goal fluents true
	std::map<AtomId, std::string>          action_of;
	std::map<AtomId, std::string>          fluent_of;
	std::map<std::string, AtomId>          occ;
	std::map<std::string, AtomId>          holds;

	StateAssignment init() const { return i1.merged(i2); }
};

/// Choice per action, pairwise exclusion, precondition constraints, effect rules and inertia
/// over the deleting actions. Fluents come from the domain and the instance.
CompiledPlanning compile_planning(const PlanningDomain& d, const PlanningInstance& inst);

/// Action names at steps 1..n, `noop` for idle steps. Throws Error if two actions share a step.
std::vector<std::string> decode_plan(const CompiledPlanning& c, const std::set<Term>& true_atoms, Step n);

} // namespace tempo
