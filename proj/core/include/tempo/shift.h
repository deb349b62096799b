#pragma once

#include "tempo/nogood.h"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tempo {

/// δ⟨t⟩. Throws Error if a resulting step is negative.
Nogood shift_nogood(const Nogood& d, Step t);

std::set<Step> nogood_steps(const Nogood& d);

/// max(steps) - min(steps); 0 for empty nogoods.
Step nogood_degree(const Nogood& d);

/// {j-1, j | Tλ@j ∈ d} when d has a positive λ literal, otherwise nogood_steps(d).
std::set<Step> lambda_step(const Nogood& d, AtomId lambda);

/// Removes λ literals (both signs) and maps star atoms a*@i to a@(i-1).
/// `lambda` may be absent; `star_to_original` may be empty. Throws Error if a star atom at step 0
/// would map to a negative step.
Nogood simp(const Nogood& d, std::optional<AtomId> lambda, const std::map<AtomId, AtomId>& star_to_original = {});

enum class PolicyMode {
	basic,             // proof interval shifted inside [1,n]
	cyclic_all,        // steps inside [0,n]
	lambda_all,        // steps inside [0,n], over the λ-translated program
	lambda_to_original, // simp of shifts inside [0,n] without Tλ@0
	trb_step,     // lambda_step inside [1,n]
	trb_step_original, // simp of shifts with lambda_step inside [1,n]
};

std::string to_string(PolicyMode m);
/// Accepts the names printed by to_string and the CLI spellings (e.g. `cyclic-all`).
PolicyMode parse_policy_mode(std::string_view s);

struct Interval {
	Step lo = 0;
	Step hi = 0;
	friend bool operator==(const Interval&, const Interval&) = default;
};

struct GeneralizationPolicy {
	PolicyMode              mode = PolicyMode::cyclic_all;
	Step                    horizon = 1;
	std::optional<Interval> proof_interval;          // required for basic
	std::optional<AtomId>   lambda;                  // required for lambda and trb modes
	std::map<AtomId, AtomId> star_to_original;       // used by trb_step_original
};

/// The generalization set of d under the policy. Shifts with a negative step are skipped; body
/// terms must additionally sit inside [1,n] because they mention the previous step.
NogoodSet generalize(const Nogood& d, const GeneralizationPolicy& policy);

/// `# policy=<mode> horizon=<n>` followed by one nogood per line.
std::string format_generalized(const NogoodSet& ns, const GeneralizationPolicy& policy,
                               const class TermFormatter& fmt);

} // namespace tempo
