#pragma once

#include "tempo/ground.h"
#include "tempo/solver.h"

#include <optional>
#include <set>
#include <vector>

namespace tempo::oracle {

inline constexpr std::size_t stable_model_atom_cap = 20;
inline constexpr std::size_t brute_force_term_cap = 24;
/// The search-based entailment check handles bases well beyond the brute-force cap.
inline constexpr std::size_t entailment_term_cap = 20000;

/// All stable models, as sorted atom-index vectors, by enumerating subsets and checking the
/// reduct. Choice rules {a} ← B are treated as a ← B, not not a.
std::set<std::vector<std::uint32_t>> brute_force_stable_models(const GroundProgram& p);

/// True iff `model` (atom indices) is a stable model of p.
bool is_stable_model(const GroundProgram& p, const std::vector<std::uint32_t>& model);

/// All total assignments over `domain` violating no nogood, as sets of true terms.
std::vector<std::set<Term>> brute_force_solutions(const NogoodSet& ns, const std::vector<Term>& domain);

struct EntailmentQuery {
	NogoodSet base;
	NogoodSet extra_units;
	Nogood    query;
};

/// True iff no solution of base ∪ extra_units contains the query. Uses a plain DPLL search
/// (unit propagation by occurrence lists, chronological backtracking, no learning).
bool entails(const EntailmentQuery& q);

/// Exhaustive version of entails, limited to brute_force_term_cap terms.
bool entails_brute_force(const EntailmentQuery& q);

/// Satisfiability of a nogood set under assumed literals, by the same DPLL search.
bool satisfiable(const NogoodSet& ns, const std::vector<SignedTerm>& assumed = {});

struct ProofCheck {
	bool                       ok = true;
	std::optional<std::size_t> failed_step;
};

/// Checks that each step is a member of `base` or a resolvent of two earlier steps. Steps with a
/// `from` hint are checked against exactly those two steps.
ProofCheck verify_resolution_proof(const ResolutionProof& proof, const NogoodSet& base);
ProofCheck verify_resolution_proof(const std::vector<Nogood>& proof, const NogoodSet& base);

/// Every nogood of the proof shifted by t.
ResolutionProof shift_proof(const ResolutionProof& proof, Step t);

} // namespace tempo::oracle
