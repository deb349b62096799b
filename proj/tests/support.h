#pragma once

#include "tempo/asn.h"
#include "tempo/completion.h"
#include "tempo/fixtures.h"
#include "tempo/graph.h"
#include "tempo/harness.h"
#include "tempo/oracle.h"
#include "tempo/planning.h"
#include "tempo/shift.h"
#include "tempo/solver.h"
#include "tempo/temporal.h"
#include "tempo/translate.h"

#include <json.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

namespace tempo::test {

using Json = nlohmann::json;

std::shared_ptr<const TemporalProgram> program_from(std::string_view text);
std::shared_ptr<const TemporalProgram> pi1();
std::shared_ptr<const TemporalProgram> pi2();

/// The `value` member of an expected.json entry.
Json expected(const GoldenCase& c, const std::string& key);

/// Nogood from its printed form, timed unless `temporal`.
Nogood ng(const TemporalProgram& p, std::string_view text, bool temporal = false);

/// State from atom names.
State state(const TemporalProgram& p, const std::vector<std::string>& names);

/// Timed atom terms from `a@3` strings.
std::set<Term> atoms_at(const TemporalProgram& p, const std::vector<std::string>& names);

std::string show(const NogoodSet& ns, const TermFormatter& f);

struct RandomTemporalSpec {
	std::size_t max_atoms = 6;
	std::size_t max_rules = 8;
	std::size_t max_body = 3;
};

/// Random valid temporal program; deterministic in the generator state.
std::shared_ptr<const TemporalProgram> random_temporal_program(std::mt19937_64& rng, const RandomTemporalSpec& spec = {});

struct RandomGroundSpec {
	std::size_t max_atoms = 8;
	std::size_t max_rules = 12;
	double      loop_probability = 0.3; // chance of planting a positive cycle
};

GroundProgram random_ground_program(std::mt19937_64& rng, const RandomGroundSpec& spec = {});

/// Stable models of a ground program computed by the solver with lazy loop nogoods.
std::set<std::vector<std::uint32_t>> solver_stable_models(const GroundProgram& gp);

/// Solutions (true atoms over a@0..a@n) of (Π, I, F) by brute-force stable models of gen(Π, n).
std::set<std::set<Term>> oracle_solutions(std::shared_ptr<const TemporalProgram> p, const StateAssignment& I,
                                          const StateAssignment& F, Step n);

/// Solutions of Ψ[1..n] extending I@0 ∪ F@n, projected to atoms, by enumerating atom sets and
/// deriving body values; non-tight programs additionally reject unfounded atom sets.
std::set<std::set<Term>> psi_solutions(std::shared_ptr<const TemporalProgram> p, const StateAssignment& I,
                                       const StateAssignment& F, Step n);

/// Solutions by the harness with full enumeration.
std::set<std::set<Term>> harness_solutions(const HarnessProblem& h, Step n, const NogoodSet& injected = {},
                                           std::size_t cap = 100000);

/// Every path of length n of G as a set of true timed atoms.
std::set<std::set<Term>> path_solutions(const TransitionGraph& g, Step n, const StateAssignment& I,
                                        const StateAssignment& F);

/// Entailment with ν-style unit nogoods for the given literals.
bool entails(const NogoodSet& base, const Nogood& q, const std::vector<SignedTerm>& units = {});

} // namespace tempo::test
