#pragma once

#include "tempo/graph.h"
#include "tempo/solver.h"
#include "tempo/translate.h"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tempo {

/// A temporal problem together with the program actually handed to the solver. Translations keep
/// the source atom ids, so I and F apply unchanged.
struct HarnessProblem {
	TemporalProblem   source;
	TranslationResult translation; // kind none: the source program itself

	static HarnessProblem plain(TemporalProblem p);
	static HarnessProblem translated(TemporalProblem p, TranslationKind kind);
	/// The translation a policy needs: λ for the lambda modes, pnf+trb for the trb modes.
	static HarnessProblem for_policy(TemporalProblem p, PolicyMode mode);

	const TemporalProgram& solving_program() const { return *translation.program; }
	std::shared_ptr<const TemporalProgram> solving_program_ptr() const { return translation.program; }
	/// I@0 ∪ F@n ∪ the translation schedule.
	std::vector<SignedTerm> assumptions(Step n) const;
	/// Atom terms a@0..a@n of the source atoms.
	std::vector<Term> projection(Step n) const;
};

/// Cyclicity of a program with respect to an initial assignment, established on its transition
/// graph.
struct CyclicityCertificate {
	StateAssignment init;
	bool            cyclic = false;
	CyclicityReport report;
};

/// Builds G(Π) and checks cyclicity wrt I. Throws Error if the graph exceeds model_cap.
CyclicityCertificate certify_cyclic(std::shared_ptr<const TemporalProgram> p, const StateAssignment& init,
                                    std::size_t model_cap = default_model_cap);

enum class RunMode { single_shot, multi_shot };

/// Budget of the preliminary learning run.
struct LearningBudget {
	double      seconds = 10;
	std::size_t nogoods = 2000;
};

struct RunConfig {
	RunMode      mode = RunMode::single_shot;
	Step         horizon = 1; // single shot
	Step         start = 5;   // multi shot
	Step         stride = 5;
	Step         max = 50;
	RankKey      rank = RankKey::lbd;
	std::size_t  top_k = 500; // 0: baseline, nothing is injected
	ExportFilter filter;
	PolicyMode   policy = PolicyMode::cyclic_all;
	bool         assume_cyclic = false;
	std::optional<CyclicityCertificate> certificate;
	SolverOptions  solver;
	std::size_t    enumerate = 0; // 0: one solution; otherwise enumerate up to this many
	LearningBudget preliminary;
};

struct SingleShotResult {
	Step                       horizon = 0;
	SolveStatus                status = SolveStatus::unknown;
	SolverStats                stats;
	/// True atom terms over the source atoms, one set per solution found.
	std::vector<std::set<Term>> solutions;
	/// True iff `solutions` is exhaustive (always true for unsat).
	bool                        complete = false;
	std::vector<LearnedNogood>  learned; // exported: filtered, ranked, truncated
	NogoodSet                   base;    // Ψ[1..n] plus the loop nogoods the search added
	std::size_t                 injected = 0;
};

/// Solves the problem at cfg.horizon with Ψ[1..n] ∪ injected. Throws Error if an injected
/// nogood mentions a step outside [0,n] or a term outside the horizon's domain.
SingleShotResult solve_single_shot(const HarnessProblem& problem, const RunConfig& cfg,
                                   const NogoodSet& injected = {});

/// Ψ[1..n] of the solving program (the unsimplified horizon base, without loop nogoods).
NogoodSet horizon_nogoods(const HarnessProblem& problem, Step n);

/// Checks that cfg.policy is sound for the problem: cyclic modes need a certificate or
/// assume_cyclic; lambda and trb modes need the matching translation. Throws Error.
void check_policy(const HarnessProblem& problem, const RunConfig& cfg);

/// The generalization policy for target horizon n.
GeneralizationPolicy policy_for(const HarnessProblem& problem, const RunConfig& cfg, Step n,
                                std::optional<Interval> proof_interval);

/// Generalizes exported nogoods to horizon n under cfg.policy.
NogoodSet generalize_all(const HarnessProblem& problem, const RunConfig& cfg,
                         const std::vector<LearnedNogood>& learned, Step n);

struct PreliminaryResult {
	std::vector<LearnedNogood> learned;     // exported from the learning run
	NogoodSet                  generalized; // for the target horizon
	SolverStats                stats;
};

/// Learns on `learning` at cfg.horizon within cfg.preliminary, then generalizes the best top_k
/// nogoods to cfg.horizon. The *_original modes learn on the translation and produce nogoods over
/// the source program; nogoods with body terms are dropped there since bodies do not carry over.
PreliminaryResult preliminary_learning(const HarnessProblem& learning, const RunConfig& cfg);

struct HorizonRecord {
	Step        horizon = 0;
	SolveStatus status = SolveStatus::unknown;
	SolverStats stats;
	std::size_t injected = 0;
	std::size_t exported = 0;
	std::size_t solutions = 0;
	bool        complete = false;
};

struct MultiShotResult {
	std::optional<Step>        plan_horizon;
	std::vector<HorizonRecord> horizons;
	std::optional<std::set<Term>> plan; // true terms of the first solution at plan_horizon
};

/// Horizons start, start+stride, ... up to max. After every unsat horizon the best top_k learned
/// nogoods join a pool which is generalized to and injected into the next horizon.
MultiShotResult solve_multi_shot(const HarnessProblem& problem, const RunConfig& cfg);

} // namespace tempo
