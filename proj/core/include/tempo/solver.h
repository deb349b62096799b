#pragma once

#include "tempo/shift.h"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace tempo {

enum class NogoodKind : std::uint8_t { base, injected, loop, blocking, learned };
enum class SolveStatus { sat, unsat, unknown };
enum class RankKey { lbd, size };

std::string to_string(SolveStatus s);
RankKey parse_rank_key(std::string_view s);

struct SolverOptions {
	std::uint64_t           seed = 0;
	bool                    luby_restarts = false;
	std::uint32_t           restart_unit = 100;
	double                  var_decay = 0.95;
	/// Preferred decisions, tried in order after the assumptions while unassigned. Unlike
	/// assumptions they can be flipped by backjumping.
	std::vector<SignedTerm> initial_decisions;
	std::uint64_t           conflict_budget = 0;     // 0: unlimited
	double                  time_budget_seconds = 0; // 0: unlimited
	std::size_t             learned_budget = 0;      // 0: unlimited; stop with unknown once reached
};

struct SolverStats {
	std::uint64_t conflicts = 0;
	std::uint64_t decisions = 0;
	std::uint64_t propagations = 0;
	std::uint64_t learned = 0;
	std::uint64_t restarts = 0;
	std::uint64_t loop_nogoods = 0;
	std::uint64_t models = 0;
	/// key=value lines in a fixed order.
	std::string to_string() const;
};

struct LearnedNogood {
	Nogood                  nogood;
	std::uint32_t           lbd = 0;
	std::size_t             size = 0;
	Step                    degree = 0;
	std::optional<Interval> proof_interval;
	std::size_t             record = 0; // id usable with Solver::proof
};

struct ExportFilter {
	std::size_t max_size = 50;
	Step        max_degree = 10;
};

/// One step of a resolution proof: either a premise (from == nullopt) or the resolvent of two
/// earlier steps.
struct ProofStep {
	Nogood                                              nogood;
	std::optional<std::pair<std::size_t, std::size_t>> from;
};
using ResolutionProof = std::vector<ProofStep>;

/// Nogood produced by a post-check, with the step interval of the program part it encodes.
struct CheckedNogood {
	Nogood                  nogood;
	std::optional<Interval> origin;
};
using PostCheck = std::function<std::vector<CheckedNogood>(const std::function<bool(const Term&)>& value)>;

/// Conflict-driven nogood learning over a fixed domain of terms.
class Solver {
public:
	explicit Solver(std::vector<Term> domain, SolverOptions opts = {});

	/// Adds a nogood over domain terms. Returns its record id. Throws Error for terms outside the
	/// domain. May be called between solve calls.
	std::size_t add_nogood(const Nogood& n, NogoodKind kind = NogoodKind::base, std::optional<Interval> origin = {});

	/// Called on every total assignment; returned nogoods must be violated by it and are added as
	/// loop nogoods. The assignment is accepted when the check returns nothing.
	void set_post_check(PostCheck check) { post_check_ = std::move(check); }

	/// Called after every propagation fixpoint (tests use it to audit propagation).
	void set_propagation_observer(std::function<void(const Solver&)> obs) { observer_ = std::move(obs); }

	SolveStatus solve(const std::vector<SignedTerm>& assumptions = {});

	/// Enumerates distinct projections of solutions. `complete` is set to true iff the list is
	/// exhaustive. Blocking nogoods stay in the database afterwards.
	std::vector<std::vector<SignedTerm>> enumerate(const std::vector<SignedTerm>& assumptions,
	                                               const std::vector<Term>& projection, std::size_t cap,
	                                               bool* complete = nullptr);

	/// Value in the last model. Requires the last solve to have returned sat.
	bool model_value(const Term& t) const;
	/// Terms true in the last model.
	std::set<Term> model_true_terms() const;

	/// Learned nogoods whose derivation uses only base and loop nogoods.
	std::vector<LearnedNogood> learned() const;
	/// learned(), filtered and ranked ascending (ties: size, then nogood order), truncated to top_k.
	std::vector<LearnedNogood> export_learned(const ExportFilter& filter, RankKey rank, std::size_t top_k) const;

	/// Resolution proof of a learned record, expanding learned antecedents; premises are base or
	/// loop nogoods.
	ResolutionProof proof(std::size_t record) const;
	Nogood record_nogood(std::size_t record) const;
	NogoodKind record_kind(std::size_t record) const { return recs_.at(record).kind; }
	std::size_t record_count() const noexcept { return recs_.size(); }
	/// Loop nogoods added by the post-check, with their origins.
	std::vector<CheckedNogood> loop_nogoods() const;

	const SolverStats& stats() const noexcept { return stats_; }
	const std::vector<Term>& domain() const noexcept { return domain_; }

	/// True iff some nogood is violated or has exactly one non-true literal that is unassigned.
	bool has_pending_propagation() const;

private:
	using Lit = std::uint32_t; // 2*var + (negative ? 1 : 0); "true" means the signed term holds
	static constexpr std::uint32_t no_rec = UINT32_MAX;

	struct Record {
		std::vector<Lit>           lits;
		NogoodKind                 kind = NogoodKind::base;
		bool                       tainted = false;
		std::optional<Interval>    interval;
		std::uint32_t              lbd = 0;
		std::vector<std::uint32_t> chain; // conflict, then reasons in resolution order
	};

	Lit to_lit(const SignedTerm& l) const;
	SignedTerm to_signed(Lit l) const;
	Nogood to_nogood(const std::vector<Lit>& lits) const;
	int lit_value(Lit l) const; // 1 true, 0 false, -1 unassigned
	std::uint32_t var(Lit l) const { return l >> 1; }
	std::uint32_t level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }

	std::uint32_t new_record(std::vector<Lit> lits, NogoodKind kind, bool tainted, std::optional<Interval> iv);
	void attach(std::uint32_t cid);
	/// Integrates a record at any search state; returns false on top-level inconsistency.
	bool integrate(std::uint32_t cid);
	void assign(Lit l, std::uint32_t reason);
	std::uint32_t propagate();
	void analyze(std::uint32_t confl, std::vector<Lit>& out, std::uint32_t& bt_level, std::vector<std::uint32_t>& chain);
	bool handle_conflict(std::uint32_t confl);
	void cancel_until(std::uint32_t lvl);
	std::optional<Lit> pick_decision();
	void bump(std::uint32_t v);
	void heap_insert(std::uint32_t v);
	void heap_up(std::size_t i);
	void heap_down(std::size_t i);
	std::uint32_t heap_pop();
	bool heap_less(std::uint32_t a, std::uint32_t b) const;
	SolveStatus search(bool enumerate_mode);
	bool budget_exhausted() const;

	std::vector<Term>                          domain_;
	std::unordered_map<Term, std::uint32_t, TermHash> index_;
	SolverOptions                              opts_;
	PostCheck                                  post_check_;
	std::function<void(const Solver&)>         observer_;

	std::vector<Record>                     recs_;
	std::vector<std::vector<std::uint32_t>> watches_; // per literal: records to visit when it becomes true
	std::vector<std::int8_t>                assign_;  // per var: -1, 0, 1
	std::vector<std::uint32_t>              level_;
	std::vector<std::uint32_t>              reason_;
	std::vector<std::uint32_t>              trail_pos_;
	std::vector<Lit>                        trail_;
	std::vector<std::size_t>                trail_lim_;
	std::size_t                             qhead_ = 0;
	std::vector<bool>                       phase_;
	std::vector<double>                     activity_;
	double                                  var_inc_ = 1.0;
	std::vector<std::uint32_t>              heap_;
	std::vector<std::int64_t>               heap_pos_;
	std::vector<Lit>                        assumptions_;
	std::vector<Lit>                        preferred_;
	std::vector<bool>                       seen_;
	std::vector<std::int8_t>                model_;
	bool                                    ok_ = true;
	bool                                    has_model_ = false;
	SolverStats                             stats_;
	std::chrono::steady_clock::time_point   start_;
	std::uint64_t                           conflicts_at_start_ = 0;
	std::uint64_t                           learned_at_start_ = 0;
	std::vector<Lit>                        blocking_projection_;
};

} // namespace tempo
