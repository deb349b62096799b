#include "tempo/solver.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace tempo {

std::string to_string(SolveStatus s) {
	switch (s) {
	case SolveStatus::sat: return "sat";
	case SolveStatus::unsat: return "unsat";
	case SolveStatus::unknown: return "unknown";
	}
	return "?";
}

RankKey parse_rank_key(std::string_view s) {
	if (s == "lbd") return RankKey::lbd;
	if (s == "size") return RankKey::size;
	throw Error("unknown rank key '" + std::string(s) + "'");
}

std::string SolverStats::to_string() const {
	std::ostringstream o;
	o << "conflicts=" << conflicts << "\n"
	  << "decisions=" << decisions << "\n"
	  << "propagations=" << propagations << "\n"
	  << "learned=" << learned << "\n"
	  << "restarts=" << restarts << "\n"
	  << "loop_nogoods=" << loop_nogoods << "\n"
	  << "models=" << models << "\n";
	return o.str();
}

namespace {

double luby(double y, std::uint64_t x) {
	std::uint64_t size = 1;
	int seq = 0;
	while (size < x + 1) {
		++seq;
		size = 2 * size + 1;
	}
	while (size - 1 != x) {
		size = (size - 1) >> 1;
		--seq;
		x = x % size;
	}
	return std::pow(y, seq);
}

std::optional<Interval> join(std::optional<Interval> a, const std::optional<Interval>& b) {
	if (!a || !b) return std::nullopt;
	return Interval{std::min(a->lo, b->lo), std::max(a->hi, b->hi)};
}

} // namespace

Solver::Solver(std::vector<Term> domain, SolverOptions opts) : domain_(std::move(domain)), opts_(std::move(opts)) {
	const std::size_t n = domain_.size();
	for (std::uint32_t v = 0; v < n; ++v)
		if (!index_.emplace(domain_[v], v).second) throw Error("solver domain contains a duplicate term");
	watches_.resize(2 * n);
	assign_.assign(n, -1);
	level_.assign(n, 0);
	reason_.assign(n, no_rec);
	trail_pos_.assign(n, 0);
	phase_.assign(n, false);
	activity_.assign(n, 0.0);
	heap_pos_.assign(n, -1);
	seen_.assign(n, false);
	if (opts_.seed != 0) {
		std::mt19937_64 rng(opts_.seed);
		std::uniform_real_distribution<double> dist(0.0, 1e-5);
		for (auto& a : activity_) a = dist(rng);
	}
	for (std::uint32_t v = 0; v < n; ++v) heap_insert(v);
	for (const auto& l : opts_.initial_decisions) preferred_.push_back(to_lit(l));
}

Solver::Lit Solver::to_lit(const SignedTerm& l) const {
	auto it = index_.find(l.term);
	if (it == index_.end()) throw Error("term is outside the solver domain");
	return 2 * it->second + (l.positive ? 0 : 1);
}

SignedTerm Solver::to_signed(Lit l) const { return {domain_[var(l)], (l & 1) == 0}; }

Nogood Solver::to_nogood(const std::vector<Lit>& lits) const {
	std::vector<SignedTerm> out;
	out.reserve(lits.size());
	for (auto l : lits) out.push_back(to_signed(l));
	return Nogood(std::move(out));
}

int Solver::lit_value(Lit l) const {
	auto a = assign_[var(l)];
	if (a < 0) return -1;
	bool val = a == 1;
	return ((l & 1) ? !val : val) ? 1 : 0;
}

std::uint32_t Solver::new_record(std::vector<Lit> lits, NogoodKind kind, bool tainted, std::optional<Interval> iv) {
	Record r;
	r.lits = std::move(lits);
	r.kind = kind;
	r.tainted = tainted;
	r.interval = iv;
	recs_.push_back(std::move(r));
	return static_cast<std::uint32_t>(recs_.size() - 1);
}

void Solver::attach(std::uint32_t cid) {
	const auto& c = recs_[cid].lits;
	watches_[c[0]].push_back(cid);
	watches_[c[1]].push_back(cid);
}

std::size_t Solver::add_nogood(const Nogood& n, NogoodKind kind, std::optional<Interval> origin) {
	std::vector<Lit> lits;
	lits.reserve(n.size());
	for (const auto& l : n) lits.push_back(to_lit(l));
	bool tainted = kind == NogoodKind::injected || kind == NogoodKind::blocking;
	auto cid = new_record(std::move(lits), kind, tainted, origin);
	if (kind == NogoodKind::loop) ++stats_.loop_nogoods;
	if (ok_) {
		cancel_until(0);
		integrate(cid);
	}
	return cid;
}

void Solver::assign(Lit l, std::uint32_t reason) {
	auto v = var(l);
	assign_[v] = (l & 1) ? 0 : 1;
	level_[v] = level();
	reason_[v] = reason;
	trail_pos_[v] = static_cast<std::uint32_t>(trail_.size());
	trail_.push_back(l);
}

bool Solver::integrate(std::uint32_t cid) {
	auto& c = recs_[cid].lits;
	if (c.empty()) {
		ok_ = false;
		return false;
	}
	if (c.size() == 1) {
		cancel_until(0);
		int v = lit_value(c[0]);
		if (v == 1) {
			ok_ = false;
			return false;
		}
		if (v == -1) assign(c[0] ^ 1, cid);
		return true;
	}
	auto rank = [&](Lit l) { return lit_value(l) == 0 ? 0 : lit_value(l) == -1 ? 1 : 2; };
	std::stable_sort(c.begin(), c.end(), [&](Lit a, Lit b) {
		int ra = rank(a), rb = rank(b);
		if (ra != rb) return ra < rb;
		if (ra == 2) return level_[var(a)] > level_[var(b)];
		return false;
	});
	std::size_t non_true = 0;
	while (non_true < c.size() && lit_value(c[non_true]) != 1) ++non_true;
	if (non_true >= 2) {
		attach(cid);
		return true;
	}
	if (non_true == 1) {
		std::uint32_t l1 = level_[var(c[1])];
		if (lit_value(c[0]) == 0 && level_[var(c[0])] <= l1) {
			attach(cid);
			return true;
		}
		cancel_until(l1);
		assign(c[0] ^ 1, cid);
		attach(cid);
		return true;
	}
	std::uint32_t top = level_[var(c[0])];
	if (top == 0) {
		ok_ = false;
		return false;
	}
	std::uint32_t second = level_[var(c[1])];
	if (second == top) {
		cancel_until(top);
		attach(cid);
		return handle_conflict(cid);
	}
	cancel_until(second);
	assign(c[0] ^ 1, cid);
	attach(cid);
	return true;
}

std::uint32_t Solver::propagate() {
	std::uint32_t confl = no_rec;
	while (qhead_ < trail_.size()) {
		Lit p = trail_[qhead_++];
		++stats_.propagations;
		auto& ws = watches_[p];
		std::size_t i = 0, j = 0;
		while (i < ws.size()) {
			std::uint32_t cid = ws[i++];
			auto& c = recs_[cid].lits;
			if (c[0] == p) std::swap(c[0], c[1]);
			if (lit_value(c[0]) == 0) {
				ws[j++] = cid;
				continue;
			}
			bool moved = false;
			for (std::size_t k = 2; k < c.size(); ++k) {
				if (lit_value(c[k]) != 1) {
					std::swap(c[1], c[k]);
					watches_[c[1]].push_back(cid);
					moved = true;
					break;
				}
			}
			if (moved) continue;
			ws[j++] = cid;
			if (lit_value(c[0]) == -1) {
				assign(c[0] ^ 1, cid);
			} else {
				confl = cid;
				while (i < ws.size()) ws[j++] = ws[i++];
				qhead_ = trail_.size();
			}
		}
		ws.resize(j);
		if (confl != no_rec) break;
	}
	return confl;
}

void Solver::analyze(std::uint32_t confl, std::vector<Lit>& out, std::uint32_t& bt_level,
                     std::vector<std::uint32_t>& chain) {
	out.assign(1, 0);
	chain.assign(1, confl);
	std::vector<std::uint32_t> touched;
	bool have_level0 = false;
	int path = 0;
	std::optional<Lit> p;
	std::size_t idx = trail_.size();
	std::uint32_t cur = confl;
	for (;;) {
		for (Lit q : recs_[cur].lits) {
			auto v = var(q);
			if (p && v == var(*p)) continue;
			if (seen_[v]) continue;
			seen_[v] = true;
			touched.push_back(v);
			bump(v);
			if (level_[v] == level()) ++path;
			else if (level_[v] > 0) out.push_back(q);
			else have_level0 = true;
		}
		do {
			--idx;
		} while (!seen_[var(trail_[idx])]);
		p = trail_[idx];
		--path;
		if (path == 0) break;
		cur = reason_[var(*p)];
		chain.push_back(cur);
	}
	out[0] = *p;

	if (have_level0) {
		// Resolve level-0 literals away so the result is an exact resolvent of the antecedents.
		std::size_t end = trail_lim_.empty() ? trail_.size() : trail_lim_[0];
		for (std::size_t pos = end; pos-- > 0;) {
			auto v = var(trail_[pos]);
			if (!seen_[v]) continue;
			auto r = reason_[v];
			chain.push_back(r);
			for (Lit q : recs_[r].lits) {
				auto u = var(q);
				if (u == v || seen_[u]) continue;
				seen_[u] = true;
				touched.push_back(u);
			}
		}
	}

	bt_level = 0;
	if (out.size() > 1) {
		std::size_t best = 1;
		for (std::size_t k = 2; k < out.size(); ++k)
			if (level_[var(out[k])] > level_[var(out[best])]) best = k;
		std::swap(out[1], out[best]);
		bt_level = level_[var(out[1])];
	}
	for (auto v : touched) seen_[v] = false;
}

bool Solver::handle_conflict(std::uint32_t confl) {
	++stats_.conflicts;
	if (level() == 0) {
		ok_ = false;
		return false;
	}
	std::vector<Lit> out;
	std::vector<std::uint32_t> chain;
	std::uint32_t bt = 0;
	analyze(confl, out, bt, chain);

	std::set<std::uint32_t> levels;
	for (auto l : out) levels.insert(level_[var(l)]);
	bool tainted = false;
	std::optional<Interval> iv = recs_[chain[0]].interval;
	for (auto c : chain) {
		tainted = tainted || recs_[c].tainted;
		iv = join(iv, recs_[c].interval);
	}

	cancel_until(bt);
	auto cid = new_record(std::move(out), NogoodKind::learned, tainted, iv);
	recs_[cid].chain = std::move(chain);
	recs_[cid].lbd = static_cast<std::uint32_t>(levels.size());
	++stats_.learned;
	const auto& c = recs_[cid].lits;
	if (c.size() > 1) attach(cid);
	assign(c[0] ^ 1, cid);
	var_inc_ /= opts_.var_decay;
	return true;
}

void Solver::cancel_until(std::uint32_t lvl) {
	if (level() <= lvl) return;
	for (std::size_t pos = trail_.size(); pos-- > trail_lim_[lvl];) {
		auto v = var(trail_[pos]);
		phase_[v] = assign_[v] == 1;
		assign_[v] = -1;
		reason_[v] = no_rec;
		if (heap_pos_[v] < 0) heap_insert(v);
	}
	trail_.resize(trail_lim_[lvl]);
	trail_lim_.resize(lvl);
	qhead_ = trail_.size();
}

bool Solver::heap_less(std::uint32_t a, std::uint32_t b) const {
	if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
	return a < b;
}

void Solver::heap_up(std::size_t i) {
	auto v = heap_[i];
	while (i > 0) {
		std::size_t parent = (i - 1) / 2;
		if (!heap_less(v, heap_[parent])) break;
		heap_[i] = heap_[parent];
		heap_pos_[heap_[i]] = static_cast<std::int64_t>(i);
		i = parent;
	}
	heap_[i] = v;
	heap_pos_[v] = static_cast<std::int64_t>(i);
}

void Solver::heap_down(std::size_t i) {
	auto v = heap_[i];
	for (;;) {
		std::size_t child = 2 * i + 1;
		if (child >= heap_.size()) break;
		if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
		if (!heap_less(heap_[child], v)) break;
		heap_[i] = heap_[child];
		heap_pos_[heap_[i]] = static_cast<std::int64_t>(i);
		i = child;
	}
	heap_[i] = v;
	heap_pos_[v] = static_cast<std::int64_t>(i);
}

void Solver::heap_insert(std::uint32_t v) {
	heap_.push_back(v);
	heap_up(heap_.size() - 1);
}

std::uint32_t Solver::heap_pop() {
	auto top = heap_[0];
	heap_pos_[top] = -1;
	heap_[0] = heap_.back();
	heap_.pop_back();
	if (!heap_.empty()) {
		heap_pos_[heap_[0]] = 0;
		heap_down(0);
	}
	return top;
}

void Solver::bump(std::uint32_t v) {
	activity_[v] += var_inc_;
	if (activity_[v] > 1e100) {
		for (auto& a : activity_) a *= 1e-100;
		var_inc_ *= 1e-100;
	}
	if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

std::optional<Solver::Lit> Solver::pick_decision() {
	for (auto l : preferred_)
		if (lit_value(l) == -1) return l;
	while (!heap_.empty()) {
		auto v = heap_pop();
		if (assign_[v] < 0) return 2 * v + (phase_[v] ? 0 : 1);
	}
	return std::nullopt;
}

bool Solver::budget_exhausted() const {
	if (opts_.conflict_budget && stats_.conflicts - conflicts_at_start_ >= opts_.conflict_budget) return true;
	if (opts_.learned_budget && stats_.learned - learned_at_start_ >= opts_.learned_budget) return true;
	if (opts_.time_budget_seconds > 0) {
		std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
		if (el.count() >= opts_.time_budget_seconds) return true;
	}
	return false;
}

SolveStatus Solver::search(bool) {
	std::uint64_t restart_count = 0;
	std::uint64_t next_restart =
	    opts_.luby_restarts ? static_cast<std::uint64_t>(luby(2, 0) * opts_.restart_unit) : 0;
	std::uint64_t conflicts_since = 0;
	for (;;) {
		if (!ok_) return SolveStatus::unsat;
		auto confl = propagate();
		if (confl != no_rec) {
			if (!handle_conflict(confl)) return SolveStatus::unsat;
			if (budget_exhausted()) return SolveStatus::unknown;
			if (opts_.luby_restarts && ++conflicts_since >= next_restart) {
				cancel_until(0);
				++stats_.restarts;
				conflicts_since = 0;
				next_restart = static_cast<std::uint64_t>(luby(2, ++restart_count) * opts_.restart_unit);
			}
			continue;
		}
		if (observer_) observer_(*this);
		if (level() < assumptions_.size()) {
			Lit p = assumptions_[level()];
			int v = lit_value(p);
			if (v == 0) return SolveStatus::unsat;
			trail_lim_.push_back(trail_.size());
			if (v == -1) assign(p, no_rec);
			continue;
		}
		auto d = pick_decision();
		if (!d) {
			if (post_check_) {
				auto value = [this](const Term& t) {
					auto it = index_.find(t);
					if (it == index_.end()) throw Error("post-check asked for a term outside the domain");
					return assign_[it->second] == 1;
				};
				auto extra = post_check_(value);
				if (!extra.empty()) {
					for (auto& e : extra) {
						std::vector<Lit> lits;
						for (const auto& l : e.nogood) lits.push_back(to_lit(l));
						auto cid = new_record(std::move(lits), NogoodKind::loop, false, e.origin);
						++stats_.loop_nogoods;
						if (!integrate(cid)) return SolveStatus::unsat;
					}
					continue;
				}
			}
			return SolveStatus::sat;
		}
		++stats_.decisions;
		trail_lim_.push_back(trail_.size());
		assign(*d, no_rec);
	}
}

SolveStatus Solver::solve(const std::vector<SignedTerm>& assumptions) {
	has_model_ = false;
	assumptions_.clear();
	for (const auto& a : assumptions) assumptions_.push_back(to_lit(a));
	if (!ok_) return SolveStatus::unsat;
	cancel_until(0);
	start_ = std::chrono::steady_clock::now();
	conflicts_at_start_ = stats_.conflicts;
	learned_at_start_ = stats_.learned;
	auto st = search(false);
	if (st == SolveStatus::sat) {
		model_ = assign_;
		has_model_ = true;
		++stats_.models;
	}
	return st;
}

std::vector<std::vector<SignedTerm>> Solver::enumerate(const std::vector<SignedTerm>& assumptions,
                                                       const std::vector<Term>& projection, std::size_t cap,
                                                       bool* complete) {
	if (cap < 1) throw Error("enumerate requires cap >= 1");
	std::vector<std::vector<SignedTerm>> out;
	std::vector<Lit> proj;
	for (const auto& t : projection) proj.push_back(to_lit(SignedTerm::T(t)));
	has_model_ = false;
	assumptions_.clear();
	for (const auto& a : assumptions) assumptions_.push_back(to_lit(a));
	bool done = false;
	if (!ok_) {
		if (complete) *complete = true;
		return out;
	}
	cancel_until(0);
	start_ = std::chrono::steady_clock::now();
	conflicts_at_start_ = stats_.conflicts;
	learned_at_start_ = stats_.learned;
	for (;;) {
		auto st = search(true);
		if (st != SolveStatus::sat) {
			done = st == SolveStatus::unsat;
			break;
		}
		if (out.size() == cap) break;
		model_ = assign_;
		has_model_ = true;
		++stats_.models;
		std::vector<SignedTerm> m;
		std::vector<Lit> block;
		for (auto l : proj) {
			bool val = assign_[var(l)] == 1;
			m.push_back({domain_[var(l)], val});
			block.push_back(val ? l : (l ^ 1));
		}
		out.push_back(std::move(m));
		if (block.empty()) {
			done = true;
			break;
		}
		auto cid = new_record(std::move(block), NogoodKind::blocking, true, std::nullopt);
		if (!integrate(cid)) {
			done = true;
			break;
		}
	}
	if (complete) *complete = done;
	return out;
}

bool Solver::model_value(const Term& t) const {
	if (!has_model_) throw Error("no model available");
	auto it = index_.find(t);
	if (it == index_.end()) throw Error("term is outside the solver domain");
	return model_[it->second] == 1;
}

std::set<Term> Solver::model_true_terms() const {
	if (!has_model_) throw Error("no model available");
	std::set<Term> out;
	for (std::uint32_t v = 0; v < domain_.size(); ++v)
		if (model_[v] == 1) out.insert(domain_[v]);
	return out;
}

std::vector<LearnedNogood> Solver::learned() const {
	std::vector<LearnedNogood> out;
	for (std::size_t cid = 0; cid < recs_.size(); ++cid) {
		const auto& r = recs_[cid];
		if (r.kind != NogoodKind::learned || r.tainted) continue;
		LearnedNogood l;
		l.nogood = to_nogood(r.lits);
		l.lbd = r.lbd;
		l.size = r.lits.size();
		l.degree = nogood_degree(l.nogood);
		l.proof_interval = r.interval;
		l.record = cid;
		out.push_back(std::move(l));
	}
	return out;
}

std::vector<LearnedNogood> Solver::export_learned(const ExportFilter& filter, RankKey rank, std::size_t top_k) const {
	std::vector<LearnedNogood> all;
	std::set<Nogood> seen;
	for (auto& l : learned()) {
		if (l.size > filter.max_size || l.degree > filter.max_degree) continue;
		if (!seen.insert(l.nogood).second) continue;
		all.push_back(std::move(l));
	}
	std::stable_sort(all.begin(), all.end(), [&](const LearnedNogood& a, const LearnedNogood& b) {
		if (rank == RankKey::lbd && a.lbd != b.lbd) return a.lbd < b.lbd;
		if (a.size != b.size) return a.size < b.size;
		return a.nogood < b.nogood;
	});
	if (all.size() > top_k) all.resize(top_k);
	return all;
}

Nogood Solver::record_nogood(std::size_t record) const { return to_nogood(recs_.at(record).lits); }

ResolutionProof Solver::proof(std::size_t record) const {
	ResolutionProof out;
	std::unordered_map<std::uint32_t, std::size_t> at;
	std::vector<std::pair<std::uint32_t, bool>> stack{{static_cast<std::uint32_t>(record), false}};
	while (!stack.empty()) {
		auto [cid, expanded] = stack.back();
		stack.pop_back();
		if (at.count(cid)) continue;
		const auto& r = recs_.at(cid);
		if (r.kind != NogoodKind::learned) {
			at[cid] = out.size();
			out.push_back({to_nogood(r.lits), std::nullopt});
			continue;
		}
		if (!expanded) {
			stack.emplace_back(cid, true);
			for (auto it = r.chain.rbegin(); it != r.chain.rend(); ++it)
				if (!at.count(*it)) stack.emplace_back(*it, false);
			continue;
		}
		std::size_t cur = at.at(r.chain[0]);
		for (std::size_t k = 1; k < r.chain.size(); ++k) {
			std::size_t other = at.at(r.chain[k]);
			auto res = resolve(out[cur].nogood, out[other].nogood);
			if (!res) throw Error("proof reconstruction found a non-resolvable step");
			out.push_back({std::move(*res), std::make_pair(cur, other)});
			cur = out.size() - 1;
		}
		at[cid] = cur;
	}
	return out;
}

std::vector<CheckedNogood> Solver::loop_nogoods() const {
	std::vector<CheckedNogood> out;
	for (const auto& r : recs_)
		if (r.kind == NogoodKind::loop) out.push_back({to_nogood(r.lits), r.interval});
	return out;
}

bool Solver::has_pending_propagation() const {
	for (const auto& r : recs_) {
		std::size_t non_true = 0;
		bool unassigned = false;
		for (auto l : r.lits) {
			int v = lit_value(l);
			if (v != 1) {
				++non_true;
				unassigned = v == -1;
			}
			if (non_true > 1) break;
		}
		if (non_true == 0) return true;
		if (non_true == 1 && unassigned) return true;
	}
	return false;
}

} // namespace tempo
