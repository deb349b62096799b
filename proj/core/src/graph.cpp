#include "tempo/graph.h"

#include "tempo/solver.h"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace tempo {

TransitionGraph build_graph(std::shared_ptr<const TemporalProgram> p, std::size_t model_cap) {
	if (model_cap < 1) throw Error("build_graph requires model_cap >= 1");
	auto tau = transition_program(p);
	auto ns = program_nogoods(tau);
	Solver s(solving_domain(tau));
	for (const auto& n : ns) s.add_nogood(n);
	std::optional<UnfoundedSetChecker> checker;
	if (!is_tight(tau)) {
		checker.emplace(tau);
		s.set_post_check([&](const std::function<bool(const Term&)>& value) {
			std::vector<CheckedNogood> out;
			for (auto& n : checker->loop_nogoods(value)) out.push_back({std::move(n), Interval{0, 0}});
			return out;
		});
	}
	std::vector<Term> proj;
	for (std::uint32_t a = 0; a < tau.atoms().size(); ++a) proj.push_back(tau.atom_term(a));
	bool complete = false;
	auto models = s.enumerate({}, proj, model_cap, &complete);

	TransitionGraph g;
	g.program = std::move(p);
	g.complete = complete;
	g.model_count = models.size();
	for (const auto& m : models) {
		State from, to;
		for (const auto& l : m) {
			if (!l.positive) continue;
			(l.term.step == -1 ? from : to).push_back(l.term.id);
		}
		std::sort(from.begin(), from.end());
		std::sort(to.begin(), to.end());
		g.nodes.insert(from);
		g.nodes.insert(to);
		g.edges.emplace(std::move(from), std::move(to));
	}
	return g;
}

namespace {

void require_complete(const TransitionGraph& g) {
	if (!g.complete) throw Error("transition graph is incomplete (model cap reached)");
}

struct Indexed {
	std::vector<State>                    nodes;
	std::map<State, std::size_t>          index;
	std::vector<std::vector<std::size_t>> succ;
	std::vector<std::vector<std::size_t>> pred;
	std::vector<bool>                     self_loop;
};

Indexed index_graph(const TransitionGraph& g) {
	Indexed ix;
	for (const auto& n : g.nodes) {
		ix.index.emplace(n, ix.nodes.size());
		ix.nodes.push_back(n);
	}
	ix.succ.resize(ix.nodes.size());
	ix.pred.resize(ix.nodes.size());
	ix.self_loop.assign(ix.nodes.size(), false);
	for (const auto& [a, b] : g.edges) {
		auto i = ix.index.at(a), j = ix.index.at(b);
		ix.succ[i].push_back(j);
		ix.pred[j].push_back(i);
		if (i == j) ix.self_loop[i] = true;
	}
	return ix;
}

// Tarjan's algorithm, iterative. Returns the component id of every node.
std::vector<std::size_t> components(const Indexed& ix, std::vector<std::size_t>& comp_size) {
	const std::size_t n = ix.nodes.size();
	const std::size_t unset = SIZE_MAX;
	std::vector<std::size_t> idx(n, unset), low(n, 0), comp(n, unset);
	std::vector<bool> on_stack(n, false);
	std::vector<std::size_t> stack;
	std::size_t counter = 0;
	for (std::size_t s = 0; s < n; ++s) {
		if (idx[s] != unset) continue;
		std::vector<std::pair<std::size_t, std::size_t>> call{{s, 0}};
		idx[s] = low[s] = counter++;
		stack.push_back(s);
		on_stack[s] = true;
		while (!call.empty()) {
			auto& [v, i] = call.back();
			if (i < ix.succ[v].size()) {
				auto w = ix.succ[v][i++];
				if (idx[w] == unset) {
					idx[w] = low[w] = counter++;
					stack.push_back(w);
					on_stack[w] = true;
					call.emplace_back(w, 0);
				} else if (on_stack[w]) {
					low[v] = std::min(low[v], idx[w]);
				}
			} else {
				if (low[v] == idx[v]) {
					std::size_t id = comp_size.size();
					comp_size.push_back(0);
					for (;;) {
						auto w = stack.back();
						stack.pop_back();
						on_stack[w] = false;
						comp[w] = id;
						++comp_size[id];
						if (w == v) break;
					}
				}
				auto done = v;
				call.pop_back();
				if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
			}
		}
	}
	return comp;
}

std::vector<bool> forward_closure(const Indexed& ix, const std::vector<bool>& start) {
	std::vector<bool> seen = start;
	std::vector<std::size_t> queue;
	for (std::size_t i = 0; i < start.size(); ++i)
		if (start[i]) queue.push_back(i);
	while (!queue.empty()) {
		auto v = queue.back();
		queue.pop_back();
		for (auto w : ix.succ[v])
			if (!seen[w]) {
				seen[w] = true;
				queue.push_back(w);
			}
	}
	return seen;
}

} // namespace

CyclicityReport is_cyclic(const TransitionGraph& g) {
	require_complete(g);
	CyclicityReport r;
	auto ix = index_graph(g);
	for (std::size_t i = 0; i < ix.nodes.size(); ++i) {
		if (ix.pred[i].empty()) r.sources.insert(ix.nodes[i]);
		if (ix.succ[i].empty()) r.sinks.insert(ix.nodes[i]);
	}
	r.cyclic = r.sources.empty() && r.sinks.empty();
	return r;
}

CyclicityReport is_cyclic_wrt(const TransitionGraph& g, const StateAssignment& init) {
	CyclicityReport r = is_cyclic(g);
	for (const auto& [a, _] : init.values())
		if (a >= g.program->atom_count()) throw Error("assignment mentions an atom outside the program");
	auto ix = index_graph(g);
	const std::size_t n = ix.nodes.size();

	std::vector<bool> initial(n, false);
	for (std::size_t i = 0; i < n; ++i) initial[i] = !ix.succ[i].empty() && init.consistent_with(ix.nodes[i]);
	auto reachable = forward_closure(ix, initial);

	std::vector<std::size_t> comp_size;
	auto comp = components(ix, comp_size);
	std::vector<bool> on_loop(n, false);
	for (std::size_t i = 0; i < n; ++i) on_loop[i] = comp_size[comp[i]] > 1 || ix.self_loop[i];
	auto loop_reachable = forward_closure(ix, on_loop);

	WrtInitReport w;
	w.condition_i = true;
	w.condition_ii = true;
	for (std::size_t i = 0; i < n; ++i) {
		if (initial[i]) {
			w.initial.insert(ix.nodes[i]);
			if (!loop_reachable[i]) w.condition_i = false;
		}
		if (reachable[i]) {
			w.reachable.insert(ix.nodes[i]);
			if (ix.succ[i].empty() || ix.pred[i].empty()) w.condition_ii = false;
		}
		if (loop_reachable[i]) w.loop_reachable.insert(ix.nodes[i]);
	}
	r.cyclic = w.condition_i && w.condition_ii;
	r.wrt_init = std::move(w);
	return r;
}

std::vector<std::vector<State>> paths_of_length(const TransitionGraph& g, Step n,
                                                const std::optional<StateAssignment>& from,
                                                const std::optional<StateAssignment>& to) {
	require_complete(g);
	if (n < 1) throw Error("paths_of_length requires n >= 1");
	auto ix = index_graph(g);
	std::vector<std::vector<State>> out;
	std::vector<std::size_t> path;
	auto dfs = [&](auto&& self, std::size_t v) -> void {
		path.push_back(v);
		if (static_cast<Step>(path.size()) == n + 1) {
			if (!to || to->consistent_with(ix.nodes[v])) {
				std::vector<State> p;
				for (auto i : path) p.push_back(ix.nodes[i]);
				out.push_back(std::move(p));
			}
		} else {
			for (auto w : ix.succ[v]) self(self, w);
		}
		path.pop_back();
	};
	for (std::size_t i = 0; i < ix.nodes.size(); ++i)
		if (!from || from->consistent_with(ix.nodes[i])) dfs(dfs, i);
	std::sort(out.begin(), out.end());
	return out;
}

bool path_violates(const std::vector<State>& path, const Nogood& d) {
	for (const auto& l : d) {
		if (!l.term.is_atom()) throw Error("path_violates: expand body terms into atom literals first");
		if (l.term.step < 0 || static_cast<std::size_t>(l.term.step) >= path.size())
			throw Error("path_violates: nogood step outside the path");
		const auto& s = path[l.term.step];
		if (std::binary_search(s.begin(), s.end(), l.term.id) != l.positive) return false;
	}
	return true;
}

std::string format_state(const State& s, const AtomTable& names) {
	std::vector<std::string> ns;
	for (auto a : s) ns.push_back(names.name(a));
	std::sort(ns.begin(), ns.end());
	std::string out = "{";
	for (std::size_t i = 0; i < ns.size(); ++i) {
		if (i) out += ",";
		out += ns[i];
	}
	return out + "}";
}

std::string to_dot(const TransitionGraph& g) {
	auto r = is_cyclic(g);
	const auto& names = g.program->atoms();
	std::map<State, std::size_t> id;
	std::ostringstream o;
	o << "digraph G {\n";
	for (const auto& n : g.nodes) {
		auto k = id.size();
		id[n] = k;
		const char* shape = r.sources.count(n) ? "invtriangle" : r.sinks.count(n) ? "triangle" : "ellipse";
		o << "  n" << k << " [label=\"" << format_state(n, names) << "\", shape=" << shape << "];\n";
	}
	for (const auto& [a, b] : g.edges) o << "  n" << id[a] << " -> n" << id[b] << ";\n";
	o << "}\n";
	return o.str();
}

std::string report_json(const CyclicityReport& r, const AtomTable& names) {
	auto states = [&](const std::set<State>& ss) {
		nlohmann::json a = nlohmann::json::array();
		for (const auto& s : ss) a.push_back(format_state(s, names));
		return a;
	};
	nlohmann::json j;
	j["cyclic"] = r.cyclic;
	j["sources"] = states(r.sources);
	j["sinks"] = states(r.sinks);
	if (r.wrt_init) {
		j["wrt_init"] = {{"initial", states(r.wrt_init->initial)},
		                 {"reachable", states(r.wrt_init->reachable)},
		                 {"loop_reachable", states(r.wrt_init->loop_reachable)},
		                 {"condition_i", r.wrt_init->condition_i},
		                 {"condition_ii", r.wrt_init->condition_ii}};
	}
	return j.dump(2);
}

} // namespace tempo
