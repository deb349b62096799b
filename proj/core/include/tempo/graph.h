#pragma once

#include "tempo/temporal.h"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tempo {

inline constexpr std::size_t default_model_cap = 100000;

using Edge = std::pair<State, State>;

/// G(Π): one edge ({a | a' ∈ X}, X ∩ A) per stable model X of τ(Π).
struct TransitionGraph {
	std::shared_ptr<const TemporalProgram> program;
	std::set<State>                        nodes;
	std::set<Edge>                         edges;
	bool                                   complete = true;
	std::size_t                            model_count = 0;
};

struct WrtInitReport {
	std::set<State> initial;
	std::set<State> reachable;
	std::set<State> loop_reachable;
	bool            condition_i = false;
	bool            condition_ii = false;
};

struct CyclicityReport {
	bool                         cyclic = false;
	std::set<State>              sources;
	std::set<State>              sinks;
	std::optional<WrtInitReport> wrt_init;
};

/// Enumerates τ(Π) with the solver. If more than model_cap models exist the graph is marked
/// incomplete and the analyses below refuse it.
TransitionGraph build_graph(std::shared_ptr<const TemporalProgram> p, std::size_t model_cap = default_model_cap);

CyclicityReport is_cyclic(const TransitionGraph& g);

/// Cyclicity with respect to a partial assignment; `cyclic` is condition (i) ∧ condition (ii).
CyclicityReport is_cyclic_wrt(const TransitionGraph& g, const StateAssignment& init);

/// All paths (X0..Xn) with X0 consistent with `from` and Xn consistent with `to`, sorted.
std::vector<std::vector<State>> paths_of_length(const TransitionGraph& g, Step n,
                                                const std::optional<StateAssignment>& from = std::nullopt,
                                                const std::optional<StateAssignment>& to = std::nullopt);

/// True iff the path, read as a total assignment over a@0..a@n, contains d. d must consist of
/// atom terms with steps inside the path.
bool path_violates(const std::vector<State>& path, const Nogood& d);

/// `{a,b}` with atom names.
std::string format_state(const State& s, const AtomTable& names);

/// Graphviz export: sources invtriangle, sinks triangle, internal nodes ellipse.
std::string to_dot(const TransitionGraph& g);

/// JSON object for a cyclicity report.
std::string report_json(const CyclicityReport& r, const AtomTable& names);

} // namespace tempo
