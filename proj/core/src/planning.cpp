#include "tempo/planning.h"

#include "tempo/translate.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tempo {

namespace {

std::string trim(std::string_view s) {
	std::size_t b = 0, e = s.size();
	while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
	while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
	return std::string(s.substr(b, e - b));
}

// Splits on commas that are not nested inside parentheses.
std::vector<std::string> split_list(std::string_view s) {
	std::vector<std::string> out;
	int depth = 0;
	std::size_t start = 0;
	for (std::size_t i = 0; i <= s.size(); ++i) {
		if (i == s.size() || (s[i] == ',' && depth == 0)) {
			auto item = trim(s.substr(start, i - start));
			if (!item.empty()) out.push_back(std::move(item));
			start = i + 1;
		} else if (s[i] == '(') {
			++depth;
		} else if (s[i] == ')') {
			--depth;
		}
	}
	return out;
}

std::vector<std::string> lines_of(std::string_view text) {
	std::vector<std::string> out;
	std::istringstream in{std::string(text)};
	std::string line;
	while (std::getline(in, line)) {
		if (auto c = line.find('%'); c != std::string::npos) line.erase(c);
		out.push_back(trim(line));
	}
	return out;
}

bool starts_with(const std::string& s, std::string_view p) { return s.compare(0, p.size(), p) == 0; }

} // namespace

std::vector<std::string> PlanningDomain::fluents() const {
	std::vector<std::string> out;
	std::set<std::string> seen;
	for (const auto& a : actions)
		for (const auto* list : {&a.pre, &a.add, &a.del})
			for (const auto& f : *list)
				if (seen.insert(f).second) out.push_back(f);
	return out;
}

PlanningDomain parse_domain(std::string_view text) {
	PlanningDomain d;
	std::size_t lineno = 0;
	for (const auto& line : lines_of(text)) {
		++lineno;
		if (line.empty()) continue;
		if (starts_with(line, "action ")) {
			Action a;
			a.name = trim(line.substr(7));
			if (!is_valid_atom_name(a.name)) throw ParseError(lineno, 8, "invalid action name '" + a.name + "'");
			d.actions.push_back(std::move(a));
			continue;
		}
		if (d.actions.empty()) throw ParseError(lineno, 1, "expected 'action <name>'");
		auto& a = d.actions.back();
		std::vector<std::string>* target = nullptr;
		std::size_t skip = 0;
		if (starts_with(line, "pre:")) target = &a.pre, skip = 4;
		else if (starts_with(line, "add:")) target = &a.add, skip = 4;
		else if (starts_with(line, "del:")) target = &a.del, skip = 4;
		else throw ParseError(lineno, 1, "expected 'pre:', 'add:' or 'del:'");
		for (auto& f : split_list(std::string_view(line).substr(skip))) {
			if (!is_valid_atom_name(f)) throw ParseError(lineno, skip + 1, "invalid fluent name '" + f + "'");
			target->push_back(std::move(f));
		}
	}
	std::set<std::string> names;
	for (const auto& a : d.actions)
		if (!names.insert(a.name).second) throw Error("duplicate action '" + a.name + "'");
	return d;
}

PlanningInstance parse_instance(std::string_view text) {
	PlanningInstance inst;
	std::size_t lineno = 0;
	for (const auto& line : lines_of(text)) {
		++lineno;
		if (line.empty()) continue;
		std::vector<std::string>* target = nullptr;
		if (starts_with(line, "init:")) target = &inst.init;
		else if (starts_with(line, "goal:")) target = &inst.goal;
		else throw ParseError(lineno, 1, "expected 'init:' or 'goal:'");
		for (auto& f : split_list(std::string_view(line).substr(5))) {
			if (!is_valid_atom_name(f)) throw ParseError(lineno, 6, "invalid fluent name '" + f + "'");
			target->push_back(std::move(f));
		}
	}
	return inst;
}

CompiledPlanning compile_planning(const PlanningDomain& d, const PlanningInstance& inst) {
	auto fluents = d.fluents();
	std::set<std::string> known(fluents.begin(), fluents.end());
	for (const auto* list : {&inst.init, &inst.goal})
		for (const auto& f : *list)
			if (known.insert(f).second) fluents.push_back(f);
	if (fluents.empty()) throw Error("planning problem has no fluents");

	CompiledPlanning c;
	ProgramBuilder b;
	for (const auto& a : d.actions) {
		AtomId id = b.declare(fresh_name(b.atoms(), "occ_" + a.name));
		c.occ[a.name] = id;
		c.action_of[id] = a.name;
	}
	for (const auto& f : fluents) {
		AtomId id = b.declare(fresh_name(b.atoms(), "holds_" + f));
		c.holds[f] = id;
		c.fluent_of[id] = f;
	}

	for (const auto& a : d.actions) b.add_choice(c.occ.at(a.name), {});
	for (std::size_t i = 0; i < d.actions.size(); ++i)
		for (std::size_t j = i + 1; j < d.actions.size(); ++j)
			b.add_constraint({{c.occ.at(d.actions[i].name), false, true}, {c.occ.at(d.actions[j].name), false, true}});
	for (const auto& a : d.actions)
		for (const auto& f : a.pre) b.add_constraint({{c.occ.at(a.name), false, true}, {c.holds.at(f), true, false}});
	for (const auto& a : d.actions)
		for (const auto& f : a.add) b.add_normal(c.holds.at(f), {{c.occ.at(a.name), false, true}});
	for (const auto& f : fluents) {
		Body body{{c.holds.at(f), true, true}};
		for (const auto& a : d.actions)
			if (std::find(a.del.begin(), a.del.end(), f) != a.del.end())
				body.push_back({c.occ.at(a.name), false, false});
		b.add_normal(c.holds.at(f), std::move(body));
	}
	c.program = std::make_shared<const TemporalProgram>(b.build());

	for (const auto& [_, id] : c.occ) c.i1.set(id, false);
	std::set<std::string> init(inst.init.begin(), inst.init.end());
	for (const auto& f : fluents) c.i2.set(c.holds.at(f), init.count(f) > 0);
	for (const auto& g : inst.goal) c.goal.set(c.holds.at(g), true);
	return c;
}

std::vector<std::string> decode_plan(const CompiledPlanning& c, const std::set<Term>& true_atoms, Step n) {
	std::vector<std::string> plan;
	for (Step i = 1; i <= n; ++i) {
		std::vector<std::string> acts;
		for (const auto& [id, name] : c.action_of)
			if (true_atoms.count(Term::atom(id, i))) acts.push_back(name);
		if (acts.size() > 1) throw Error("two actions occur at step " + std::to_string(i));
		plan.push_back(acts.empty() ? "noop" : acts.front());
	}
	return plan;
}

} // namespace tempo
